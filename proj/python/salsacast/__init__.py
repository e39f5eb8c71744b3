"""Sparse-Fourier (SALSA), band-limited sinc and linear forecasting."""

from ._salsacast import (
    IoError,
    causal_forecast,
    generate_path,
    linear_forecast,
    read_csv_column,
    run_experiment,
    run_sweep,
    salsa_forecast,
    salsa_solve,
)

__all__ = [
    "IoError",
    "causal_forecast",
    "generate_path",
    "linear_forecast",
    "read_csv_column",
    "run_experiment",
    "run_sweep",
    "salsa_forecast",
    "salsa_solve",
]
