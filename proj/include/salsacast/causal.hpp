#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "salsacast/timeseries.hpp"

namespace salsacast {

/// Band-limited smoothing extrapolation parameters.
struct CausalParams {
    double omega = std::numbers::pi / 4.0;  ///< band limit
    double nu = 0.1;                        ///< Tikhonov regularizer
    std::size_t n_harmonics = 45;           ///< harmonics k = -n..n
    std::size_t ma_width = 5;               ///< centered moving-average width (odd)

    [[nodiscard]] std::size_t coefficient_count() const noexcept { return 2 * n_harmonics + 1; }
    void validate() const;
};

struct CausalCoefficients {
    std::vector<double> y;     ///< spectral weights, index j <-> k = j - n_harmonics
    double window_mean = 0.0;  ///< mean of the smoothed window, removed before fitting
    double tail_mean = 0.0;    ///< mean of the last three smoothed samples, added to forecasts
};

/// Unnormalized sinc: sin(u)/u, 1 at u = 0.
[[nodiscard]] double sinc(double u) noexcept;

/// Centered moving average; edge samples average the part of the window that fits.
/// @throws ValidationError if width is even or zero, or the series is shorter than width.
[[nodiscard]] std::vector<double> moving_average(std::span<const double> series, std::size_t width);

/// (Q* z)_k = (omega/pi) * sum_{t=q}^{q+len-1} sinc(k pi + omega t) z(t), k = -n..n.
[[nodiscard]] std::vector<double> qstar(std::span<const double> z, std::int64_t q, const CausalParams& params);

/// R_km = (omega/pi)^2 * sum_{t=q}^{s} sinc(m pi + omega t) sinc(k pi + omega t). Exactly symmetric.
[[nodiscard]] Eigen::MatrixXd gram_matrix(Window window, const CausalParams& params);

/// Solves (R + nu I) y = b by Cholesky factorization.
/// @throws ValidationError on non-finite entries, shape mismatch, or a non-positive-definite system.
[[nodiscard]] std::vector<double> regularized_solve(const Eigen::MatrixXd& R, double nu, std::span<const double> b);

/// x(t) = (omega/pi) * sum_k y_k sinc(k pi + omega t) for t = t_first..t_last. No mean is added.
[[nodiscard]] std::vector<double> synthesize_causal(const CausalCoefficients& coeffs, std::int64_t t_first,
                                                    std::int64_t t_last, const CausalParams& params);

/**
 * Precomputed basis and factorized Gram system for windows of length 2n+1
 * indexed on the local time axis t = 1..2n+1. Immutable after construction;
 * a single instance may serve concurrent forecasts.
 */
class CausalModel {
public:
    /// @throws ValidationError on invalid params.
    explicit CausalModel(const CausalParams& params = {});

    [[nodiscard]] const CausalParams& params() const noexcept { return params_; }
    [[nodiscard]] std::size_t window_len() const noexcept { return params_.coefficient_count(); }

    /// Fits an already smoothed window.
    [[nodiscard]] CausalCoefficients fit_smoothed(std::span<const double> smoothed) const;
    /// Smooths, then fits.
    [[nodiscard]] CausalCoefficients fit(std::span<const double> history) const;

    /// In-window reconstruction plus window_mean.
    [[nodiscard]] std::vector<double> reconstruct(const CausalCoefficients& coeffs) const;
    /// Values at t = L+1..L+horizon plus tail_mean.
    [[nodiscard]] std::vector<double> extrapolate(const CausalCoefficients& coeffs, std::size_t horizon) const;

    [[nodiscard]] std::vector<double> forecast(std::span<const double> history, std::size_t horizon) const;
    [[nodiscard]] std::vector<double> forecast_smoothed(std::span<const double> smoothed, std::size_t horizon) const;

private:
    [[nodiscard]] std::vector<double> evaluate(const CausalCoefficients& coeffs, std::int64_t t_first,
                                               std::size_t count, double level) const;

    CausalParams params_;
    Eigen::MatrixXd basis_;  // window_len x coefficient_count, (omega/pi) sinc(k pi + omega t)
    Eigen::LLT<Eigen::MatrixXd> solver_;
};

/// Smooth, mean-center, project, solve and extrapolate `horizon` points past a 2n+1 history.
/// @throws ValidationError if history.size() != 2n+1 or horizon == 0.
[[nodiscard]] std::vector<double> causal_forecast(std::span<const double> history, std::size_t horizon,
                                                  const CausalParams& params = {});

}  // namespace salsacast
