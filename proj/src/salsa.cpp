#include "salsacast/salsa.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "salsacast/errors.hpp"

namespace salsacast {

void SalsaParams::validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw ValidationError("mu must be positive");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be nonnegative");
    if (n_basis == 0) throw ValidationError("n_basis must be positive");
    if (n_iter == 0) throw ValidationError("n_iter must be positive");
    if (!(threshold_scale > 0.0) || !std::isfinite(threshold_scale)) {
        throw ValidationError("threshold_scale must be positive");
    }
    if (p_norm && (!(*p_norm > 0.0) || !std::isfinite(*p_norm))) throw ValidationError("p_norm must be positive");
    if (!(rel_tol >= 0.0) || !std::isfinite(rel_tol)) throw ValidationError("rel_tol must be nonnegative");
}

ObservationMask::ObservationMask(std::vector<bool> observed) : observed_(std::move(observed)) {}

ObservationMask ObservationMask::leading(std::size_t total_len, std::size_t observed) {
    if (observed > total_len) throw ValidationError("observed count exceeds mask length");
    std::vector<bool> flags(total_len, false);
    std::fill_n(flags.begin(), observed, true);
    return ObservationMask(std::move(flags));
}

std::size_t ObservationMask::observed_count() const noexcept {
    return static_cast<std::size_t>(std::count(observed_.begin(), observed_.end(), true));
}

namespace {

void check_threshold(double threshold) {
    if (!(threshold >= 0.0)) throw ValidationError("soft threshold must be nonnegative");
}

// Caller has validated the threshold.
inline Complex shrink(Complex x, double threshold) noexcept {
    const double mag = std::abs(x);
    if (!(mag > threshold)) return Complex{};
    return (1.0 - threshold / mag) * x;
}

}  // namespace

Complex soft_threshold(Complex x, double threshold) {
    check_threshold(threshold);
    return shrink(x, threshold);
}

double soft_threshold(double x, double threshold) {
    check_threshold(threshold);
    const double mag = std::abs(x);
    if (!(mag > threshold)) return 0.0;
    return (1.0 - threshold / mag) * x;
}

ComplexVector soft_threshold(std::span<const Complex> x, double threshold) {
    check_threshold(threshold);
    ComplexVector out(x.size());
    std::transform(x.begin(), x.end(), out.begin(), [threshold](Complex v) { return shrink(v, threshold); });
    return out;
}

SalsaState salsa_solve(std::span<const Complex> masked, const ObservationMask& mask, const SalsaParams& params) {
    params.validate();
    const std::size_t m = masked.size();
    const std::size_t n = params.n_basis;
    if (m == 0) throw ValidationError("empty input");
    if (mask.total_len() != m) {
        throw ValidationError("mask length " + std::to_string(mask.total_len()) + " does not match signal length " +
                              std::to_string(m));
    }
    if (m > n) {
        throw ValidationError("signal length M=" + std::to_string(m) + " exceeds n_basis N=" + std::to_string(n));
    }
    for (const Complex& v : masked) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw ValidationError("non-finite input");
    }

    FourierDictionary dict(m, n);
    const double threshold = params.threshold();
    const double step = 1.0 / (params.mu + params.penalty_norm());

    SalsaState state;
    state.coefficients.resize(n);
    state.dual.assign(n, Complex{});
    state.cost_history.reserve(params.n_iter);
    dict.adjoint(masked, state.coefficients);

    ComplexVector& c = state.coefficients;
    ComplexVector& d = state.dual;
    ComplexVector u(n);
    ComplexVector samples(m);

    for (std::size_t iter = 0; iter < params.n_iter; ++iter) {
        for (std::size_t i = 0; i < n; ++i) u[i] = shrink(c[i] + d[i], threshold) - d[i];

        dict.synthesize(u, samples);
        for (std::size_t i = 0; i < m; ++i) samples[i] = masked[i] - (mask.observed(i) ? samples[i] : Complex{});
        dict.adjoint(samples, d);
        for (std::size_t i = 0; i < n; ++i) {
            d[i] *= step;
            c[i] = d[i] + u[i];
        }

        dict.synthesize(c, samples);
        double fit = 0.0;
        for (std::size_t i = 0; i < m; ++i) fit += std::norm(masked[i] - samples[i]);
        double l1 = 0.0;
        for (const Complex& v : c) l1 += std::abs(v);
        const double cost = fit + params.lambda * l1;
        state.cost_history.push_back(cost);

        if (params.rel_tol > 0.0 && iter > 0) {
            const double prev = state.cost_history[iter - 1];
            if (std::abs(cost - prev) <= params.rel_tol * prev) break;
        }
    }
    return state;
}

std::vector<double> salsa_forecast(std::span<const double> history, std::size_t horizon, const SalsaParams& params) {
    if (history.empty()) throw ValidationError("empty input");
    if (horizon == 0) throw ValidationError("horizon must be at least 1");
    const std::size_t total = history.size() + horizon;
    if (total > params.n_basis) {
        throw ValidationError("history + horizon (" + std::to_string(total) + ") exceeds n_basis (" +
                              std::to_string(params.n_basis) + ")");
    }

    ComplexVector masked(total, Complex{});
    std::copy(history.begin(), history.end(), masked.begin());
    const auto mask = ObservationMask::leading(total, history.size());
    const SalsaState state = salsa_solve(masked, mask, params);

    const ComplexVector recon = synthesize(state.coefficients, total);
    std::vector<double> out(horizon);
    for (std::size_t j = 0; j < horizon; ++j) out[j] = recon[history.size() + j].real();
    return out;
}

}  // namespace salsacast
