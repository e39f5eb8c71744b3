#include "salsacast/causal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "salsacast/errors.hpp"

namespace salsacast {

void CausalParams::validate() const {
    if (!(omega > 0.0) || omega > std::numbers::pi) throw ValidationError("omega must lie in (0, pi]");
    if (!(nu > 0.0) || !std::isfinite(nu)) throw ValidationError("nu must be positive");
    if (n_harmonics == 0) throw ValidationError("n_harmonics must be at least 1");
    if (ma_width == 0 || ma_width % 2 == 0) throw ValidationError("moving-average width must be odd");
}

double sinc(double u) noexcept {
    if (u == 0.0) return 1.0;
    return std::sin(u) / u;
}

std::vector<double> moving_average(std::span<const double> series, std::size_t width) {
    if (width == 0 || width % 2 == 0) throw ValidationError("moving-average width must be odd");
    if (series.size() < width) {
        throw ValidationError("series of length " + std::to_string(series.size()) +
                              " is shorter than the moving-average width " + std::to_string(width));
    }
    const std::size_t half = width / 2;
    const std::size_t n = series.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n - 1, i + half);
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) sum += series[j];
        out[i] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

namespace {

// (omega/pi) sinc(k pi + omega t)
inline double kernel(std::int64_t k, std::int64_t t, double omega) noexcept {
    return omega / std::numbers::pi *
           sinc(static_cast<double>(k) * std::numbers::pi + omega * static_cast<double>(t));
}

Eigen::MatrixXd basis_matrix(std::int64_t t_first, std::size_t count, const CausalParams& params) {
    const auto n = static_cast<std::int64_t>(params.n_harmonics);
    Eigen::MatrixXd g(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(params.coefficient_count()));
    for (std::size_t i = 0; i < count; ++i) {
        const std::int64_t t = t_first + static_cast<std::int64_t>(i);
        for (std::int64_t k = -n; k <= n; ++k) {
            g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k + n)) = kernel(k, t, params.omega);
        }
    }
    return g;
}

}  // namespace

std::vector<double> qstar(std::span<const double> z, std::int64_t q, const CausalParams& params) {
    params.validate();
    if (z.empty()) throw ValidationError("empty input");
    const auto n = static_cast<std::int64_t>(params.n_harmonics);
    std::vector<double> out(params.coefficient_count(), 0.0);
    for (std::int64_t k = -n; k <= n; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            acc += kernel(k, q + static_cast<std::int64_t>(i), params.omega) * z[i];
        }
        out[static_cast<std::size_t>(k + n)] = acc;
    }
    return out;
}

Eigen::MatrixXd gram_matrix(Window window, const CausalParams& params) {
    params.validate();
    if (window.s < window.q) throw ValidationError("window must satisfy q <= s");
    const Eigen::MatrixXd g = basis_matrix(window.q, window.length(), params);
    const Eigen::Index m = g.cols();
    Eigen::MatrixXd r(m, m);
    for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index j = k; j < m; ++j) {
            const double v = g.col(k).dot(g.col(j));
            r(k, j) = v;
            r(j, k) = v;
        }
    }
    return r;
}

std::vector<double> regularized_solve(const Eigen::MatrixXd& R, double nu, std::span<const double> b) {
    if (R.rows() != R.cols()) throw ValidationError("regularized_solve: matrix must be square");
    if (static_cast<std::size_t>(R.rows()) != b.size()) {
        throw ValidationError("regularized_solve: right-hand side length does not match the matrix");
    }
    if (!(nu > 0.0) || !std::isfinite(nu)) throw ValidationError("regularized_solve: nu must be positive");
    if (!R.allFinite()) throw ValidationError("regularized_solve: matrix has non-finite entries");
    for (double v : b) {
        if (!std::isfinite(v)) throw ValidationError("regularized_solve: right-hand side has non-finite entries");
    }

    Eigen::MatrixXd a = R;
    a.diagonal().array() += nu;
    const Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success) {
        throw ValidationError("regularized_solve: R + nu I is not positive definite");
    }
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
    const Eigen::VectorXd y = llt.solve(rhs);
    return {y.data(), y.data() + y.size()};
}

std::vector<double> synthesize_causal(const CausalCoefficients& coeffs, std::int64_t t_first, std::int64_t t_last,
                                      const CausalParams& params) {
    params.validate();
    if (coeffs.y.size() != params.coefficient_count()) {
        throw ValidationError("coefficient vector must have length 2 * n_harmonics + 1");
    }
    if (t_last < t_first) return {};
    const auto n = static_cast<std::int64_t>(params.n_harmonics);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(t_last - t_first + 1));
    for (std::int64_t t = t_first; t <= t_last; ++t) {
        double acc = 0.0;
        for (std::int64_t k = -n; k <= n; ++k) {
            acc += coeffs.y[static_cast<std::size_t>(k + n)] * kernel(k, t, params.omega);
        }
        out.push_back(acc);
    }
    return out;
}

CausalModel::CausalModel(const CausalParams& params) : params_(params) {
    params_.validate();
    basis_ = basis_matrix(1, window_len(), params_);
    const Window local{1, static_cast<std::int64_t>(window_len())};
    Eigen::MatrixXd system = gram_matrix(local, params_);
    system.diagonal().array() += params_.nu;
    solver_.compute(system);
    if (solver_.info() != Eigen::Success) {
        throw ValidationError("causal Gram system is not positive definite");
    }
}

CausalCoefficients CausalModel::fit_smoothed(std::span<const double> smoothed) const {
    const std::size_t len = window_len();
    if (smoothed.size() != len) {
        throw ValidationError("causal window must hold exactly 2 * n_harmonics + 1 = " + std::to_string(len) +
                              " samples, got " + std::to_string(smoothed.size()));
    }
    CausalCoefficients out;
    double sum = 0.0;
    for (double v : smoothed) {
        if (!std::isfinite(v)) throw ValidationError("non-finite input");
        sum += v;
    }
    out.window_mean = sum / static_cast<double>(len);
    const std::size_t tail = std::min<std::size_t>(3, len);
    double tail_sum = 0.0;
    for (std::size_t i = len - tail; i < len; ++i) tail_sum += smoothed[i];
    out.tail_mean = tail_sum / static_cast<double>(tail);

    Eigen::VectorXd centered(static_cast<Eigen::Index>(len));
    for (std::size_t i = 0; i < len; ++i) centered(static_cast<Eigen::Index>(i)) = smoothed[i] - out.window_mean;

    const Eigen::VectorXd b = basis_.transpose() * centered;
    const Eigen::VectorXd y = solver_.solve(b);
    out.y.assign(y.data(), y.data() + y.size());
    return out;
}

CausalCoefficients CausalModel::fit(std::span<const double> history) const {
    if (history.size() != window_len()) {
        throw ValidationError("causal history must hold exactly 2 * n_harmonics + 1 = " +
                              std::to_string(window_len()) + " samples, got " + std::to_string(history.size()));
    }
    const std::vector<double> smoothed = moving_average(history, params_.ma_width);
    return fit_smoothed(smoothed);
}

std::vector<double> CausalModel::evaluate(const CausalCoefficients& coeffs, std::int64_t t_first, std::size_t count,
                                          double level) const {
    const Eigen::MatrixXd g = basis_matrix(t_first, count, params_);
    const Eigen::Map<const Eigen::VectorXd> y(coeffs.y.data(), static_cast<Eigen::Index>(coeffs.y.size()));
    const Eigen::VectorXd x = g * y;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = x(static_cast<Eigen::Index>(i)) + level;
    return out;
}

std::vector<double> CausalModel::reconstruct(const CausalCoefficients& coeffs) const {
    if (coeffs.y.size() != params_.coefficient_count()) throw ValidationError("coefficient length mismatch");
    const Eigen::Map<const Eigen::VectorXd> y(coeffs.y.data(), static_cast<Eigen::Index>(coeffs.y.size()));
    const Eigen::VectorXd x = basis_ * y;
    std::vector<double> out(window_len());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x(static_cast<Eigen::Index>(i)) + coeffs.window_mean;
    return out;
}

std::vector<double> CausalModel::extrapolate(const CausalCoefficients& coeffs, std::size_t horizon) const {
    if (horizon == 0) throw ValidationError("horizon must be at least 1");
    if (coeffs.y.size() != params_.coefficient_count()) throw ValidationError("coefficient length mismatch");
    return evaluate(coeffs, static_cast<std::int64_t>(window_len()) + 1, horizon, coeffs.tail_mean);
}

std::vector<double> CausalModel::forecast(std::span<const double> history, std::size_t horizon) const {
    if (horizon == 0) throw ValidationError("horizon must be at least 1");
    return extrapolate(fit(history), horizon);
}

std::vector<double> CausalModel::forecast_smoothed(std::span<const double> smoothed, std::size_t horizon) const {
    if (horizon == 0) throw ValidationError("horizon must be at least 1");
    return extrapolate(fit_smoothed(smoothed), horizon);
}

std::vector<double> causal_forecast(std::span<const double> history, std::size_t horizon,
                                    const CausalParams& params) {
    params.validate();
    if (history.size() != params.coefficient_count()) {
        throw ValidationError("causal history must hold exactly 2 * n_harmonics + 1 = " +
                              std::to_string(params.coefficient_count()) + " samples, got " +
                              std::to_string(history.size()));
    }
    return CausalModel(params).forecast(history, horizon);
}

}  // namespace salsacast
