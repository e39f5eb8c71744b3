#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "salsacast/fourier.hpp"

namespace salsacast {

/// ADMM hyperparameters for sparse recovery over the truncated Fourier dictionary.
struct SalsaParams {
    double mu = 0.6;               ///< penalty parameter
    double lambda = 1.0;           ///< l1 regularizer weight
    std::size_t n_basis = 200;     ///< dictionary length N
    std::size_t n_iter = 1000;     ///< iteration count
    double threshold_scale = 0.5;  ///< shrinkage threshold is threshold_scale * lambda / mu
    std::optional<double> p_norm;  ///< penalty normalization; defaults to n_basis
    /// Optional early stop when |cost_k - cost_{k-1}| <= rel_tol * cost_{k-1}. 0 disables it.
    double rel_tol = 0.0;

    [[nodiscard]] double penalty_norm() const noexcept {
        return p_norm.value_or(static_cast<double>(n_basis));
    }
    [[nodiscard]] double threshold() const noexcept { return threshold_scale * lambda / mu; }

    /// @throws ValidationError on out-of-range values.
    void validate() const;
};

/// Which of the M samples are known.
class ObservationMask {
public:
    explicit ObservationMask(std::vector<bool> observed);

    /// First `observed` samples known, remaining total_len - observed masked.
    [[nodiscard]] static ObservationMask leading(std::size_t total_len, std::size_t observed);

    [[nodiscard]] std::size_t total_len() const noexcept { return observed_.size(); }
    [[nodiscard]] bool observed(std::size_t i) const noexcept { return observed_[i]; }
    [[nodiscard]] std::size_t observed_count() const noexcept;

private:
    std::vector<bool> observed_;
};

struct SalsaState {
    ComplexVector coefficients;       ///< basis coefficients c, length N
    ComplexVector dual;               ///< auxiliary d, length N
    std::vector<double> cost_history;  ///< one entry per iteration run
};

/// max(1 - T/|x|, 0) * x, with soft(0, T) = 0.
/// @throws ValidationError if threshold is negative or NaN.
[[nodiscard]] Complex soft_threshold(Complex x, double threshold);
[[nodiscard]] double soft_threshold(double x, double threshold);
[[nodiscard]] ComplexVector soft_threshold(std::span<const Complex> x, double threshold);

/**
 * Runs the SALSA iteration from c = A^H masked, d = 0:
 *
 *   u <- soft(c + d, threshold) - d
 *   d <- (A^H (masked - mask .* A u)) / (mu + p)
 *   c <- d + u
 *   cost <- ||masked - A c||^2 + lambda * sum |c|
 *
 * `masked` must hold zeros at unobserved positions.
 * @throws ValidationError on non-finite input, mask/size mismatch or M > N.
 */
[[nodiscard]] SalsaState salsa_solve(std::span<const Complex> masked, const ObservationMask& mask,
                                     const SalsaParams& params);

/// Recovers `horizon` samples appended to `history` as masked entries; returns the real part.
[[nodiscard]] std::vector<double> salsa_forecast(std::span<const double> history, std::size_t horizon,
                                                 const SalsaParams& params = {});

}  // namespace salsacast
