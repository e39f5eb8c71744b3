#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace salsacast {

namespace detail {
struct FftPlanPair;
}  // namespace detail

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/**
 * Truncated Fourier dictionary A mapping N coefficients to M <= N samples.
 *
 *   (A c)(m)   = sum_n c(n) exp(+2 pi i m n / N),   m = 0..M-1
 *   (A^H y)(n) = sum_m y(m) exp(-2 pi i m n / N),   n = 0..N-1
 *
 * Rows of A are orthogonal with squared norm N, so A A^H = N I for every M <= N.
 *
 * Instances own scratch space and are not safe to share between threads;
 * create one per thread. Results are deterministic for a given input.
 */
class FourierDictionary {
public:
    /// @throws ValidationError if n_samples is 0 or exceeds n_basis.
    FourierDictionary(std::size_t n_samples, std::size_t n_basis);
    ~FourierDictionary();
    FourierDictionary(FourierDictionary&&) noexcept;
    FourierDictionary& operator=(FourierDictionary&&) noexcept;
    FourierDictionary(const FourierDictionary&) = delete;
    FourierDictionary& operator=(const FourierDictionary&) = delete;

    [[nodiscard]] std::size_t n_samples() const noexcept { return n_samples_; }
    [[nodiscard]] std::size_t n_basis() const noexcept { return n_basis_; }

    /// out (length M) = A * coeffs (length N).
    void synthesize(std::span<const Complex> coeffs, std::span<Complex> out);
    /// out (length N) = A^H * samples (length M).
    void adjoint(std::span<const Complex> samples, std::span<Complex> out);

private:
    std::size_t n_samples_;
    std::size_t n_basis_;
    const detail::FftPlanPair* plans_;
    ComplexVector scratch_in_;
    ComplexVector scratch_out_;
};

/// First out_len outputs of the unnormalized inverse DFT of coeffs.
/// @throws ValidationError if out_len > coeffs.size().
[[nodiscard]] ComplexVector synthesize(std::span<const Complex> coeffs, std::size_t out_len);

/// Forward DFT of samples zero-padded to n_basis.
/// @throws ValidationError if samples.size() > n_basis.
[[nodiscard]] ComplexVector adjoint(std::span<const Complex> samples, std::size_t n_basis);

}  // namespace salsacast
