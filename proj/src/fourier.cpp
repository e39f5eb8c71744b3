#include "salsacast/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "salsacast/errors.hpp"

namespace salsacast {

// FFTW planning is not thread-safe, execution on a finished plan is. Plans are
// created once per length under a lock and live for the process lifetime.
// FFTW_UNALIGNED keeps the chosen codelets independent of buffer alignment, so
// every execution for a given length runs the same arithmetic.
namespace detail {

struct FftPlanPair {
    fftw_plan forward = nullptr;  // exp(-2 pi i ...)
    fftw_plan inverse = nullptr;  // exp(+2 pi i ...), unnormalized
};

}  // namespace detail

namespace {

const detail::FftPlanPair* lookup_plans(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, detail::FftPlanPair> cache;

    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return &it->second;

    const int len = static_cast<int>(n);
    fftw_complex* in = fftw_alloc_complex(n);
    fftw_complex* out = fftw_alloc_complex(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    detail::FftPlanPair plans;
    plans.forward = fftw_plan_dft_1d(len, in, out, FFTW_FORWARD, flags);
    plans.inverse = fftw_plan_dft_1d(len, in, out, FFTW_BACKWARD, flags);
    fftw_free(in);
    fftw_free(out);
    if (plans.forward == nullptr || plans.inverse == nullptr) {
        throw std::runtime_error("FFTW failed to create a plan of length " + std::to_string(n));
    }
    return &cache.emplace(n, plans).first->second;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

FourierDictionary::FourierDictionary(std::size_t n_samples, std::size_t n_basis)
    : n_samples_(n_samples), n_basis_(n_basis), plans_(nullptr) {
    if (n_basis == 0 || n_samples == 0) {
        throw ValidationError("Fourier dictionary sizes must be positive");
    }
    if (n_samples > n_basis) {
        throw ValidationError("signal length M=" + std::to_string(n_samples) + " exceeds dictionary length N=" +
                              std::to_string(n_basis));
    }
    plans_ = lookup_plans(n_basis);
    scratch_in_.resize(n_basis);
    scratch_out_.resize(n_basis);
}

FourierDictionary::~FourierDictionary() = default;
FourierDictionary::FourierDictionary(FourierDictionary&&) noexcept = default;
FourierDictionary& FourierDictionary::operator=(FourierDictionary&&) noexcept = default;

void FourierDictionary::synthesize(std::span<const Complex> coeffs, std::span<Complex> out) {
    if (coeffs.size() != n_basis_ || out.size() != n_samples_) {
        throw ValidationError("synthesize: buffer sizes do not match the dictionary");
    }
    std::copy(coeffs.begin(), coeffs.end(), scratch_in_.begin());
    fftw_execute_dft(plans_->inverse, as_fftw(scratch_in_.data()), as_fftw(scratch_out_.data()));
    std::copy_n(scratch_out_.begin(), n_samples_, out.begin());
}

void FourierDictionary::adjoint(std::span<const Complex> samples, std::span<Complex> out) {
    if (samples.size() != n_samples_ || out.size() != n_basis_) {
        throw ValidationError("adjoint: buffer sizes do not match the dictionary");
    }
    std::copy(samples.begin(), samples.end(), scratch_in_.begin());
    std::fill(scratch_in_.begin() + static_cast<std::ptrdiff_t>(n_samples_), scratch_in_.end(), Complex{});
    fftw_execute_dft(plans_->forward, as_fftw(scratch_in_.data()), as_fftw(out.data()));
}

ComplexVector synthesize(std::span<const Complex> coeffs, std::size_t out_len) {
    if (out_len > coeffs.size()) {
        throw ValidationError("synthesize: output length M=" + std::to_string(out_len) +
                              " exceeds dictionary length N=" + std::to_string(coeffs.size()));
    }
    ComplexVector out(out_len);
    if (out_len == 0) return out;
    FourierDictionary dict(out_len, coeffs.size());
    dict.synthesize(coeffs, out);
    return out;
}

ComplexVector adjoint(std::span<const Complex> samples, std::size_t n_basis) {
    if (samples.size() > n_basis) {
        throw ValidationError("adjoint: signal length M=" + std::to_string(samples.size()) +
                              " exceeds dictionary length N=" + std::to_string(n_basis));
    }
    ComplexVector out(n_basis);
    if (samples.empty()) return out;
    FourierDictionary dict(samples.size(), n_basis);
    dict.adjoint(samples, out);
    return out;
}

}  // namespace salsacast
