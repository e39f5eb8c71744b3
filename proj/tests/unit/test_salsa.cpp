#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "salsacast/errors.hpp"
#include "salsacast/salsa.hpp"

using namespace salsacast;

TEST_CASE("SalsaParams defaults") {
    const SalsaParams p;
    CHECK(p.mu == 0.6);
    CHECK(p.lambda == 1.0);
    CHECK(p.n_basis == 200);
    CHECK(p.n_iter == 1000);
    CHECK(p.threshold_scale == 0.5);
    CHECK(p.penalty_norm() == 200.0);
    CHECK(p.threshold() == doctest::Approx(0.5 / 0.6));

    SalsaParams bad;
    bad.mu = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = SalsaParams{};
    bad.lambda = -1.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("soft threshold examples") {
    CHECK(soft_threshold(Complex{}, 2.0) == Complex{});
    CHECK(soft_threshold(0.0, 0.0) == 0.0);
    CHECK(soft_threshold(Complex(1.5, -2.0), 0.0) == Complex(1.5, -2.0));
    CHECK(soft_threshold(3.0, 1.0) == doctest::Approx(2.0));
    CHECK(soft_threshold(-3.0, 1.0) == doctest::Approx(-2.0));
    const Complex z = soft_threshold(Complex(0.0, 3.0), 1.0);
    CHECK(z.real() == 0.0);
    CHECK(z.imag() == doctest::Approx(2.0));
    CHECK(soft_threshold(0.5, 1.0) == 0.0);
    CHECK_THROWS_AS((void)soft_threshold(1.0, -0.1), ValidationError);
}

TEST_CASE("soft threshold magnitude law and nonexpansiveness") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g(0.0, 2.0);
    std::uniform_real_distribution<double> td(0.0, 3.0);
    for (int i = 0; i < 20000; ++i) {
        const Complex a(g(rng), g(rng));
        const Complex b(g(rng), g(rng));
        const double t = td(rng);
        const Complex sa = soft_threshold(a, t);
        CHECK(std::abs(std::abs(sa) + std::min(std::abs(a), t) - std::abs(a)) <= 1e-12 * std::max(1.0, std::abs(a)));
        CHECK(std::abs(sa - soft_threshold(b, t)) <= std::abs(a - b) * (1.0 + 1e-12) + 1e-15);
        if (std::abs(sa) > 0.0) CHECK(std::abs(std::arg(sa) - std::arg(a)) < 1e-12);
    }
}

TEST_CASE("salsa_solve zero input stays at origin") {
    SalsaParams p;
    p.n_iter = 50;
    const ComplexVector masked(30);
    const auto state = salsa_solve(masked, ObservationMask::leading(30, 20), p);
    REQUIRE(state.cost_history.size() == 50);
    for (double c : state.cost_history) CHECK(c == 0.0);
    for (const auto& v : state.coefficients) CHECK(v == Complex{});
}

TEST_CASE("salsa_solve validates inputs") {
    SalsaParams p;
    p.n_basis = 16;
    CHECK_THROWS_AS((void)salsa_solve(ComplexVector(17), ObservationMask::leading(17, 10), p), ValidationError);
    CHECK_THROWS_AS((void)salsa_solve(ComplexVector(10), ObservationMask::leading(9, 5), p), ValidationError);
    ComplexVector bad(10);
    bad[2] = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS((void)salsa_solve(bad, ObservationMask::leading(10, 5), p), ValidationError);
    CHECK_THROWS_AS((void)salsa_forecast(std::vector<double>(190, 1.0), 11, p), ValidationError);
}

TEST_CASE("fully observed 3-sparse signal is recovered") {
    // Signal generated from known coefficients: three on-grid complex exponentials.
    const std::size_t n = 200;
    const std::size_t m = 101;
    ComplexVector truth_coeffs(n);
    truth_coeffs[7] = Complex(1.0, 0.5);
    truth_coeffs[33] = Complex(-0.8, 0.2);
    truth_coeffs[120] = Complex(0.0, 0.6);
    const auto signal = oracle::direct_synthesis(truth_coeffs, m);

    SalsaParams p;
    p.lambda = 0.01;
    p.n_iter = 5000;
    const auto state = salsa_solve(signal, ObservationMask::leading(m, m), p);
    const auto recon = synthesize(state.coefficients, m);
    double err = 0.0;
    double ref = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        err += std::norm(recon[i] - signal[i]);
        ref += std::norm(signal[i]);
    }
    CHECK(std::sqrt(err / ref) < 0.05);
}

TEST_CASE("cost at the last iteration does not exceed the first") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 5; ++trial) {
        const auto history = oracle::random_real(91, rng);
        ComplexVector masked(98);
        std::copy(history.begin(), history.end(), masked.begin());
        const auto state = salsa_solve(masked, ObservationMask::leading(98, 91), SalsaParams{});
        REQUIRE(state.cost_history.size() == 1000);
        CHECK(state.cost_history.back() <= state.cost_history.front());
        for (double c : state.cost_history) CHECK((std::isfinite(c) && c >= 0.0));
    }
}

TEST_CASE("salsa_forecast on zeros and on an on-grid tone") {
    const auto zeros = salsa_forecast(std::vector<double>(91, 0.0), 10, SalsaParams{});
    REQUIRE(zeros.size() == 10);
    for (double v : zeros) CHECK(v == 0.0);

    // Period 20 divides N = 200 (bin 10); the analytic continuation is the oracle.
    const auto signal = oracle::tones({{10, 1.0, 0.4}}, 200, 101);
    SalsaParams p;
    p.lambda = 0.01;
    const std::vector<double> history(signal.begin(), signal.begin() + 91);
    const std::vector<double> truth(signal.begin() + 91, signal.end());
    const auto forecast = salsa_forecast(history, 10, p);
    CHECK(oracle::rel_rmse(forecast, truth) < 0.05);
}

TEST_CASE("real input keeps the reconstruction real") {
    const auto signal = oracle::tones({{4, 1.0, 0.0}, {15, 0.5, 1.0}}, 200, 98);
    ComplexVector masked(98);
    std::copy(signal.begin(), signal.begin() + 91, masked.begin());
    const auto state = salsa_solve(masked, ObservationMask::leading(98, 91), SalsaParams{});
    const auto recon = synthesize(state.coefficients, 98);
    double hist_norm = 0.0;
    for (std::size_t i = 0; i < 91; ++i) hist_norm += signal[i] * signal[i];
    hist_norm = std::sqrt(hist_norm);
    for (std::size_t i = 91; i < 98; ++i) CHECK(std::abs(recon[i].imag()) < 1e-6 * hist_norm);
}

TEST_CASE("salsa_forecast is bit-for-bit deterministic") {
    std::mt19937_64 rng(33);
    auto history = oracle::random_real(91, rng);
    for (auto& v : history) v += 80.0;
    const auto a = salsa_forecast(history, 7);
    const auto b = salsa_forecast(history, 7);
    CHECK(a == b);
}

TEST_CASE("relative-tolerance stop shortens the run") {
    std::mt19937_64 rng(34);
    const auto history = oracle::random_real(91, rng);
    ComplexVector masked(98);
    std::copy(history.begin(), history.end(), masked.begin());
    SalsaParams p;
    p.rel_tol = 1e-6;
    const auto state = salsa_solve(masked, ObservationMask::leading(98, 91), p);
    CHECK(state.cost_history.size() < 1000);
    CHECK(state.cost_history.size() >= 2);
}

TEST_CASE("without the l1 term the unobserved samples stay at zero") {
    // Rows of the dictionary are orthogonal, so the adjoint of an observed-only
    // residual never reaches the forecast rows.
    std::mt19937_64 rng(77);
    const auto h = oracle::random_real(91, rng, 5.0);
    SalsaParams p;
    p.lambda = 0.0;
    p.n_iter = 50;
    for (double v : salsa_forecast(h, 7, p)) CHECK(std::abs(v) < 1e-9);
}
