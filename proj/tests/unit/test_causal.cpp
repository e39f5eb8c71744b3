#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "salsacast/causal.hpp"
#include "salsacast/errors.hpp"

using namespace salsacast;
constexpr double kPi = std::numbers::pi;

TEST_CASE("sinc") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(std::abs(sinc(kPi)) < 1e-16);
    CHECK(sinc(kPi / 2) == doctest::Approx(2.0 / kPi).epsilon(1e-15));
    CHECK(sinc(-1.3) == sinc(1.3));
}

TEST_CASE("moving average") {
    const std::vector<double> constant(12, 4.25);
    for (double v : moving_average(constant, 5)) CHECK(v == doctest::Approx(4.25).epsilon(1e-15));

    const auto spike = moving_average(std::vector<double>{0, 0, 0, 5, 0, 0, 0}, 5);
    CHECK(spike[3] == 1.0);
    // Edge samples average the truncated window: index 0 sees z0..z2.
    const auto edges = moving_average(std::vector<double>{3, 6, 9, 0, 0, 0, 12}, 5);
    CHECK(edges[0] == doctest::Approx(6.0));
    CHECK(edges[6] == doctest::Approx(4.0));

    std::mt19937_64 rng(41);
    const auto z = oracle::random_real(50, rng);
    const auto mv = moving_average(z, 5);
    for (std::size_t i = 2; i + 2 < z.size(); ++i) {
        const double direct = (z[i - 2] + z[i - 1] + z[i] + z[i + 1] + z[i + 2]) / 5.0;
        CHECK(mv[i] == doctest::Approx(direct).epsilon(1e-14));
    }
    CHECK_THROWS_AS((void)moving_average(z, 4), ValidationError);
    CHECK_THROWS_AS((void)moving_average(std::vector<double>{1, 2, 3}, 5), ValidationError);
}

TEST_CASE("qstar") {
    const CausalParams p;
    for (double v : qstar(std::vector<double>(91, 0.0), 1, p)) CHECK(v == 0.0);

    const auto single = qstar(std::vector<double>{1.0}, 0, p);
    REQUIRE(single.size() == 91);
    for (std::size_t j = 0; j < single.size(); ++j) {
        const double expected = j == 45 ? p.omega / kPi : 0.0;
        CHECK(single[j] == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
    }

    std::mt19937_64 rng(42);
    const auto z = oracle::random_real(91, rng);
    const auto fast = qstar(z, 1, p);
    const auto slow = oracle::direct_qstar(z, 1, p.omega, 45);
    for (std::size_t j = 0; j < fast.size(); ++j) CHECK(fast[j] == doctest::Approx(slow[j]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("gram matrix") {
    const CausalParams p;
    SUBCASE("single-sample window is rank one at k = m = 0") {
        const auto r = gram_matrix(Window{0, 0}, p);
        const double expected = (p.omega / kPi) * (p.omega / kPi);
        for (Eigen::Index k = 0; k < r.rows(); ++k) {
            for (Eigen::Index m = 0; m < r.cols(); ++m) {
                CHECK(r(k, m) == doctest::Approx(k == 45 && m == 45 ? expected : 0.0).scale(1.0).epsilon(1e-14));
            }
        }
    }
    SUBCASE("matches the triple-loop oracle and is exactly symmetric") {
        CausalParams small;
        small.n_harmonics = 6;
        const auto r = gram_matrix(Window{3, 40}, small);
        const auto slow = oracle::direct_gram(3, 40, small.omega, 6);
        for (Eigen::Index k = 0; k < r.rows(); ++k) {
            for (Eigen::Index m = 0; m < r.cols(); ++m) {
                CHECK(r(k, m) == r(m, k));
                CHECK(r(k, m) == doctest::Approx(slow[k][m]).epsilon(1e-12).scale(1.0));
            }
        }
    }
    SUBCASE("positive semidefinite for random windows") {
        std::mt19937_64 rng(43);
        std::uniform_int_distribution<std::int64_t> qd(-200, 500);
        std::uniform_int_distribution<std::int64_t> ld(1, 150);
        for (int i = 0; i < 10; ++i) {
            const std::int64_t q = qd(rng);
            const auto r = gram_matrix(Window{q, q + ld(rng) - 1}, p);
            CHECK(r == r.transpose());
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r);
            CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
        }
    }
}

TEST_CASE("regularized solve") {
    const std::vector<double> b{1.5, -2.0, 0.25};
    const auto y0 = regularized_solve(Eigen::MatrixXd::Zero(3, 3), 1.0, b);
    for (std::size_t i = 0; i < 3; ++i) CHECK(y0[i] == doctest::Approx(b[i]));

    const auto y1 = regularized_solve(Eigen::MatrixXd::Identity(4, 4), 1.0, std::vector<double>(4, 2.0));
    for (double v : y1) CHECK(v == doctest::Approx(1.0));

    std::mt19937_64 rng(44);
    const int n = 30;
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = std::normal_distribution<double>(0.0, 1.0)(rng);
    const Eigen::MatrixXd r = g.transpose() * g;
    const auto rhs = oracle::random_real(n, rng);
    const auto fast = regularized_solve(r, 0.1, rhs);

    std::vector<std::vector<double>> dense(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dense[i][j] = r(i, j) + (i == j ? 0.1 : 0.0);
    const auto slow = oracle::gauss_solve(dense, rhs);
    for (int i = 0; i < n; ++i) CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-8).scale(1.0));

    double res = 0.0;
    double bn = 0.0;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += dense[i][j] * fast[j];
        res += (acc - rhs[i]) * (acc - rhs[i]);
        bn += rhs[i] * rhs[i];
    }
    CHECK(std::sqrt(res) < 1e-8 * std::sqrt(bn));

    Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS((void)regularized_solve(bad, 0.1, std::vector<double>{1, 1}), ValidationError);
    CHECK_THROWS_AS((void)regularized_solve(Eigen::MatrixXd::Identity(2, 2), 0.1, std::vector<double>{1}),
                    ValidationError);
}

TEST_CASE("synthesize_causal") {
    const CausalParams p;
    CausalCoefficients c;
    c.y.assign(91, 0.0);
    for (double v : synthesize_causal(c, 90, 100, p)) CHECK(v == 0.0);

    c.y[45] = 1.0;
    const auto single = synthesize_causal(c, -5, 5, p);
    for (int t = -5; t <= 5; ++t) {
        CHECK(single[t + 5] == doctest::Approx(p.omega / kPi * oracle::plain_sinc(p.omega * t)).epsilon(1e-14));
    }

    std::mt19937_64 rng(45);
    c.y = oracle::random_real(91, rng);
    const auto fast = synthesize_causal(c, 80, 110, p);
    for (int t = 80; t <= 110; ++t) {
        double acc = 0.0;
        for (int k = -45; k <= 45; ++k) {
            acc += c.y[k + 45] * (p.omega / kPi) * oracle::plain_sinc(k * kPi + p.omega * t);
        }
        CHECK(fast[t - 80] == doctest::Approx(acc).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("causal_forecast on a constant history returns the level") {
    const std::vector<double> history(91, 23.7);
    const auto f = causal_forecast(history, 7);
    REQUIRE(f.size() == 7);
    for (double v : f) CHECK(v == doctest::Approx(23.7).epsilon(1e-14));

    const CausalModel model;
    const auto coeffs = model.fit(history);
    for (double y : coeffs.y) CHECK(std::abs(y) < 1e-12);
    for (double v : f) CHECK(v == doctest::Approx(coeffs.tail_mean).epsilon(1e-15));
}

TEST_CASE("causal_forecast is level equivariant") {
    std::mt19937_64 rng(46);
    std::uniform_real_distribution<double> cd(-100.0, 100.0);
    for (int trial = 0; trial < 10; ++trial) {
        const auto h = oracle::random_real(91, rng, 3.0);
        const double c = cd(rng);
        auto shifted = h;
        for (double& v : shifted) v += c;
        const auto a = causal_forecast(h, 5);
        const auto b = causal_forecast(shifted, 5);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(b[i] - (a[i] + c)) < 1e-9);
    }
}

TEST_CASE("weakly regularized fit reproduces an in-band sinusoid inside the window") {
    std::vector<double> z(91);
    for (int t = 1; t <= 91; ++t) z[t - 1] = std::sin(0.1 * t);
    CausalParams p;
    p.nu = 1e-4;
    const CausalModel model(p);
    const auto recon = model.reconstruct(model.fit(z));
    CHECK(oracle::rel_rmse(recon, z) < 0.05);
}

TEST_CASE("in-window reconstruction is shrunk by at least R/(R + nu) at the default nu") {
    // The Gram spectrum is bounded by (omega/pi)^2 * (pi/omega) = omega/pi = 0.25, so the
    // fitted component can be at most 0.25 / (0.25 + 0.1) of the centered window.
    const CausalParams p;
    const auto r = gram_matrix(Window{1, 91}, p);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r);
    CHECK(eig.eigenvalues().maxCoeff() <= p.omega / kPi + 1e-12);

    std::vector<double> z(91);
    for (int t = 1; t <= 91; ++t) z[t - 1] = std::sin(0.1 * t);
    const CausalModel model(p);
    const auto coeffs = model.fit_smoothed(z);
    const auto recon = model.reconstruct(coeffs);
    double centered = 0.0;
    double fitted = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        centered += (z[i] - coeffs.window_mean) * (z[i] - coeffs.window_mean);
        fitted += (recon[i] - coeffs.window_mean) * (recon[i] - coeffs.window_mean);
    }
    const double bound = (p.omega / kPi) / (p.omega / kPi + p.nu);
    CHECK(std::sqrt(fitted / centered) <= bound + 1e-12);
}

TEST_CASE("causal_forecast input validation") {
    CHECK_THROWS_AS((void)causal_forecast(std::vector<double>(90, 1.0), 3), ValidationError);
    CHECK_THROWS_AS((void)causal_forecast(std::vector<double>(91, 1.0), 0), ValidationError);
    CausalParams p;
    p.omega = 4.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = CausalParams{};
    p.ma_width = 4;
    CHECK_THROWS_AS(p.validate(), ValidationError);
}
