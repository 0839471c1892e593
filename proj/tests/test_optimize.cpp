#include <doctest.h>

#include <cmath>
#include <random>

#include "ghzpump/lambertw.hpp"
#include "ghzpump/optimize.hpp"
#include "ghzpump/ratemodel.hpp"

using namespace ghzpump;

TEST_CASE("weak drive amplitude assignment") {
    WeakDriveParams p = weak_drive_params(9, 0.05);
    for (int f = 1; f <= 6; ++f) CHECK(p.a_f[f - 1] == doctest::Approx(1.0));
    CHECK(p.a_f[6] == doctest::Approx(std::sqrt(4.0 / 7.0)).epsilon(1e-12));  // F = 7
    CHECK(p.a_f[7] == doctest::Approx(0.5).epsilon(1e-12));                   // F = 8
    CHECK(p.a_x == doctest::Approx(std::sqrt(2.0 / (3.0 * 9.0 * std::log(9.0)))));
}

TEST_CASE("weak drive gamma at N=4, E=0.05") {
    WeakDriveParams p = weak_drive_params(4, 0.05, 1.0, 1.0);
    CHECK(p.gamma == doctest::Approx(0.0491).epsilon(2e-3));
    CHECK_THROWS_AS(weak_drive_params(1, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(weak_drive_params(4, 0.0), std::invalid_argument);
}

TEST_CASE("H and G functions") {
    CHECK(hg_functions({1.0}) == std::pair<double, double>{1.0, 1.0});
    auto [h4, g4] = hg_functions({1.0, 1.0, 1.0});
    CHECK(h4 == doctest::Approx(11.0 / 6.0).epsilon(1e-12));
    CHECK_THROWS_AS(hg_functions({1.0, 0.0}), std::domain_error);

    // the optimal assignment tracks (3/2) log N and 2 log N up to O(1)
    for (int n : {16, 64, 256}) {
        WeakDriveParams p = weak_drive_params(n, 0.05);
        auto [h, g] = hg_functions(p.a_f);
        CHECK(std::abs(h - 1.5 * std::log(n)) < 2.5);
        CHECK(std::abs(g - 2.0 * std::log(n)) < 2.5);
    }
}

TEST_CASE("ceil-1 assignment is KKT-optimal: feasible perturbations never reduce G at fixed H") {
    // random feasible two-coordinate perturbations that keep H fixed and
    // A_F in (0, 1]; G must not decrease
    const int n = 12;
    WeakDriveParams p = weak_drive_params(n, 0.05);
    auto [h0, g0] = hg_functions(p.a_f);
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> pick(0, n - 2);
    std::uniform_real_distribution<double> mag(1e-4, 3e-2);
    int tested = 0;
    for (int trial = 0; trial < 1000 && tested < 400; ++trial) {
        const int i = pick(rng);
        const int j = pick(rng);
        if (i == j) continue;
        std::vector<double> a = p.a_f;
        // lower a2_i (keeps A <= 1 feasible), then solve for a2_j restoring H
        const double da = mag(rng);
        double a2i = a[i] * a[i] - da;
        if (a2i <= 1e-6) continue;
        const double fi = i + 1.0, fj = j + 1.0;
        // H contribution: 1/(f a2): delta_j = -delta_i
        const double hi_new = 1.0 / (fi * a2i);
        const double hi_old = 1.0 / (fi * a[i] * a[i]);
        const double hj_target = 1.0 / (fj * a[j] * a[j]) - (hi_new - hi_old);
        if (hj_target <= 0.0) continue;
        const double a2j = 1.0 / (fj * hj_target);
        if (a2j > 1.0 + 1e-12 || a2j <= 0.0) continue;  // infeasible direction
        a[i] = std::sqrt(a2i);
        a[j] = std::sqrt(a2j);
        auto [h1, g1] = hg_functions(a);
        CHECK(h1 == doctest::Approx(h0).epsilon(1e-9));
        CHECK(g1 >= g0 - 1e-12);
        ++tested;
    }
    CHECK(tested > 100);
}

TEST_CASE("dynamical optimum anchors") {
    DynamicalSolution s = dynamical_optimum(10, 0.1, 1.0, 0.38, f_of_n(10), h_of_n(10));
    CHECK(std::sqrt(1.0 + 2.0 / s.w_m1) == doctest::Approx(0.788).epsilon(0.007));
    CHECK(std::sqrt(s.w_m1 * s.w_m1 + 2.0 * s.w_m1) == doctest::Approx(4.15).epsilon(0.002));
    CHECK(s.stationary_over_dynamical == doctest::Approx(0.62).epsilon(0.01));

    DynamicalSolution s3 = dynamical_optimum(10, 0.03, 1.0, 0.38, f_of_n(10), h_of_n(10));
    CHECK(s3.w_m1 == doctest::Approx(-6.72).epsilon(1e-3));
    CHECK(std::sqrt(1.0 + 2.0 / s3.w_m1) == doctest::Approx(0.838).epsilon(0.006));
    CHECK(std::sqrt(s3.w_m1 * s3.w_m1 + 2.0 * s3.w_m1) == doctest::Approx(5.63).epsilon(0.001));
    CHECK(s3.stationary_over_dynamical == doctest::Approx(0.70).epsilon(0.01));

    // c is a stationary point of tau(c) = -log(E - c^2)/c
    const double e = 0.1;
    auto tau_of = [e](double c) { return -std::log(e - c * c) / c; };
    const double c = s.c;
    const double d = 1e-3 * c;
    const double deriv = (tau_of(c + d) - tau_of(c - d)) / (2.0 * d);
    CHECK(std::abs(deriv) * c / tau_of(c) < 1e-5);
    CHECK(tau_of(c + d) >= tau_of(c));
    CHECK(tau_of(c - d) >= tau_of(c));

    // E -> 0 asymptote: tau -> log(1/E)/sqrt(E)
    DynamicalSolution tiny = dynamical_optimum(10, 1e-9, 1.0, 0.38, 1.0, 1.0);
    CHECK(tiny.tau / (std::log(1e9) / std::sqrt(1e-9)) == doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("strong driving constants") {
    const double e = 0.05;
    StrongDriveParams p = strong_drive_params(100, e, 1.0);
    const double logn = std::log(100.0);
    CHECK(p.gamma / (std::sqrt(e) / (std::sqrt(100.0) * logn)) ==
          doctest::Approx(0.42).epsilon(0.02));
    CHECK(p.gamma_f / (std::sqrt(e) / std::sqrt(100.0)) == doctest::Approx(0.80).epsilon(0.02));
    CHECK(p.omega_x / (std::sqrt(e) / (std::pow(100.0, 1.5) * std::sqrt(logn))) ==
          doctest::Approx(0.24).epsilon(0.02));
    // Omega_F closed form
    for (int f : {1, 37, 99}) {
        const double expect = std::sqrt(8.0 * p.e_z / (9.0 * 100.0 * 99.0 * logn) *
                                        (100.0 - f) / f);
        CHECK(p.omega_f[f - 1] == doctest::Approx(expect).epsilon(1e-12));
    }
    // tau_GHZ ~ 66 N^{3/2} log N / sqrt(E)
    CHECK(p.tau_ghz / (std::pow(100.0, 1.5) * logn / std::sqrt(e)) ==
          doctest::Approx(66.0).epsilon(0.02));
    // 3-compartment rate at N = 100 within 10% of 0.0152 g sqrt(E)/(N^{3/2} log N)
    CompartmentModel m3 = build_3compartment_strong(100, p.gamma_z_plus, p.e_z);
    const double gp = effective_rate(m3);
    CHECK(gp == doctest::Approx(0.0152 * std::sqrt(e) / (std::pow(100.0, 1.5) * logn))
                    .epsilon(0.10));
}

TEST_CASE("fixed time optimum") {
    const int n = 10;
    const double g = 1.0, alpha = 1.0;
    const double kappa = 0.38, f = f_of_n(n), h = h_of_n(n);
    FixedTimeSolution s = fixed_time_optimum(5e4, n, g, alpha, kappa, f, h);
    CHECK(s.error > 0.0);
    CHECK(s.error < 1.0);
    // stationarity: E(gamma_opt +/- 1%) >= E(gamma_opt)
    auto e_of = [&](double gamma) {
        const double stat = gamma * gamma / (g * g) * h / f;
        return stat + std::exp(-gamma * 5e4 * kappa * alpha * alpha * f);
    };
    CHECK(e_of(s.gamma_opt) == doctest::Approx(s.error).epsilon(1e-9));
    CHECK(e_of(1.01 * s.gamma_opt) >= s.error);
    CHECK(e_of(0.99 * s.gamma_opt) >= s.error);
    // T -> infinity drives the reachable error to zero
    CHECK(fixed_time_optimum(1e10, n, g, alpha, kappa, f, h).error < 1e-10);
    CHECK(fixed_time_optimum(1e10, n, g, alpha, kappa, f, h).error <
          fixed_time_optimum(1e6, n, g, alpha, kappa, f, h).error);
    CHECK_THROWS_AS(fixed_time_optimum(0.0, n, g, alpha, kappa, f, h), std::invalid_argument);

    // qubit-count bounds behave monotonically
    CHECK(max_qubits_weak(1e4, 0.1) > max_qubits_weak(1e3, 0.1));
    CHECK(max_qubits_strong(1e6, 0.1) == doctest::Approx(std::pow(1e6, 2.0 / 3.0) *
                                                          std::pow(0.1, 1.0 / 3.0) / 16.0));
}
