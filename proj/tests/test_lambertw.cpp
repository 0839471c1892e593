#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ghzpump/lambertw.hpp"

using ghzpump::lambert_w;

namespace {

double residual(double w, double z) {
    return std::abs(w * std::exp(w) - z) / std::max(1.0, std::abs(z));
}

}  // namespace

TEST_CASE("lambert W anchors") {
    CHECK(lambert_w(0, 0.0) == 0.0);
    CHECK(lambert_w(-1, -std::exp(-1.0)) == doctest::Approx(-1.0));
    CHECK(lambert_w(0, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    // the anchor used by the dynamical analysis at E = 0.1
    CHECK(lambert_w(-1, -0.2 / std::exp(2.0)) == doctest::Approx(-5.2718).epsilon(1e-3));
}

TEST_CASE("round-trip residual over both branch domains") {
    const double min_z = -std::exp(-1.0);
    // branch 0 over log-spaced positive and a linear grid in [-1/e, 0]
    for (int i = 0; i <= 200; ++i) {
        const double z = std::pow(10.0, -8.0 + 12.0 * i / 200.0);
        const double w = lambert_w(0, z);
        CHECK(residual(w, z) <= 1e-12);
        CHECK(w >= -1.0);
    }
    for (int i = 1; i < 100; ++i) {
        const double z = min_z * (1.0 - i / 100.0);
        const double w0 = lambert_w(0, z);
        CHECK(residual(w0, z) <= 1e-12);
        CHECK(w0 >= -1.0);
        const double wm = lambert_w(-1, z);
        CHECK(residual(wm, z) <= 1e-12);
        CHECK(wm <= -1.0);
    }
    // branch -1 near zero (log-spaced)
    for (int i = 0; i <= 120; ++i) {
        const double z = -std::pow(10.0, -12.0 + 11.5 * i / 120.0);
        if (z < min_z) continue;
        const double w = lambert_w(-1, z);
        CHECK(residual(w, z) <= 1e-12);
        CHECK(w <= -1.0);
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(lambert_w(0, -1.0), std::domain_error);
    CHECK_THROWS_AS(lambert_w(-1, 0.1), std::domain_error);
    CHECK_THROWS_AS(lambert_w(-1, -1.0), std::domain_error);
    CHECK_THROWS_AS(lambert_w(2, 0.5), std::domain_error);
}
