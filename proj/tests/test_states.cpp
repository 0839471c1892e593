#include <doctest.h>

#include <cmath>

#include "ghzpump/params.hpp"
#include "ghzpump/states.hpp"

using namespace ghzpump;

TEST_CASE("ghz_state definitions") {
    // N = 1: (|0> + |1>)/sqrt(2) = |+>
    GroundState plus = ghz_state(1, +1);
    CHECK(plus.amps(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(plus.amps(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(plus.norm() == doctest::Approx(1.0).epsilon(1e-12));

    // orthogonality of the two phases for a few N
    for (int n = 1; n <= 6; ++n) {
        GroundState a = ghz_state(n, +1);
        GroundState b = ghz_state(n, -1);
        CHECK(std::abs((a.amps.adjoint() * b.amps).value()) < 1e-14);
        CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(b.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(ghz_state(0, +1), std::invalid_argument);
    CHECK_THROWS_AS(ghz_state(2, 2), std::invalid_argument);
}

TEST_CASE("N=3 GHZ in the X basis has the even-parity expansion") {
    GroundState g = basis_change(ghz_state(3, +1), Basis::X);
    // (|+++> + |+--> + |-+-> + |--+>)/2 with bit 1 = |->
    for (int s = 0; s < 8; ++s) {
        const double expected = (popcount(s) % 2 == 0) ? 0.5 : 0.0;
        CHECK(std::abs(g.amps(s) - Complex(expected, 0.0)) < 1e-12);
    }
    GroundState gm = basis_change(ghz_state(3, -1), Basis::X);
    for (int s = 0; s < 8; ++s) {
        const double expected = (popcount(s) % 2 == 1) ? 0.5 : 0.0;
        CHECK(std::abs(gm.amps(s) - Complex(expected, 0.0)) < 1e-12);
    }
}

TEST_CASE("sector projectors") {
    SectorProjector p00 = sector_projector(2, 0, Basis::Z);
    CHECK(p00.rank() == 1);
    CHECK(p00.indices[0] == 0);

    CHECK(sector_projector(4, 2, Basis::Z).rank() == 6);

    // completeness and orthogonality for N up to 10
    for (int n : {2, 5, 10}) {
        Eigen::Index total = 0;
        for (int k = 0; k <= n; ++k) {
            SectorProjector p = sector_projector(n, k, Basis::Z);
            CHECK(p.rank() == static_cast<int>(binomial(n, k)));
            total += p.rank();
        }
        CHECK(total == (Eigen::Index(1) << n));
    }
    CHECK_THROWS_AS(sector_projector(3, 4, Basis::Z), std::invalid_argument);
    CHECK_THROWS_AS(sector_projector(3, -1, Basis::Z), std::invalid_argument);
}

TEST_CASE("odd X-sector projector keeps GHZ- and kills GHZ") {
    const int n = 4;
    GroundState gm = basis_change(ghz_state(n, -1), Basis::X);
    GroundState gp = basis_change(ghz_state(n, +1), Basis::X);
    Vector kept = Vector::Zero(gm.amps.size());
    Vector killed = Vector::Zero(gp.amps.size());
    for (int k = 1; k <= n; k += 2) {
        SectorProjector p = sector_projector(n, k, Basis::X);
        kept += p.apply(gm.amps);
        killed += p.apply(gp.amps);
    }
    CHECK((kept - gm.amps).norm() < 1e-12);
    CHECK(killed.norm() < 1e-12);
}

TEST_CASE("basis change is an involution and unitary") {
    const int n = 3;
    GroundState zero = ghz_state(n, +1);
    zero.amps.setZero();
    zero.amps(0) = 1.0;  // |000>
    GroundState x = basis_change(zero, Basis::X);
    for (int s = 0; s < 8; ++s)
        CHECK(std::abs(x.amps(s) - Complex(std::pow(2.0, -1.5), 0.0)) < 1e-12);

    DensityMatrix rho = DensityMatrix::pure(ghz_state(n, +1));
    rho.mat(1, 2) = Complex(0.1, 0.05);  // make it less symmetric
    rho.mat(2, 1) = std::conj(rho.mat(1, 2));
    DensityMatrix twice = basis_change(basis_change(rho, Basis::X), Basis::Z);
    CHECK((twice.mat - rho.mat).cwiseAbs().maxCoeff() < 1e-12);
    DensityMatrix once = basis_change(rho, Basis::X);
    CHECK(std::abs(once.mat.trace() - rho.mat.trace()) < 1e-12);
}

TEST_CASE("fidelity") {
    const int n = 3;
    DensityMatrix rho = DensityMatrix::pure(ghz_state(n, +1));
    CHECK(fidelity(rho, ghz_state(n, +1)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(rho, ghz_state(n, -1)) == doctest::Approx(0.0).epsilon(1e-12));
    DensityMatrix mixed = DensityMatrix::maximally_mixed(n);
    CHECK(fidelity(mixed, ghz_state(n, +1)) == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
    // basis-tagged comparison works across bases
    DensityMatrix rho_x = basis_change(rho, Basis::X);
    CHECK(fidelity(rho_x, ghz_state(n, +1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("system params invariants") {
    CHECK_THROWS_AS(SystemParams::symmetric(1, 1.0, 0.1, 0.1), std::invalid_argument);
    SystemParams p = SystemParams::symmetric(3, 1.0, 0.1, 0.2);
    CHECK(p.gamma_0e == doctest::Approx(0.05));
    CHECK(p.symmetric_branching());
    p.gamma_0e = 0.06;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.gamma_0e = 0.05;
    p.g = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("density matrix validation") {
    DensityMatrix rho = DensityMatrix::maximally_mixed(2);
    CHECK_NOTHROW(rho.validate());
    rho.mat(0, 0) += 1e-6;
    CHECK_THROWS_AS(rho.validate(), std::invalid_argument);
}
