#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/topology.hpp"

using namespace qwalk;

namespace {

const Complex I{0.0, 1.0};

}  // namespace

TEST_CASE("bloch_matrix examples") {
    for (double k : {0.0, 0.4, 2.0, -1.1}) {
        const BlochMatrix w = bloch_matrix(0.0, 0.0, k);
        CHECK(std::abs(w(0, 0) - std::exp(-I * k)) <= 1e-15);
        CHECK(std::abs(w(1, 1) - std::exp(I * k)) <= 1e-15);
        CHECK(std::abs(w(0, 1)) <= 1e-15);
        CHECK(std::abs(w(1, 0)) <= 1e-15);
    }
    CHECK((bloch_matrix(0.0, kPi / 4, 0.0) - coin_matrix(kPi / 4)).norm() <= 1e-15);

    Eigen::ComplexEigenSolver<BlochMatrix> es(bloch_matrix(0.0, kPi / 4, kPi / 2));
    const auto ev = es.eigenvalues();
    CHECK(std::abs(ev(0).real()) <= 1e-14);
    CHECK(std::abs(ev(1).real()) <= 1e-14);
    CHECK(std::abs(ev(0) * ev(1) - 1.0) <= 1e-14);
}

TEST_CASE("dispersion matches the trace") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int n = 0; n < 200; ++n) {
        const double t1 = u(rng), t2 = u(rng), k = u(rng);
        const double cos_omega = std::cos(t1) * std::cos(t2) * std::cos(k) - std::sin(t1) * std::sin(t2);
        CHECK(std::abs(bloch_matrix(t1, t2, k).trace() / 2.0 - cos_omega) <= 1e-14);
        CHECK(std::abs(std::cos(eigenphase(t1, t2, k)) - cos_omega) <= 1e-12);
    }
}

TEST_CASE("chiral operator") {
    for (double t2 : {kPi / 4, 3 * kPi / 4, 0.3, -2.0}) {
        const auto g = ChiralOperator::for_theta2(t2).matrix;
        CHECK((g * g - Eigen::Matrix2cd::Identity()).norm() <= 1e-14);
        CHECK((g - g.adjoint()).norm() <= 1e-15);
    }
    CHECK(check_chiral_symmetry(0.0, kPi / 4, 64) <= 1e-12);
    CHECK(check_chiral_symmetry(kPi / 3, 3 * kPi / 4, 64) <= 1e-12);
    CHECK_THROWS_AS(check_chiral_symmetry(0.0, 0.1, 1), InvalidArgument);
}

TEST_CASE("chiral_determinant examples") {
    CHECK(std::abs(chiral_determinant(0.0, kPi / 4, 0.0) - Complex{std::sqrt(0.5), 0.0}) <= 1e-15);
    for (double k : {0.0, 1.0, 2.5}) {
        CHECK(std::abs(chiral_determinant(kPi / 2, 0.7, k) - std::cos(0.7)) <= 1e-15);
    }
    CHECK(std::abs(chiral_determinant(0.0, 0.0, kPi / 2) - (-I)) <= 1e-15);
    CHECK(std::abs(chiral_determinant(0.0, 0.0, 0.0)) == 0.0);
}

TEST_CASE("chiral block reproduces c(k)") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int n = 0; n < 200; ++n) {
        const double t1 = u(rng), t2 = u(rng), k = u(rng);
        CHECK(std::abs(chiral_block(t1, t2, k) - chiral_determinant(t1, t2, k)) <= 1e-13);
    }
    for (double t2 : {kPi / 4, 3 * kPi / 4, 1.0}) {
        const auto u2 = chiral_basis(t2);
        CHECK((u2.adjoint() * u2 - Eigen::Matrix2cd::Identity()).norm() <= 1e-14);
        const Eigen::Matrix2cd d = u2.adjoint() * ChiralOperator::for_theta2(t2).matrix * u2;
        CHECK(std::abs(d(0, 0) + 1.0) <= 1e-14);
        CHECK(std::abs(d(1, 1) - 1.0) <= 1e-14);
    }
}

TEST_CASE("winding_number examples") {
    CHECK(winding_number(0.0, kPi / 4) == -1);
    CHECK(winding_number(0.0, 3 * kPi / 4) == -1);
    CHECK(winding_number(kPi / 2, kPi / 4) == 0);
    CHECK_THROWS_AS(winding_number(0.0, 0.0), GapClosed);
    CHECK_THROWS_AS(winding_number(0.0, kPi / 4, 16), InvalidArgument);
}

TEST_CASE("winding agrees with the ellipse oracle") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    int checked = 0;
    for (int n = 0; n < 400; ++n) {
        const double t1 = u(rng), t2 = u(rng);
        const auto expected = oracle::ellipse_winding(t1, t2);
        const SymmetryIndexReport r = symmetry_index(t1, t2);
        if (!expected) continue;
        REQUIRE(r.gapped);
        REQUIRE(r.winding.has_value());
        CHECK(*r.winding == *expected);
        ++checked;
    }
    CHECK(checked > 390);
}

TEST_CASE("gap closures sit where the oracle says") {
    // theta1 +- theta2 in pi Z closes the chiral gap.
    for (double t1 : {0.3, -1.2, 2.0}) {
        const SymmetryIndexReport r = symmetry_index(t1, t1);
        CHECK_FALSE(r.gapped);
        CHECK_FALSE(r.winding.has_value());
        CHECK(std::min(r.gap_at_plus1, r.gap_at_minus1) <= 1e-6);
    }
    const SymmetryIndexReport corner = symmetry_index(kPi / 2, kPi / 2);
    CHECK_FALSE(corner.gapped);
    // On the theta2 = 0 line only theta1 in {0, +-pi} is gapless.
    CHECK_FALSE(symmetry_index(0.0, 0.0).gapped);
    CHECK_FALSE(symmetry_index(kPi, 0.0).gapped);
    CHECK(symmetry_index(1.0, 0.0).gapped);
    CHECK(*symmetry_index(1.0, 0.0).winding == 0);
}

TEST_CASE("Setting bulk gaps") {
    for (double t2 : {kPi / 4, 3 * kPi / 4}) {
        const SymmetryIndexReport r = symmetry_index(0.0, t2);
        CHECK(r.gapped);
        CHECK(r.gap_at_plus1 == doctest::Approx(kPi / 4).epsilon(1e-9));
        CHECK(r.gap_at_minus1 == doctest::Approx(kPi / 4).epsilon(1e-9));
    }
}

TEST_CASE("phase_diagram") {
    PhaseGrid g;
    g.theta1_min = -0.1;
    g.theta1_max = 0.1;
    g.theta2_min = kPi / 4 - 0.1;
    g.theta2_max = kPi / 4 + 0.1;
    g.resolution = 3;
    const auto cells = phase_diagram(g);
    REQUIRE(cells.size() == 9);
    CHECK(cells[4].theta1 == doctest::Approx(0.0));
    CHECK(cells[4].theta2 == doctest::Approx(kPi / 4));
    CHECK(cells[4].winding == -1);

    PhaseGrid line;
    line.theta2_min = -0.5;
    line.theta2_max = 0.5;
    line.theta1_min = -kPi;
    line.theta1_max = kPi;
    line.resolution = 5;
    for (const auto& c : phase_diagram(line)) {
        if (c.theta2 == 0.0) CHECK(c.gapped == (std::abs(std::sin(c.theta1)) > 1e-9));
        if (c.gapped) CHECK(c.winding.has_value());
    }

    g.resolution = 1;
    CHECK_THROWS_AS(phase_diagram(g), InvalidArgument);
}

TEST_CASE("default grid size") {
    PhaseGrid g;
    g.k_samples = 64;
    CHECK(phase_diagram(g).size() == 4096);
    CHECK(g.theta1_at(0) == -kPi);
    CHECK(g.theta1_at(63) == kPi);
}
