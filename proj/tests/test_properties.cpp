#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "qwalk/distillation.hpp"
#include "qwalk/edge_state.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/interferometry.hpp"
#include "qwalk/report_io.hpp"
#include "qwalk/topology.hpp"

using namespace qwalk;

namespace {

WalkerState random_state(std::mt19937_64& rng, int sites, bool even_only) {
    std::normal_distribution<double> g;
    WalkerState s;
    for (int i = 0; i < sites; ++i) {
        const Position x = even_only ? 2 * (i - sites / 2) : i - sites / 2;
        s.amplitudes[x] = {{g(rng), g(rng)}, {g(rng), g(rng)}};
    }
    return renormalize(s);
}

CoinSchedule random_schedule(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-kPi, kPi);
    CoinSchedule s = CoinSchedule::uniform(u(rng), u(rng));
    for (Position x = -7; x <= 7; x += 2) s.theta1_map[x] = u(rng);
    return s;
}

}  // namespace

TEST_CASE("unitarity of walk_step") {
    std::mt19937_64 rng(100);
    for (int n = 0; n < 100; ++n) {
        const CoinSchedule sched = n % 3 == 0 ? CoinSchedule::for_setting(n % 2 ? Setting::A : Setting::B)
                                              : random_schedule(rng);
        const WalkerState psi = random_state(rng, 12, false);
        CHECK(std::abs(walk_step(psi, sched).norm2() - 1.0) <= 1e-12);
    }
}

TEST_CASE("locality of walk_step") {
    std::mt19937_64 rng(101);
    for (int n = 0; n < 50; ++n) {
        const WalkerState psi = random_state(rng, 5, false);
        const WalkerState out = walk_step(psi, random_schedule(rng));
        const Position lo = psi.amplitudes.begin()->first, hi = psi.amplitudes.rbegin()->first;
        for (const auto& [x, s] : out.amplitudes) {
            CHECK(x >= lo - 2);
            CHECK(x <= hi + 2);
        }
    }
}

TEST_CASE("linearity of walk_step") {
    std::mt19937_64 rng(102);
    std::normal_distribution<double> g;
    for (int n = 0; n < 50; ++n) {
        const CoinSchedule sched = random_schedule(rng);
        const WalkerState psi = random_state(rng, 8, false), phi = random_state(rng, 8, false);
        const Complex a{g(rng), g(rng)}, b{g(rng), g(rng)};
        const WalkerState lhs = walk_step(combine(a, psi, b, phi), sched);
        const WalkerState rhs = combine(a, walk_step(psi, sched), b, walk_step(phi, sched));
        CHECK(distance(lhs, rhs) <= 1e-12);
    }
}

TEST_CASE("sub-lattice parity") {
    std::mt19937_64 rng(103);
    for (int n = 0; n < 20; ++n) {
        const CoinSchedule sched = random_schedule(rng);
        WalkerState s = random_state(rng, 6, true);
        for (int r = 1; r <= 30; ++r) {
            s = advance_roundtrip(s, sched);
            for (const auto& [x, sp] : s.amplitudes) {
                CHECK(((x % 2 + 2) % 2) == r % 2);
            }
        }
    }
}

TEST_CASE("decoupling: no leakage across the boundary") {
    std::mt19937_64 rng(104);
    for (Setting setting : {Setting::A, Setting::B}) {
        const CoinSchedule sched = CoinSchedule::for_setting(setting);
        for (int n = 0; n < 10; ++n) {
            WalkerState s = random_state(rng, 6, true);
            std::erase_if(s.amplitudes, [](const auto& e) { return e.first < 0; });
            s = renormalize(s);
            for (int step = 0; step < 60; ++step) {
                s = walk_step(s, sched);
                double leak = 0.0;
                for (const auto& [x, sp] : s.amplitudes) {
                    if (x <= -2) leak = std::max(leak, std::sqrt(sp.norm2()));
                }
                CHECK(leak <= 1e-14);
            }
        }
    }
}

TEST_CASE("edge state: exponential decay slope") {
    const double slope = 2.0 * std::log(std::abs(1.0 - std::sqrt(2.0)));
    for (Setting s : {Setting::A, Setting::B}) {
        const auto [spec, phi] = edge_state(s);
        for (int n = 0; n < 30; ++n) {
            const double d = std::log(phi.at(2 * n + 2).norm2()) - std::log(phi.at(2 * n).norm2());
            CHECK(std::abs(d - slope) <= 1e-9);
        }
    }
}

TEST_CASE("edge state: chirality and two-step invariance") {
    for (Setting s : {Setting::A, Setting::B}) {
        const auto [spec, phi] = edge_state(s);
        CHECK(distance(apply_chiral(phi, spec.theta2), scaled(Complex{-1.0}, phi)) <= 1e-12);
        const CoinSchedule sched = CoinSchedule::for_setting(s);
        CHECK(distance(walk_step(walk_step(phi, sched), sched), phi) <= 1e-10);
    }
}

TEST_CASE("bloch matrix unitarity and spectrum symmetry") {
    std::mt19937_64 rng(105);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int n = 0; n < 1000; ++n) {
        const double t1 = u(rng), t2 = u(rng), k = u(rng);
        const BlochMatrix w = bloch_matrix(t1, t2, k);
        CHECK((w * w.adjoint() - BlochMatrix::Identity()).norm() <= 1e-13);
        Eigen::ComplexEigenSolver<BlochMatrix> es(w);
        const Complex l0 = es.eigenvalues()(0), l1 = es.eigenvalues()(1);
        // Eigenvalues come as a conjugate pair e^{+-i omega}.
        const double pair = std::min(std::abs(l0 - std::conj(l1)), std::abs(l0 - std::conj(l0)) + std::abs(l1 - std::conj(l1)));
        CHECK(pair <= 1e-12);
    }
}

TEST_CASE("chiral symmetry for random angles") {
    std::mt19937_64 rng(106);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int n = 0; n < 50; ++n) CHECK(check_chiral_symmetry(u(rng), u(rng), 256) <= 1e-12);
}

TEST_CASE("winding refinement invariance") {
    std::mt19937_64 rng(107);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    int tested = 0;
    while (tested < 60) {
        const double t1 = u(rng), t2 = u(rng);
        double min_c = 1e300;
        for (int j = 0; j < 4096; ++j) {
            min_c = std::min(min_c, std::abs(chiral_determinant(t1, t2, 2 * kPi * j / 4096)));
        }
        // 64 samples resolve any cell with min |c| above 2 * 2pi/64.
        if (min_c < 0.2) continue;
        const int coarse = winding_number(t1, t2, 64);
        for (std::size_t n : {128u, 256u, 1024u, 4096u}) CHECK(winding_number(t1, t2, n) == coarse);
        ++tested;
    }
}

TEST_CASE("gap continuity on a fine grid") {
    PhaseGrid g;
    g.resolution = 256;
    g.k_samples = 64;
    const auto cells = phase_diagram(g);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.resolution; ++i) {
        for (std::size_t j = 0; j < g.resolution; ++j) {
            const auto& c = cells[i * g.resolution + j];
            if (j + 1 < g.resolution) {
                const auto& r = cells[i * g.resolution + j + 1];
                worst = std::max({worst, std::abs(c.gap_at_plus1 - r.gap_at_plus1), std::abs(c.gap_at_minus1 - r.gap_at_minus1)});
            }
            if (i + 1 < g.resolution) {
                const auto& d = cells[(i + 1) * g.resolution + j];
                worst = std::max({worst, std::abs(c.gap_at_plus1 - d.gap_at_plus1), std::abs(c.gap_at_minus1 - d.gap_at_minus1)});
            }
        }
    }
    CHECK(worst < 0.1);
}

TEST_CASE("report round-trip for random values") {
    std::mt19937_64 rng(108);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<EvolutionRow> rows;
    for (int i = 0; i < 500; ++i) {
        rows.push_back({static_cast<std::uint64_t>(i), static_cast<Position>(i - 250),
                        {std::abs(u(rng)) * std::pow(10.0, -i % 30), std::abs(u(rng))}});
    }
    const auto back = parse_evolution_table(parse_csv(to_csv(evolution_table(rows))));
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(back[i].intensity == rows[i].intensity);
}

TEST_CASE("determinism of Monte-Carlo tables") {
    MonteCarloConfig c;
    c.samples = 30;
    c.seed = 99;
    std::vector<InterferenceRow> a, b;
    for (int pos = 0; pos <= 1; ++pos) {
        const RoutingPlan p = make_plan(Setting::B, 7, pos, Polarization::V);
        const MonteCarloResult ra = monte_carlo(p, c), rb = monte_carlo(p, c);
        a.push_back({p.setting, p.target_step, p.target_position, p.target_polarization, ra.outcome, ra.readable});
        b.push_back({p.setting, p.target_step, p.target_position, p.target_polarization, rb.outcome, rb.readable});
    }
    CHECK(to_csv(interference_table(a)) == to_csv(interference_table(b)));
}
