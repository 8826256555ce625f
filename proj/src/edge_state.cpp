#include "qwalk/edge_state.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qwalk/errors.hpp"
#include "qwalk/topology.hpp"

namespace qwalk {

double decay_rate(int lambda, int chi, double theta2) {
    if ((lambda != 1 && lambda != -1) || (chi != 1 && chi != -1)) {
        throw InvalidArgument("decay_rate: lambda and chi must be +1 or -1");
    }
    if (!std::isfinite(theta2)) throw InvalidArgument("decay_rate: non-finite theta2");
    const double c = std::cos(theta2);
    if (std::abs(c) <= 1e-12) {
        throw SingularCoin("decay_rate: cos(theta2) vanishes, the exponential ansatz breaks down");
    }
    return (1.0 + chi * std::sin(theta2)) / (lambda * c);
}

Spinor chiral_eigenvector(double theta2, int chi) {
    if (chi != 1 && chi != -1) throw InvalidArgument("chiral_eigenvector: chi must be +1 or -1");
    if (!std::isfinite(theta2)) throw InvalidArgument("chiral_eigenvector: non-finite theta2");
    const Spinor phi{Complex{0.0, std::cos(theta2)}, Complex{-(std::sin(theta2) + chi), 0.0}};
    if (phi.norm2() < 1e-28) {
        throw ZeroVector("chiral_eigenvector: both components vanish at theta2=" + std::to_string(theta2));
    }
    return phi;
}

EdgeStateSpec edge_state_spec(Setting setting) {
    const CoinSchedule schedule = CoinSchedule::for_setting(setting);
    EdgeStateSpec spec;
    spec.setting = setting;
    spec.theta2 = schedule.bulk_theta2;
    spec.theta1_decoupling = schedule.theta1(-1);
    spec.chirality = -1;
    // Boundary equation a cos(theta2) (lambda + sin(theta1)) = 0 fixes lambda
    // by the sign of the decoupling angle.
    spec.eigenvalue = std::sin(spec.theta1_decoupling) > 0 ? -1 : 1;
    spec.decay = decay_rate(spec.eigenvalue, spec.chirality, spec.theta2);
    spec.boundary_amplitude = 1.0;
    spec.normalization = 1.0 / std::sqrt((1.0 + std::sqrt(2.0)) * (1.0 - std::sin(spec.theta2)));
    spec.spinor = {Complex{0.0, std::cos(spec.theta2)}, Complex{1.0 - std::sin(spec.theta2), 0.0}};
    return spec;
}

std::pair<EdgeStateSpec, WalkerState> edge_state(Setting setting, std::size_t cutoff) {
    EdgeStateSpec spec = edge_state_spec(setting);
    if (std::pow(std::abs(spec.decay), static_cast<double>(cutoff)) >= 1e-14) {
        throw InvalidArgument("edge_state: cutoff " + std::to_string(cutoff) + " too small for decay " +
                              std::to_string(spec.decay));
    }
    WalkerState state;
    double weight = spec.normalization;
    for (std::size_t n = 0; n <= cutoff; ++n) {
        state.amplitudes.emplace(static_cast<Position>(2 * n), Complex{weight} * spec.spinor);
        weight *= spec.decay;
    }
    return {spec, state};
}

double verify_eigen(Setting setting, std::size_t cutoff) {
    return verify_eigen(setting, edge_state_spec(setting).eigenvalue, cutoff);
}

double verify_eigen(Setting setting, int lambda, std::size_t cutoff) {
    const auto [spec, phi] = edge_state(setting, cutoff);
    const WalkerState evolved = walk_step(phi, CoinSchedule::for_setting(setting));
    return distance(evolved, scaled(Complex{static_cast<double>(lambda)}, phi));
}

std::pair<double, double> boundary_residuals(double a, int lambda, double theta1, double theta2) {
    return {a * std::cos(theta2) * (lambda + std::sin(theta1)), (a - 1.0) * (1.0 - std::sin(theta2)) * lambda};
}

WalkerState apply_chiral(const WalkerState& state, double theta2) {
    const Coin gamma = ChiralOperator::for_theta2(theta2).matrix;
    WalkerState out = state;
    for (auto& [x, s] : out.amplitudes) s = gamma * s;
    return out;
}

Eigen::MatrixXcd half_chain_matrix(Setting setting, std::size_t sites) {
    const CoinSchedule schedule = CoinSchedule::for_setting(setting);
    const auto dim = static_cast<Eigen::Index>(2 * sites);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t col = 0; col < 2 * sites; ++col) {
        const auto x = static_cast<Position>(2 * (col / 2));
        Spinor basis;
        (col % 2 == 0 ? basis.h : basis.v) = 1.0;
        const WalkerState image = walk_step(WalkerState::delta(x, basis), schedule);
        for (const auto& [y, s] : image.amplitudes) {
            if (y < 0 || y % 2 != 0 || y >= static_cast<Position>(2 * sites)) continue;
            const auto row = static_cast<Eigen::Index>(y);
            m(row, static_cast<Eigen::Index>(col)) = s.h;
            m(row + 1, static_cast<Eigen::Index>(col)) = s.v;
        }
    }
    return m;
}

std::vector<HalfChainEigenpair> unimodular_eigenpairs(Setting setting, std::size_t sites, double tolerance) {
    const Eigen::MatrixXcd m = half_chain_matrix(setting, sites);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) throw NonConvergence("unimodular_eigenpairs: eigensolver failed");
    std::vector<HalfChainEigenpair> pairs;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const std::complex<double> lambda = solver.eigenvalues()(i);
        if (std::abs(std::abs(lambda) - 1.0) > tolerance) continue;
        const Eigen::VectorXcd vec = solver.eigenvectors().col(i).normalized();
        WalkerState state;
        for (std::size_t n = 0; n < sites; ++n) {
            const auto r = static_cast<Eigen::Index>(2 * n);
            state.amplitudes.emplace(static_cast<Position>(2 * n), Spinor{vec(r), vec(r + 1)});
        }
        pairs.push_back({lambda, std::move(state)});
    }
    return pairs;
}

}  // namespace qwalk
