#pragma once

// Closed-form edge eigenfunctions of the decoupled walks (Settings A and B)
// and their numerical verification.

#include <cstddef>
#include <utility>
#include <vector>

#include "qwalk/lattice.hpp"

namespace qwalk {

inline constexpr std::size_t kDefaultEdgeCutoff = 60;

struct EdgeStateSpec {
    Setting setting = Setting::A;
    int eigenvalue = -1;  // lambda
    int chirality = -1;   // chi
    double theta1_decoupling = 0.0;
    double theta2 = 0.0;
    double decay = 0.0;               // mu, ratio of amplitudes on successive even sites
    double boundary_amplitude = 1.0;  // a
    double normalization = 0.0;       // c
    Spinor spinor;                    // (i cos theta2, 1 - sin theta2)
};

/// mu(lambda, chi) = (1 + chi sin theta2) / (lambda cos theta2).
/// Throws SingularCoin when |cos theta2| <= 1e-12.
double decay_rate(int lambda, int chi, double theta2);

/// Un-normalised gamma0 eigenvector (i cos theta2, -(sin theta2 + chi)).
Spinor chiral_eigenvector(double theta2, int chi);

/// Spec (eigenvalue, chirality, decay, ...) of the right edge state of a setting.
EdgeStateSpec edge_state_spec(Setting setting);

/// Normalised right edge state on the even sites 0, 2, ..., 2*cutoff.
/// Requires |mu|^cutoff < 1e-14.
std::pair<EdgeStateSpec, WalkerState> edge_state(Setting setting, std::size_t cutoff = kDefaultEdgeCutoff);

/// || W phi - lambda phi || for the setting's decoupled walk.
double verify_eigen(Setting setting, std::size_t cutoff = kDefaultEdgeCutoff);
double verify_eigen(Setting setting, int lambda, std::size_t cutoff = kDefaultEdgeCutoff);

/// Both boundary equations for a, evaluated at (a, lambda, theta1, theta2).
std::pair<double, double> boundary_residuals(double a, int lambda, double theta1, double theta2);

/// Cell-wise gamma0 applied to every site of `state`.
WalkerState apply_chiral(const WalkerState& state, double theta2);

/// Dense matrix of W restricted to the right half-chain on `sites` even sites
/// (x = 0, 2, ..., 2(sites-1)); ordering is (x, H), (x, V).
Eigen::MatrixXcd half_chain_matrix(Setting setting, std::size_t sites);

struct HalfChainEigenpair {
    std::complex<double> eigenvalue;
    WalkerState state;  // normalised eigenvector on the even sites
};

/// Eigenpairs of the truncated half-chain whose eigenvalue has modulus within
/// `tolerance` of 1. The truncation leaks amplitude at the far end, so bulk
/// modes fall strictly inside the unit disk and only edge states remain.
std::vector<HalfChainEigenpair> unimodular_eigenpairs(Setting setting, std::size_t sites = 30,
                                                       double tolerance = 1e-8);

}  // namespace qwalk
