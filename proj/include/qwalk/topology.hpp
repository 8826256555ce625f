#pragma once

// Momentum-space analysis of the translation-invariant split-step walk:
// Bloch matrix, chiral symmetry, gaps at +-1, winding number and the
// (theta1, theta2) phase diagram.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "qwalk/lattice.hpp"

namespace qwalk {

using BlochMatrix = Eigen::Matrix2cd;

/// Minimum |c(k)| below which the bulk counts as gap-closed.
inline constexpr double kGapTolerance = 1e-9;
/// Largest accepted distance between the raw winding and its rounded value.
inline constexpr double kWindingResidual = 1e-6;

/// S_down(k) C(theta1) S_up(k) C(theta2) with S_up = diag(e^{-ik}, 1) and
/// S_down = diag(1, e^{ik}).
BlochMatrix bloch_matrix(double theta1, double theta2, double k);

/// Cell-wise chiral symmetry gamma_0(theta2); Hermitian, unitary, squares to 1.
struct ChiralOperator {
    double theta2 = 0.0;
    Eigen::Matrix2cd matrix;

    static ChiralOperator for_theta2(double theta2);
};

/// max_k || gamma0 W(k) gamma0^dagger - W(k)^dagger ||_F over `k_samples`
/// uniformly spaced momenta in [0, 2pi).
double check_chiral_symmetry(double theta1, double theta2, std::size_t k_samples);

/// c(k) = sin(t1)cos(t2) + cos(t1)sin(t2)cos(k) - i cos(t1)sin(k).
std::complex<double> chiral_determinant(double theta1, double theta2, double k);

/// Unitary whose columns are the gamma0 eigenvectors for chirality -1 and +1
/// (in that order), built as C(theta2/2)^dagger times the sigma_y eigenbasis.
Eigen::Matrix2cd chiral_basis(double theta2);

/// Upper-right entry of W(k) expressed in `chiral_basis`. Reproduces c(k)
/// without going through its closed form.
std::complex<double> chiral_block(double theta1, double theta2, double k);

/// Eigenphases omega in [0, pi] of W(k); the spectrum is {e^{+i omega}, e^{-i omega}}.
double eigenphase(double theta1, double theta2, double k);

/// Raw winding of c(k) over [0, 2pi), obtained by unwrapping its argument on
/// a uniform grid. Throws GapClosed when min |c| <= kGapTolerance.
double raw_winding(double theta1, double theta2, std::size_t k_samples);

/// Integer winding number of c(k). Requires k_samples >= 64. Throws
/// GapClosed or NonConvergence.
int winding_number(double theta1, double theta2, std::size_t k_samples = 256);

struct SymmetryIndexReport {
    double theta1 = 0.0;
    double theta2 = 0.0;
    std::optional<int> winding;  // only set for gapped cells
    double gap_at_plus1 = 0.0;
    double gap_at_minus1 = 0.0;
    bool gapped = false;
};

SymmetryIndexReport symmetry_index(double theta1, double theta2, std::size_t k_samples = 256);

struct PhaseGrid {
    double theta1_min = -kPi;
    double theta1_max = kPi;
    double theta2_min = -kPi;
    double theta2_max = kPi;
    std::size_t resolution = 64;  // points per axis, endpoints included
    std::size_t k_samples = 256;

    double theta1_at(std::size_t i) const;
    double theta2_at(std::size_t j) const;
};

/// Row-major over theta1 (outer) and theta2 (inner).
std::vector<SymmetryIndexReport> phase_diagram(const PhaseGrid& grid);

}  // namespace qwalk
