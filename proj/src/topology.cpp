#include "qwalk/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

constexpr std::size_t kMaxRefinedSamples = 1u << 16;

double k_at(std::size_t j, std::size_t n) { return 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n); }

void require_finite(std::initializer_list<double> values, const char* op) {
    for (double v : values) {
        if (!std::isfinite(v)) throw InvalidArgument(std::string(op) + ": non-finite argument");
    }
}

// Upper bound on |dc/dk|, used to certify that no winding hides between samples.
double lipschitz_bound(double theta1, double theta2) {
    return std::abs(std::cos(theta1)) * (std::abs(std::sin(theta2)) + 1.0);
}

}  // namespace

BlochMatrix bloch_matrix(double theta1, double theta2, double k) {
    require_finite({theta1, theta2, k}, "bloch_matrix");
    const std::complex<double> phase = std::polar(1.0, k);
    BlochMatrix shift_up = BlochMatrix::Zero();
    shift_up(0, 0) = std::conj(phase);
    shift_up(1, 1) = 1.0;
    BlochMatrix shift_down = BlochMatrix::Zero();
    shift_down(0, 0) = 1.0;
    shift_down(1, 1) = phase;
    return shift_down * coin_matrix(theta1) * shift_up * coin_matrix(theta2);
}

ChiralOperator ChiralOperator::for_theta2(double theta2) {
    require_finite({theta2}, "ChiralOperator");
    const double s = std::sin(theta2);
    const double c = std::cos(theta2);
    ChiralOperator op;
    op.theta2 = theta2;
    op.matrix << -s, std::complex<double>(0.0, -c), std::complex<double>(0.0, c), s;
    return op;
}

double check_chiral_symmetry(double theta1, double theta2, std::size_t k_samples) {
    if (k_samples < 2) throw InvalidArgument("check_chiral_symmetry: k_samples must be >= 2");
    const Eigen::Matrix2cd gamma = ChiralOperator::for_theta2(theta2).matrix;
    double worst = 0.0;
    for (std::size_t j = 0; j < k_samples; ++j) {
        const BlochMatrix w = bloch_matrix(theta1, theta2, k_at(j, k_samples));
        const double residual = (gamma * w * gamma.adjoint() - w.adjoint()).norm();
        worst = std::max(worst, residual);
    }
    return worst;
}

std::complex<double> chiral_determinant(double theta1, double theta2, double k) {
    require_finite({theta1, theta2, k}, "chiral_determinant");
    return {std::sin(theta1) * std::cos(theta2) + std::cos(theta1) * std::sin(theta2) * std::cos(k),
            -std::cos(theta1) * std::sin(k)};
}

Eigen::Matrix2cd chiral_basis(double theta2) {
    // sigma_y eigenvectors: (1, -i)/sqrt2 for -1, (1, i)/sqrt2 for +1.
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd sigma_y_basis;
    sigma_y_basis << r, r, std::complex<double>(0.0, -r), std::complex<double>(0.0, r);
    return coin_matrix(theta2 / 2).adjoint() * sigma_y_basis;
}

std::complex<double> chiral_block(double theta1, double theta2, double k) {
    const Eigen::Matrix2cd u = chiral_basis(theta2);
    const Eigen::Matrix2cd w = u.adjoint() * bloch_matrix(theta1, theta2, k) * u;
    return w(0, 1);
}

double eigenphase(double theta1, double theta2, double k) {
    const BlochMatrix w = bloch_matrix(theta1, theta2, k);
    const std::complex<double> tr = w.trace();
    const std::complex<double> det = w.determinant();
    const std::complex<double> disc = std::sqrt(tr * tr - 4.0 * det);
    const std::complex<double> lambda = 0.5 * (tr + disc);
    return std::abs(std::arg(lambda));
}

double raw_winding(double theta1, double theta2, std::size_t k_samples) {
    require_finite({theta1, theta2}, "winding_number");
    if (k_samples < 2) throw InvalidArgument("winding_number: k_samples must be >= 2");
    std::vector<std::complex<double>> values(k_samples);
    double min_abs = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k_samples; ++j) {
        values[j] = chiral_determinant(theta1, theta2, k_at(j, k_samples));
        min_abs = std::min(min_abs, std::abs(values[j]));
    }
    if (min_abs <= kGapTolerance) {
        throw GapClosed("winding_number: gap closed at theta1=" + std::to_string(theta1) +
                        ", theta2=" + std::to_string(theta2) + " (min |c(k)| = " + std::to_string(min_abs) + ")");
    }
    const double dk = 2.0 * kPi / static_cast<double>(k_samples);
    if (lipschitz_bound(theta1, theta2) * dk >= min_abs) {
        throw NonConvergence("winding_number: " + std::to_string(k_samples) +
                             " k-samples cannot resolve c(k) near its minimum; increase k_samples");
    }
    double total = 0.0;
    for (std::size_t j = 0; j < k_samples; ++j) {
        const auto& next = values[(j + 1) % k_samples];
        total += std::arg(next / values[j]);
    }
    return total / (2.0 * kPi);
}

int winding_number(double theta1, double theta2, std::size_t k_samples) {
    if (k_samples < 64) throw InvalidArgument("winding_number: k_samples must be >= 64");
    const double raw = raw_winding(theta1, theta2, k_samples);
    const double rounded = std::round(raw);
    if (std::abs(raw - rounded) >= kWindingResidual) {
        throw NonConvergence("winding_number: raw winding " + std::to_string(raw) + " is not an integer");
    }
    return static_cast<int>(rounded);
}

SymmetryIndexReport symmetry_index(double theta1, double theta2, std::size_t k_samples) {
    if (k_samples < 64) throw InvalidArgument("symmetry_index: k_samples must be >= 64");
    SymmetryIndexReport report;
    report.theta1 = theta1;
    report.theta2 = theta2;
    report.gap_at_plus1 = kPi;
    report.gap_at_minus1 = kPi;
    double min_abs = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k_samples; ++j) {
        const double k = k_at(j, k_samples);
        const double omega = eigenphase(theta1, theta2, k);
        report.gap_at_plus1 = std::min(report.gap_at_plus1, omega);
        report.gap_at_minus1 = std::min(report.gap_at_minus1, kPi - omega);
        min_abs = std::min(min_abs, std::abs(chiral_determinant(theta1, theta2, k)));
    }
    report.gapped = min_abs > kGapTolerance;
    if (!report.gapped) return report;

    for (std::size_t n = k_samples; n <= kMaxRefinedSamples; n *= 2) {
        try {
            report.winding = winding_number(theta1, theta2, n);
            break;
        } catch (const NonConvergence&) {
        } catch (const GapClosed&) {
            // A finer grid found a zero the coarse one missed.
            report.gapped = false;
            break;
        }
    }
    return report;
}

double PhaseGrid::theta1_at(std::size_t i) const {
    return theta1_min + (theta1_max - theta1_min) * static_cast<double>(i) / static_cast<double>(resolution - 1);
}

double PhaseGrid::theta2_at(std::size_t j) const {
    return theta2_min + (theta2_max - theta2_min) * static_cast<double>(j) / static_cast<double>(resolution - 1);
}

std::vector<SymmetryIndexReport> phase_diagram(const PhaseGrid& grid) {
    if (grid.resolution < 2) throw InvalidArgument("phase_diagram: resolution must be >= 2 per axis");
    for (double v : {grid.theta1_min, grid.theta1_max, grid.theta2_min, grid.theta2_max}) {
        if (!std::isfinite(v)) throw InvalidArgument("phase_diagram: non-finite grid bound");
    }
    std::vector<SymmetryIndexReport> cells;
    cells.reserve(grid.resolution * grid.resolution);
    for (std::size_t i = 0; i < grid.resolution; ++i) {
        for (std::size_t j = 0; j < grid.resolution; ++j) {
            cells.push_back(symmetry_index(grid.theta1_at(i), grid.theta2_at(j), grid.k_samples));
        }
    }
    return cells;
}

}  // namespace qwalk
