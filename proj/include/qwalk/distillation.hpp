#pragma once

// Approximate edge eigenstates prepared by evolving a localized input,
// cutting out the boundary window and renormalising; scored with the
// Bhattacharyya-type similarity of intensity distributions.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "qwalk/lattice.hpp"

namespace qwalk {

struct SiteIntensity {
    double h = 0.0;
    double v = 0.0;

    double total() const { return h + v; }
    friend bool operator==(const SiteIntensity&, const SiteIntensity&) = default;
};

using IntensityTable = std::map<Position, SiteIntensity>;

/// The three innermost even sites of the right half-chain.
std::set<Position> default_window();

IntensityTable intensities(const WalkerState& state);

/// Intensities on `window`, scaled to sum to one.
IntensityTable window_intensities(const WalkerState& state, const std::set<Position>& window);

/// H-polarised delta at x = 0 evolved for `steps` full steps of the setting's
/// decoupled walk (no restriction).
WalkerState evolve_from_boundary(Setting setting, std::size_t steps);

/// evolve_from_boundary, restricted to `window` and renormalised.
WalkerState distill(Setting setting, std::size_t steps, const std::set<Position>& window = default_window());

/// d = |sum_x sqrt(P_H^theo P_H^exp) + sum_x sqrt(P_V^theo P_V^exp)|.
/// Both tables must be non-negative and sum to 1 within 1e-9.
double similarity(const IntensityTable& p_exp, const IntensityTable& p_theo);

/// Similarity of the distilled state against the analytic edge state, both
/// renormalised on `window`.
double distilled_similarity(Setting setting, std::size_t steps, const std::set<Position>& window = default_window());

struct LossModel {
    double survival = 1.0;     // intensity fraction kept per roundtrip
    double outcoupling = 1.0;  // fraction routed to the detectors when recording
};

struct EvolutionRow {
    std::uint64_t roundtrip = 0;
    Position position = 0;
    SiteIntensity intensity;
};

inline constexpr std::size_t kMaxRecordedRoundtrips = 64;

/// Per-roundtrip intensities (roundtrips 0..`roundtrips`) of the boundary
/// input under the setting's walk, scaled by outcoupling * survival^r.
std::vector<EvolutionRow> evolution_record(Setting setting, std::size_t roundtrips, const LossModel& loss = {});

}  // namespace qwalk
