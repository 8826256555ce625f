#pragma once

// Flat "key = value" run configuration. Lines starting with '#' are
// comments. Angles are given in units of pi. Unknown keys are rejected.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/distillation.hpp"
#include "qwalk/interferometry.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/topology.hpp"

namespace qwalk {

/// Raw key/value pairs; a later assignment to a key replaces the earlier one.
struct ConfigValues {
    std::map<std::string, std::string> entries;

    /// Parses `text`; `origin` is used in error messages. Throws ConfigError.
    static ConfigValues parse(std::string_view text, std::string_view origin = "<config>");
    static ConfigValues load(const std::string& path);

    /// Applies one "key=value" override, replacing any earlier value.
    void set(std::string_view assignment);
    void set(const std::string& key, const std::string& value);
};

struct PhaseDiagramConfig {
    PhaseGrid grid;
    std::string out = "-";
};

struct EdgeStateConfig {
    std::vector<Setting> settings{Setting::A, Setting::B};
    std::size_t cutoff = 60;
    std::string out = "-";
};

struct DistillConfig {
    std::size_t step_min = 4;
    std::size_t step_max = 10;
    std::set<Position> window = {0, 2, 4};
    std::optional<std::string> state_out;  // distilled state of both settings at step_max
    std::string out = "-";
};

struct InterfereConfig {
    std::vector<Setting> settings{Setting::A, Setting::B};
    std::vector<int> steps{6, 7, 8};
    std::vector<int> positions{0, 1, 2};
    std::vector<Polarization> polarizations{Polarization::H, Polarization::V};
    double split_theta = -kPi / 4;
    bool monte_carlo = false;
    MonteCarloConfig mc;
    std::optional<std::uint64_t> seed;
    std::string out = "-";
};

struct EvolutionConfig {
    Setting setting = Setting::A;
    std::size_t roundtrips = 12;
    LossModel loss;
    /// When set, record the routed interferometer run for this read-out
    /// instead of the plain walk (roundtrips is then implied by the plan).
    bool protocol = false;
    int target_step = 6;
    int target_position = 0;
    Polarization target_polarization = Polarization::H;
    std::string out = "-";
};

PhaseDiagramConfig phase_diagram_config(const ConfigValues& values);
EdgeStateConfig edge_state_config(const ConfigValues& values);
DistillConfig distill_config(const ConfigValues& values);
InterfereConfig interfere_config(const ConfigValues& values);
EvolutionConfig evolution_config(const ConfigValues& values);

}  // namespace qwalk
