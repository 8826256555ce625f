#pragma once

// Subcommand drivers: each takes its typed configuration and returns the
// in-memory report; run_command also renders and writes the outputs.

#include <string_view>
#include <vector>

#include "qwalk/config.hpp"
#include "qwalk/report_io.hpp"

namespace qwalk {

std::vector<SymmetryIndexReport> cmd_phase_diagram(const PhaseDiagramConfig& config);

std::vector<EdgeStateReport> cmd_edge_state(const EdgeStateConfig& config);

struct DistillReport {
    std::vector<SimilarityRow> rows;
    std::vector<StateRow> final_state;  // both settings at step_max, renormalised on the window
};

DistillReport cmd_distill(const DistillConfig& config);

/// Requested subset of the 36 read-outs, in setting/step/position/polarization
/// order. Rows whose walker component falls below the noise floor (or, with
/// Monte-Carlo, below its own error bar) are marked unreadable.
std::vector<InterferenceRow> cmd_interfere(const InterfereConfig& config);

std::vector<EvolutionRow> cmd_evolution(const EvolutionConfig& config);

/// Parses the configuration for `command`, runs it and writes its outputs.
/// Throws ConfigError for an unknown command.
void run_command(std::string_view command, const ConfigValues& values);

}  // namespace qwalk
