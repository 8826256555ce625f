#include "qwalk/commands.hpp"

#include <string>

#include "qwalk/edge_state.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

std::vector<SymmetryIndexReport> cmd_phase_diagram(const PhaseDiagramConfig& config) {
    return phase_diagram(config.grid);
}

std::vector<EdgeStateReport> cmd_edge_state(const EdgeStateConfig& config) {
    std::vector<EdgeStateReport> reports;
    for (Setting setting : config.settings) {
        auto [spec, state] = edge_state(setting, config.cutoff);
        const double residual = verify_eigen(setting, spec.eigenvalue, config.cutoff);
        reports.push_back({spec, std::move(state), residual});
    }
    return reports;
}

DistillReport cmd_distill(const DistillConfig& config) {
    DistillReport report;
    for (std::size_t s = config.step_min; s <= config.step_max; ++s) {
        report.rows.push_back({s, distilled_similarity(Setting::A, s, config.window),
                               distilled_similarity(Setting::B, s, config.window)});
    }
    for (Setting setting : {Setting::A, Setting::B}) {
        for (const auto& [x, a] : distill(setting, config.step_max, config.window).amplitudes) {
            report.final_state.push_back({setting, x, a});
        }
    }
    return report;
}

std::vector<InterferenceRow> cmd_interfere(const InterfereConfig& config) {
    std::vector<InterferenceRow> rows;
    for (Setting setting : config.settings) {
        for (int step : config.steps) {
            for (int pos : config.positions) {
                for (Polarization pol : config.polarizations) {
                    const RoutingPlan plan = make_plan(setting, step, pos, pol, config.split_theta);
                    InterferenceRow row{setting, step, pos, pol, {}, false};
                    if (config.monte_carlo) {
                        const MonteCarloResult mc = monte_carlo(plan, config.mc);
                        row.outcome = mc.outcome;
                        row.readable = mc.readable;
                    } else {
                        row.outcome = run_protocol(plan, nullptr, config.mc.noise_floor);
                        row.readable = row.outcome.m.has_value();
                    }
                    rows.push_back(row);
                }
            }
        }
    }
    return rows;
}

std::vector<EvolutionRow> cmd_evolution(const EvolutionConfig& config) {
    if (config.protocol) {
        const RoutingPlan plan =
            make_plan(config.setting, config.target_step, config.target_position, config.target_polarization);
        return protocol_record(plan, config.loss);
    }
    return evolution_record(config.setting, config.roundtrips, config.loss);
}

void run_command(std::string_view command, const ConfigValues& values) {
    if (command == "phase-diagram") {
        const auto config = phase_diagram_config(values);
        write_output(config.out, to_csv(phase_table(cmd_phase_diagram(config))));
    } else if (command == "edge-state") {
        const auto config = edge_state_config(values);
        write_output(config.out, edge_state_json(cmd_edge_state(config)));
    } else if (command == "distill") {
        const auto config = distill_config(values);
        const DistillReport report = cmd_distill(config);
        write_output(config.out, to_csv(similarity_table(report.rows)));
        if (config.state_out) write_output(*config.state_out, to_csv(state_table(report.final_state)));
    } else if (command == "interfere") {
        const auto config = interfere_config(values);
        write_output(config.out, to_csv(interference_table(cmd_interfere(config))));
    } else if (command == "evolution") {
        const auto config = evolution_config(values);
        write_output(config.out, to_csv(evolution_table(cmd_evolution(config))));
    } else {
        throw ConfigError("unknown command '" + std::string(command) + "'");
    }
}

}  // namespace qwalk
