#include "qwalk/distillation.hpp"

#include <cmath>
#include <string>

#include "qwalk/edge_state.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

double table_total(const IntensityTable& table) {
    double total = 0.0;
    for (const auto& [x, p] : table) total += p.total();
    return total;
}

void require_distribution(const IntensityTable& table, const char* name) {
    for (const auto& [x, p] : table) {
        if (!(p.h >= 0.0) || !(p.v >= 0.0) || !std::isfinite(p.h) || !std::isfinite(p.v)) {
            throw InvalidArgument(std::string("similarity: ") + name + " has a negative or non-finite entry at x=" +
                                  std::to_string(x));
        }
    }
    const double total = table_total(table);
    if (std::abs(total - 1.0) > 1e-9) {
        throw InvalidArgument(std::string("similarity: ") + name + " sums to " + std::to_string(total) +
                              ", expected 1");
    }
}

}  // namespace

std::set<Position> default_window() { return {0, 2, 4}; }

IntensityTable intensities(const WalkerState& state) {
    IntensityTable table;
    for (const auto& [x, s] : state.amplitudes) table[x] = {std::norm(s.h), std::norm(s.v)};
    return table;
}

IntensityTable window_intensities(const WalkerState& state, const std::set<Position>& window) {
    return intensities(renormalize(state, window));
}

WalkerState evolve_from_boundary(Setting setting, std::size_t steps) {
    const CoinSchedule schedule = CoinSchedule::for_setting(setting);
    WalkerState state = WalkerState::delta(0, {1.0, 0.0});
    for (std::size_t s = 0; s < steps; ++s) state = walk_step(state, schedule);
    return state;
}

WalkerState distill(Setting setting, std::size_t steps, const std::set<Position>& window) {
    if (steps < 1) throw InvalidArgument("distill: steps must be >= 1");
    return renormalize(evolve_from_boundary(setting, steps), window);
}

double similarity(const IntensityTable& p_exp, const IntensityTable& p_theo) {
    require_distribution(p_exp, "p_exp");
    require_distribution(p_theo, "p_theo");
    double d = 0.0;
    for (const auto& [x, e] : p_exp) {
        auto it = p_theo.find(x);
        if (it == p_theo.end()) continue;
        d += std::sqrt(it->second.h * e.h) + std::sqrt(it->second.v * e.v);
    }
    return std::abs(d);
}

double distilled_similarity(Setting setting, std::size_t steps, const std::set<Position>& window) {
    const auto [spec, ideal] = edge_state(setting);
    return similarity(intensities(distill(setting, steps, window)), window_intensities(ideal, window));
}

std::vector<EvolutionRow> evolution_record(Setting setting, std::size_t roundtrips, const LossModel& loss) {
    if (roundtrips > kMaxRecordedRoundtrips) {
        throw InvalidArgument("evolution_record: at most " + std::to_string(kMaxRecordedRoundtrips) +
                              " roundtrips are supported");
    }
    if (!(loss.survival >= 0.0 && loss.survival <= 1.0) || !(loss.outcoupling >= 0.0 && loss.outcoupling <= 1.0)) {
        throw InvalidArgument("evolution_record: survival and outcoupling must lie in [0, 1]");
    }
    const CoinSchedule schedule = CoinSchedule::for_setting(setting);
    WalkerState state = WalkerState::delta(0, {1.0, 0.0});
    std::vector<EvolutionRow> rows;
    double scale = loss.outcoupling;
    for (std::size_t r = 0;; ++r) {
        for (const auto& [x, s] : state.amplitudes) {
            rows.push_back({r, x, {scale * std::norm(s.h), scale * std::norm(s.v)}});
        }
        if (r == roundtrips) break;
        state = advance_roundtrip(state, schedule);
        scale *= loss.survival;
    }
    return rows;
}

}  // namespace qwalk
