#include "qwalk/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto comma = s.find(',');
        parts.push_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return parts;
}

bool valid_key(std::string_view key) {
    if (key.empty()) return false;
    for (char c : key) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
}

template <class T>
T labelled(const std::string& key, std::string_view raw, T (*parse)(std::string_view)) {
    try {
        return parse(raw);
    } catch (const InvalidArgument& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

// Consumes keys from a ConfigValues; finish() rejects whatever is left.
class Reader {
public:
    Reader(const ConfigValues& values, std::string_view command) : rest_(values.entries), command_(command) {}

    std::optional<std::string> take(const std::string& key) {
        auto it = rest_.find(key);
        if (it == rest_.end()) return std::nullopt;
        std::string value = it->second;
        rest_.erase(it);
        return value;
    }

    double real(const std::string& key, double fallback) {
        auto raw = take(key);
        return raw ? to_real(key, *raw) : fallback;
    }

    double angle(const std::string& key, double fallback) {
        auto raw = take(key);
        return raw ? kPi * to_real(key, *raw) : fallback;
    }

    std::uint64_t whole(const std::string& key, std::uint64_t fallback) {
        auto raw = take(key);
        return raw ? to_whole(key, *raw) : fallback;
    }

    bool flag(const std::string& key, bool fallback) {
        auto raw = take(key);
        if (!raw) return fallback;
        if (*raw == "true" || *raw == "1") return true;
        if (*raw == "false" || *raw == "0") return false;
        throw ConfigError(key + ": expected true or false, got '" + *raw + "'");
    }

    std::string text(const std::string& key, const std::string& fallback) {
        auto raw = take(key);
        if (raw && raw->empty()) throw ConfigError(key + ": empty value");
        return raw ? *raw : fallback;
    }

    std::vector<Setting> settings(const std::string& key, std::vector<Setting> fallback) {
        auto raw = take(key);
        if (!raw) return fallback;
        if (*raw == "both") return {Setting::A, Setting::B};
        std::vector<Setting> out;
        for (auto part : split_list(*raw)) out.push_back(labelled(key, part, parse_setting));
        return out;
    }

    std::vector<Polarization> polarizations(const std::string& key, std::vector<Polarization> fallback) {
        auto raw = take(key);
        if (!raw) return fallback;
        std::vector<Polarization> out;
        for (auto part : split_list(*raw)) out.push_back(labelled(key, part, parse_polarization));
        return out;
    }

    std::vector<std::uint64_t> wholes(const std::string& key) {
        auto raw = take(key);
        std::vector<std::uint64_t> out;
        if (raw) {
            for (auto part : split_list(*raw)) out.push_back(to_whole(key, part));
        }
        return out;
    }

    void finish() const {
        if (rest_.empty()) return;
        std::string names;
        for (const auto& [k, v] : rest_) names += (names.empty() ? "" : ", ") + k;
        throw ConfigError("unknown key(s) for " + std::string(command_) + ": " + names);
    }

private:
    static double to_real(const std::string& key, std::string_view raw) {
        double v = 0.0;
        const auto [end, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (ec != std::errc{} || end != raw.data() + raw.size() || !std::isfinite(v)) {
            throw ConfigError(key + ": expected a finite number, got '" + std::string(raw) + "'");
        }
        return v;
    }

    static std::uint64_t to_whole(const std::string& key, std::string_view raw) {
        std::uint64_t v = 0;
        const auto [end, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (ec != std::errc{} || end != raw.data() + raw.size()) {
            throw ConfigError(key + ": expected a non-negative integer, got '" + std::string(raw) + "'");
        }
        return v;
    }

    std::map<std::string, std::string> rest_;
    std::string_view command_;
};

template <class T>
std::vector<T> narrowed(const std::vector<std::uint64_t>& in, const std::vector<T>& fallback) {
    if (in.empty()) return fallback;
    return {in.begin(), in.end()};
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

ConfigValues ConfigValues::parse(std::string_view text, std::string_view origin) {
    ConfigValues values;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view line = trim(text.substr(0, nl));
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        const std::string where = std::string(origin) + ":" + std::to_string(line_no);
        if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        if (!valid_key(key)) throw ConfigError(where + ": invalid key '" + key + "'");
        if (values.entries.contains(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
        values.entries[key] = std::string(trim(line.substr(eq + 1)));
    }
    return values;
}

ConfigValues ConfigValues::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

void ConfigValues::set(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("override '" + std::string(assignment) + "' is not of the form key=value");
    }
    set(std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1))));
}

void ConfigValues::set(const std::string& key, const std::string& value) {
    if (!valid_key(key)) throw ConfigError("invalid key '" + key + "'");
    entries[key] = value;
}

PhaseDiagramConfig phase_diagram_config(const ConfigValues& values) {
    Reader r(values, "phase-diagram");
    PhaseDiagramConfig c;
    c.grid.theta1_min = r.angle("theta1_min", c.grid.theta1_min);
    c.grid.theta1_max = r.angle("theta1_max", c.grid.theta1_max);
    c.grid.theta2_min = r.angle("theta2_min", c.grid.theta2_min);
    c.grid.theta2_max = r.angle("theta2_max", c.grid.theta2_max);
    c.grid.resolution = r.whole("resolution", c.grid.resolution);
    c.grid.k_samples = r.whole("k_samples", c.grid.k_samples);
    c.out = r.text("out", c.out);
    r.finish();
    require(c.grid.theta1_min < c.grid.theta1_max && c.grid.theta2_min < c.grid.theta2_max,
            "phase-diagram: each range needs min < max");
    require(c.grid.resolution >= 2 && c.grid.resolution <= 4096, "phase-diagram: resolution must lie in [2, 4096]");
    require(c.grid.k_samples >= 64, "phase-diagram: k_samples must be >= 64");
    return c;
}

EdgeStateConfig edge_state_config(const ConfigValues& values) {
    Reader r(values, "edge-state");
    EdgeStateConfig c;
    c.settings = r.settings("setting", c.settings);
    c.cutoff = r.whole("cutoff", c.cutoff);
    c.out = r.text("out", c.out);
    r.finish();
    require(c.cutoff >= 1 && c.cutoff <= 10000, "edge-state: cutoff must lie in [1, 10000]");
    return c;
}

DistillConfig distill_config(const ConfigValues& values) {
    Reader r(values, "distill");
    DistillConfig c;
    c.step_min = r.whole("step_min", c.step_min);
    c.step_max = r.whole("step_max", c.step_max);
    const auto window = r.wholes("window");
    if (!window.empty()) c.window = {window.begin(), window.end()};
    if (auto path = r.take("state_out")) c.state_out = *path;
    c.out = r.text("out", c.out);
    r.finish();
    require(c.step_min >= 1 && c.step_min <= c.step_max && c.step_max <= 200,
            "distill: need 1 <= step_min <= step_max <= 200");
    return c;
}

InterfereConfig interfere_config(const ConfigValues& values) {
    Reader r(values, "interfere");
    InterfereConfig c;
    c.settings = r.settings("setting", c.settings);
    c.steps = narrowed<int>(r.wholes("steps"), c.steps);
    c.positions = narrowed<int>(r.wholes("positions"), c.positions);
    c.polarizations = r.polarizations("polarization", c.polarizations);
    c.split_theta = r.angle("split_theta", c.split_theta);
    c.monte_carlo = r.flag("monte_carlo", c.monte_carlo);
    c.mc.samples = r.whole("samples", c.mc.samples);
    c.mc.coupling_sigma = r.real("coupling_sigma", c.mc.coupling_sigma);
    c.mc.angle_sigma = r.angle("angle_sigma", c.mc.angle_sigma);
    c.mc.noise_floor = r.real("noise_floor", c.mc.noise_floor);
    c.mc.significance = r.real("significance", c.mc.significance);
    if (values.entries.contains("seed")) c.seed = r.whole("seed", 0);
    c.out = r.text("out", c.out);
    r.finish();
    if (c.seed) c.mc.seed = *c.seed;
    if (c.monte_carlo) {
        require(c.seed.has_value(), "interfere: Monte-Carlo runs need an explicit seed (--seed)");
        require(c.out != "-", "interfere: Monte-Carlo runs need an output path (--out)");
    }
    require(c.mc.samples >= 2, "interfere: samples must be >= 2");
    require(c.mc.coupling_sigma >= 0.0 && c.mc.coupling_sigma < 1.0, "interfere: coupling_sigma must lie in [0, 1)");
    require(c.mc.angle_sigma >= 0.0, "interfere: angle_sigma must be >= 0");
    require(c.mc.noise_floor >= 0.0, "interfere: noise_floor must be >= 0");
    require(c.mc.significance > 0.0, "interfere: significance must be > 0");
    return c;
}

EvolutionConfig evolution_config(const ConfigValues& values) {
    Reader r(values, "evolution");
    EvolutionConfig c;
    const auto settings = r.settings("setting", {c.setting});
    require(settings.size() == 1, "evolution: exactly one setting");
    c.setting = settings.front();
    c.roundtrips = r.whole("roundtrips", c.roundtrips);
    c.loss.survival = r.real("survival", c.loss.survival);
    c.loss.outcoupling = r.real("outcoupling", c.loss.outcoupling);
    c.protocol = r.flag("protocol", c.protocol);
    c.target_step = static_cast<int>(r.whole("target_step", static_cast<std::uint64_t>(c.target_step)));
    c.target_position = static_cast<int>(r.whole("target_position", static_cast<std::uint64_t>(c.target_position)));
    const auto pols = r.polarizations("target_polarization", {c.target_polarization});
    require(pols.size() == 1, "evolution: exactly one target_polarization");
    c.target_polarization = pols.front();
    c.out = r.text("out", c.out);
    r.finish();
    require(c.roundtrips <= kMaxRecordedRoundtrips, "evolution: at most 64 roundtrips");
    require(c.loss.survival >= 0.0 && c.loss.survival <= 1.0, "evolution: survival must lie in [0, 1]");
    require(c.loss.outcoupling >= 0.0 && c.loss.outcoupling <= 1.0, "evolution: outcoupling must lie in [0, 1]");
    return c;
}

}  // namespace qwalk
