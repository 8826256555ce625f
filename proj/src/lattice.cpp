#include "qwalk/lattice.hpp"

#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(const WalkerState& state, const char* op) {
    if (!state.finite()) {
        throw InvalidArgument(std::string(op) + ": state has non-finite amplitudes");
    }
}

}  // namespace

std::string_view to_string(Polarization p) { return p == Polarization::H ? "H" : "V"; }

std::string_view to_string(Setting s) { return s == Setting::A ? "A" : "B"; }

Setting parse_setting(std::string_view label) {
    if (label == "A") return Setting::A;
    if (label == "B") return Setting::B;
    throw InvalidArgument("invalid setting label '" + std::string(label) + "' (expected A or B)");
}

Polarization parse_polarization(std::string_view label) {
    if (label == "H") return Polarization::H;
    if (label == "V") return Polarization::V;
    throw InvalidArgument("invalid polarization '" + std::string(label) + "' (expected H or V)");
}

bool Spinor::finite() const { return qwalk::finite(h) && qwalk::finite(v); }

Spinor operator*(const Coin& c, const Spinor& s) {
    return {c(0, 0) * s.h + c(0, 1) * s.v, c(1, 0) * s.h + c(1, 1) * s.v};
}

WalkerState WalkerState::delta(Position x, Spinor s) {
    WalkerState state;
    state.amplitudes.emplace(x, s);
    return state;
}

Spinor WalkerState::at(Position x) const {
    auto it = amplitudes.find(x);
    return it == amplitudes.end() ? Spinor{} : it->second;
}

double WalkerState::norm2() const {
    double total = 0.0;
    for (const auto& [x, s] : amplitudes) total += s.norm2();
    return total;
}

bool WalkerState::finite() const {
    for (const auto& [x, s] : amplitudes) {
        if (!s.finite()) return false;
    }
    return true;
}

WalkerState combine(Complex a, const WalkerState& psi, Complex b, const WalkerState& phi) {
    WalkerState out;
    out.step = psi.step;
    out.roundtrip = psi.roundtrip;
    for (const auto& [x, s] : psi.amplitudes) out.amplitudes[x] += a * s;
    for (const auto& [x, s] : phi.amplitudes) out.amplitudes[x] += b * s;
    return out;
}

WalkerState scaled(Complex factor, const WalkerState& psi) {
    WalkerState out = psi;
    for (auto& [x, s] : out.amplitudes) s = factor * s;
    return out;
}

double distance(const WalkerState& a, const WalkerState& b) {
    double total = 0.0;
    for (const auto& [x, s] : a.amplitudes) total += (s - b.at(x)).norm2();
    for (const auto& [x, s] : b.amplitudes) {
        if (!a.amplitudes.contains(x)) total += s.norm2();
    }
    return std::sqrt(total);
}

Coin coin_matrix(double theta) {
    if (!std::isfinite(theta)) throw InvalidArgument("coin_matrix: non-finite angle");
    const double c = std::cos(theta);
    const Complex mis{0.0, -std::sin(theta)};
    Coin m;
    m << c, mis, mis, c;
    return m;
}

CoinSpec CoinSpec::rotation(double theta) { return {Kind::rotation, theta}; }

CoinSpec CoinSpec::transmit() { return {Kind::transmit, 0.0}; }

CoinSpec CoinSpec::reflect(int sign) {
    if (sign != 1 && sign != -1) throw InvalidArgument("reflect: sign must be +1 or -1");
    return {Kind::reflect, sign * kPi / 2};
}

CoinSpec CoinSpec::interfere(double theta) { return {Kind::interfere, theta}; }

CoinSchedule CoinSchedule::for_setting(Setting s) {
    CoinSchedule schedule;
    schedule.setting = s;
    if (s == Setting::A) {
        schedule.bulk_theta2 = kPi / 4;
        schedule.theta1_map[-1] = kPi / 2;
    } else {
        schedule.bulk_theta2 = 3 * kPi / 4;
        schedule.theta1_map[-1] = -kPi / 2;
    }
    return schedule;
}

CoinSchedule CoinSchedule::uniform(double theta1, double theta2) {
    CoinSchedule schedule;
    schedule.bulk_theta2 = theta2;
    schedule.uniform_theta1 = theta1;
    return schedule;
}

double CoinSchedule::theta1(Position x) const {
    auto it = theta1_map.find(x);
    if (it != theta1_map.end()) return it->second;
    return uniform_theta1;
}

std::optional<Layer> CoinSchedule::layer_at(std::uint64_t roundtrip) const {
    if (roundtrip < walk_start) return std::nullopt;
    const std::uint64_t j = roundtrip - walk_start;
    if (walk_layers && j >= *walk_layers) return std::nullopt;
    return j % 2 == 0 ? Layer::theta2 : Layer::theta1;
}

CoinSpec CoinSchedule::layer_coin(Layer layer, Position x) const {
    const double theta = layer == Layer::theta2 ? bulk_theta2 : theta1(x);
    return theta == 0.0 ? CoinSpec::transmit() : CoinSpec::rotation(theta);
}

CoinSpec CoinSchedule::coin_at(std::uint64_t roundtrip, Position x) const {
    auto it = overrides.find({roundtrip, x});
    if (it != overrides.end()) return it->second;
    auto layer = layer_at(roundtrip);
    return layer ? layer_coin(*layer, x) : CoinSpec::transmit();
}

WalkerState apply_coin(const WalkerState& state, const CoinSchedule& schedule, Layer layer) {
    require_finite(state, "apply_coin");
    WalkerState out = state;
    for (auto& [x, s] : out.amplitudes) {
        auto it = schedule.overrides.find({state.roundtrip, x});
        const CoinSpec spec = it != schedule.overrides.end() ? it->second : schedule.layer_coin(layer, x);
        if (spec.theta != 0.0) s = spec.matrix() * s;
    }
    return out;
}

WalkerState apply_coin(const WalkerState& state, const CoinSchedule& schedule, const AngleJitter& jitter) {
    require_finite(state, "apply_coin");
    WalkerState out = state;
    for (auto& [x, s] : out.amplitudes) {
        double theta = schedule.coin_at(state.roundtrip, x).angle();
        if (jitter) theta += jitter(state.roundtrip, x);
        if (theta != 0.0) s = coin_matrix(theta) * s;
    }
    return out;
}

WalkerState apply_shift(const WalkerState& state) {
    require_finite(state, "apply_shift");
    WalkerState out;
    out.step = state.step;
    out.roundtrip = state.roundtrip + 1;
    for (const auto& [x, s] : state.amplitudes) {
        if (s.h != Complex{}) out.amplitudes[x + 1].h += s.h;
        if (s.v != Complex{}) out.amplitudes[x - 1].v += s.v;
    }
    std::erase_if(out.amplitudes, [](const auto& entry) {
        return std::abs(entry.second.h) < kPruneThreshold && std::abs(entry.second.v) < kPruneThreshold;
    });
    return out;
}

WalkerState advance_roundtrip(const WalkerState& state, const CoinSchedule& schedule, const AngleJitter& jitter) {
    return apply_shift(apply_coin(state, schedule, jitter));
}

WalkerState walk_step(const WalkerState& state, const CoinSchedule& schedule) {
    WalkerState out = apply_shift(apply_coin(state, schedule, Layer::theta2));
    out = apply_shift(apply_coin(out, schedule, Layer::theta1));
    out.step = state.step + 1;
    return out;
}

double norm2(const WalkerState& state) { return state.norm2(); }

WalkerState restrict_to(const WalkerState& state, const std::set<Position>& positions) {
    WalkerState out;
    out.step = state.step;
    out.roundtrip = state.roundtrip;
    for (const auto& [x, s] : state.amplitudes) {
        if (positions.contains(x)) out.amplitudes.emplace(x, s);
    }
    return out;
}

WalkerState renormalize(const WalkerState& state, const std::set<Position>& positions) {
    return renormalize(restrict_to(state, positions));
}

WalkerState renormalize(const WalkerState& state) {
    const double n2 = state.norm2();
    const double n = std::sqrt(n2);
    if (!(n > 1e-15)) throw DegenerateState("renormalize: restricted state has norm " + std::to_string(n));
    return scaled(Complex{1.0 / n}, state);
}

}  // namespace qwalk
