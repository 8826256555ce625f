#pragma once

// Coined walk on the 1D integer lattice: spinors, sparse walker states,
// coins, coin schedules and the unitary coin/shift evolution.

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <utility>

#include <Eigen/Core>

namespace qwalk {

using Complex = std::complex<double>;
using Position = std::int64_t;
using Coin = Eigen::Matrix2cd;

inline constexpr double kPi = 3.14159265358979323846;

/// Sites whose amplitudes all fall below this magnitude are dropped after a shift.
inline constexpr double kPruneThreshold = 1e-15;

enum class Polarization { H, V };

enum class Setting { A, B };

std::string_view to_string(Polarization p);
std::string_view to_string(Setting s);
Setting parse_setting(std::string_view label);
Polarization parse_polarization(std::string_view label);

/// Amplitudes of the horizontal and vertical polarisation at one site.
struct Spinor {
    Complex h{};
    Complex v{};

    Complex& operator[](Polarization p) { return p == Polarization::H ? h : v; }
    const Complex& operator[](Polarization p) const { return p == Polarization::H ? h : v; }

    double norm2() const { return std::norm(h) + std::norm(v); }
    bool finite() const;

    Spinor& operator+=(const Spinor& o) {
        h += o.h;
        v += o.v;
        return *this;
    }
    friend Spinor operator+(Spinor a, const Spinor& b) { return a += b; }
    friend Spinor operator-(const Spinor& a, const Spinor& b) { return {a.h - b.h, a.v - b.v}; }
    friend Spinor operator*(Complex s, const Spinor& a) { return {s * a.h, s * a.v}; }
    friend bool operator==(const Spinor&, const Spinor&) = default;
};

Spinor operator*(const Coin& c, const Spinor& s);

/// Wavefunction of the walker: a sparse position -> spinor map plus the
/// number of full steps and of coin+shift layers (roundtrips) applied.
struct WalkerState {
    std::map<Position, Spinor> amplitudes;
    std::uint64_t step = 0;
    std::uint64_t roundtrip = 0;

    static WalkerState delta(Position x, Spinor s);

    /// Amplitude at `x`; zero for sites outside the support.
    Spinor at(Position x) const;
    double norm2() const;
    bool finite() const;
};

/// Linear combination a*psi + b*phi. Counters are taken from `psi`.
WalkerState combine(Complex a, const WalkerState& psi, Complex b, const WalkerState& phi);

WalkerState scaled(Complex factor, const WalkerState& psi);

/// Euclidean distance between two states, sum over the union of both supports.
double distance(const WalkerState& a, const WalkerState& b);

/// C(theta) = exp(-i theta sigma_x).
Coin coin_matrix(double theta);

struct CoinSpec {
    enum class Kind { rotation, transmit, reflect, interfere };

    Kind kind = Kind::transmit;
    double theta = 0.0;

    static CoinSpec rotation(double theta);
    static CoinSpec transmit();
    /// Fully reflective coin, rotation by sign * pi/2.
    static CoinSpec reflect(int sign = +1);
    static CoinSpec interfere(double theta);

    /// Rotation angle the coin applies; every kind is a sigma_x rotation.
    double angle() const { return theta; }
    Coin matrix() const { return coin_matrix(theta); }

    friend bool operator==(const CoinSpec&, const CoinSpec&) = default;
};

enum class Layer { theta2, theta1 };

/// Assigns a coin to every (roundtrip, position).
///
/// Roundtrips before `walk_start` and at or after `walk_start + walk_layers`
/// use the identity coin. Inside the walk, even layers (counted from
/// `walk_start`) apply C(bulk_theta2) everywhere and odd layers apply
/// C(theta1(x)). Entries in `overrides` replace whatever the walk would do.
struct CoinSchedule {
    double bulk_theta2 = 0.0;
    std::map<Position, double> theta1_map;
    double uniform_theta1 = 0.0;  // theta1 at sites absent from theta1_map
    std::map<std::pair<std::uint64_t, Position>, CoinSpec> overrides;
    std::optional<Setting> setting;  // nullopt for custom schedules
    std::uint64_t walk_start = 0;
    std::optional<std::uint64_t> walk_layers;

    /// Decoupled walk of Setting A (theta2 = pi/4, theta1(-1) = pi/2) or
    /// Setting B (theta2 = 3pi/4, theta1(-1) = -pi/2).
    static CoinSchedule for_setting(Setting s);
    /// Translation-invariant walk with the same theta1 everywhere.
    static CoinSchedule uniform(double theta1, double theta2);

    double theta1(Position x) const;
    std::optional<Layer> layer_at(std::uint64_t roundtrip) const;
    CoinSpec layer_coin(Layer layer, Position x) const;
    CoinSpec coin_at(std::uint64_t roundtrip, Position x) const;
};

/// Additive perturbation of the coin angle at (roundtrip, position).
using AngleJitter = std::function<double(std::uint64_t roundtrip, Position x)>;

/// Applies the coin of `layer` at every occupied site (overrides keyed by
/// the state's current roundtrip take precedence).
WalkerState apply_coin(const WalkerState& state, const CoinSchedule& schedule, Layer layer);

/// Applies the coin the schedule assigns to the state's current roundtrip.
WalkerState apply_coin(const WalkerState& state, const CoinSchedule& schedule,
                       const AngleJitter& jitter = {});

/// S = S_H S_V^dagger: H moves x -> x+1, V moves x -> x-1. Advances the
/// roundtrip counter and prunes negligible sites.
WalkerState apply_shift(const WalkerState& state);

/// One coin+shift layer.
WalkerState advance_roundtrip(const WalkerState& state, const CoinSchedule& schedule,
                              const AngleJitter& jitter = {});

/// W = S C(theta1) S C(theta2), with C(theta2) acting first.
WalkerState walk_step(const WalkerState& state, const CoinSchedule& schedule);

double norm2(const WalkerState& state);
WalkerState restrict_to(const WalkerState& state, const std::set<Position>& positions);
/// Restricts to `positions` and scales the result to unit norm.
WalkerState renormalize(const WalkerState& state, const std::set<Position>& positions);
/// Scales the whole state to unit norm.
WalkerState renormalize(const WalkerState& state);

}  // namespace qwalk
