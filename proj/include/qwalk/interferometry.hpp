#pragma once

// Time-multiplexed phase-reference protocol: the injected pulse is split
// into a reference and a walker, the walker runs the decoupled split-step
// walk, one of its components is routed back to meet the reference, and
// the two detector intensities after a balanced mixing coin give the
// M-parameter sin(alpha_r - alpha_w).
//
// Coordinates: the walk occupies x >= 0 (decoupling site x = -1). The pulse
// enters at x = -1 on roundtrip 0, where the split coin sends H into the
// walk and V to the left as the reference. Walk layer j runs on roundtrip
// j + 1, so step s of the walk is complete at roundtrip 2s + 1.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qwalk/distillation.hpp"
#include "qwalk/lattice.hpp"

namespace qwalk {

/// Walker/reference intensity products at or below this are treated as not
/// measurable above the detector noise floor.
inline constexpr double kDefaultNoiseFloor = 1e-6;
/// Largest amplitude from non-target walker components tolerated in a
/// detection bin of an ideal run.
inline constexpr double kIsolationTolerance = 1e-9;
/// Largest walker amplitude tolerated on a reference site before interference.
inline constexpr double kOverlapTolerance = 1e-12;

struct DetectionBin {
    std::uint64_t roundtrip = 0;
    Position position = 0;
    Polarization polarization = Polarization::H;

    friend bool operator==(const DetectionBin&, const DetectionBin&) = default;
};

struct RouteSite {
    std::uint64_t roundtrip = 0;
    Position position = 0;

    friend auto operator<=>(const RouteSite&, const RouteSite&) = default;
};

struct RoutingPlan {
    Setting setting = Setting::A;
    int target_step = 6;
    int target_position = 0;  // eigenstate-local label; lattice site 2 * target_position
    Polarization target_polarization = Polarization::H;

    Position injection_site = -1;
    double split_theta = -kPi / 4;
    /// Walk coins plus every routing override (split, transmit, reflect, mixing).
    CoinSchedule schedule;
    std::uint64_t walk_end = 0;  // roundtrip at which the target step is complete
    RouteSite reference_reflection;
    RouteSite target_reflection;   // only meaningful when target_reflected
    bool target_reflected = false;
    std::vector<RouteSite> reference_path;  // reference sites from roundtrip 1 to interference
    RouteSite interference;
    Polarization walker_arrival = Polarization::V;
    double mixing_theta = kPi / 4;
    std::array<DetectionBin, 2> detection_bins;  // H detector, V detector

    Position target_site() const { return 2 * static_cast<Position>(target_position); }
    std::uint64_t final_roundtrip() const { return interference.roundtrip + 1; }
};

/// Routing plan for one (setting, step, position, polarization) read-out.
/// Throws InvalidArgument for unsupported targets and PlanningInfeasible if
/// the simulated reference path meets walker amplitude before interference.
RoutingPlan make_plan(Setting setting, int target_step, int target_position, Polarization target_polarization,
                      double split_theta = -kPi / 4);

/// All 36 read-outs: settings A/B x steps 6-8 x positions 0-2 x H/V.
std::vector<RoutingPlan> full_dataset_plans();

/// Detected intensities after the balanced mixing coin C(sign * pi/4) acts on
/// (walker, reference).
std::pair<double, double> interfere(Complex walker_amp, Complex reference_amp, int sign = -1);

/// (i_v - i_h) / (2 sqrt(i_w i_r)). Throws VanishingComponent when
/// i_w * i_r <= noise_floor and InconsistentIntensities when |M| > 1 + 1e-9.
double m_parameter(double i_h, double i_v, double i_w, double i_r, double noise_floor = kDefaultNoiseFloor);

/// Same formula without the |M| <= 1 consistency check, for perturbed runs
/// whose detector efficiencies no longer balance. Still throws VanishingComponent.
double m_estimate(double i_h, double i_v, double i_w, double i_r, double noise_floor = kDefaultNoiseFloor);

struct InterferenceOutcome {
    double i_h = 0.0;
    double i_v = 0.0;
    double i_w = 0.0;
    double i_r = 0.0;
    std::optional<double> m;  // empty when the walker component is below the noise floor
    double m_error = 0.0;
};

struct Imperfections {
    AngleJitter jitter;
    double coupling_h = 1.0;
    double coupling_v = 1.0;
};

enum class Arm { both, walker_only, reference_only, foreign_only };

struct ProtocolTrace {
    Spinor interference_input;  // amplitudes at the interference site before the mixing coin
    Complex bin_h{};
    Complex bin_v{};
    std::vector<WalkerState> history;  // state at the start of every roundtrip, if requested
};

/// Roundtrip-level simulation of `arm` under the plan's schedule.
/// walker_only / reference_only keep one output of the split coin;
/// foreign_only additionally removes the target component at walk_end.
ProtocolTrace simulate_protocol(const RoutingPlan& plan, Arm arm, const Imperfections* imperfections = nullptr,
                                bool keep_history = false);

/// Interference run plus walker-only and reference-only calibration runs.
/// Without imperfections the run is checked for isolation (IsolationViolation).
InterferenceOutcome run_protocol(const RoutingPlan& plan, const Imperfections* imperfections = nullptr,
                                 double noise_floor = kDefaultNoiseFloor);

struct AnalyticReadout {
    Complex walker_amp{};
    Complex reference_amp{};
    double i_h = 0.0;
    double i_v = 0.0;
    std::optional<double> m;
};

/// Oracle: the step-s amplitude of the plain boundary walk, multiplied by
/// the coin entries met along the routed path, interfered with the ideal
/// reference amplitude.
AnalyticReadout analytic_readout(const RoutingPlan& plan, double noise_floor = kDefaultNoiseFloor);

/// Walker amplitudes for the plan's whole routed run, roundtrip by roundtrip.
std::vector<EvolutionRow> protocol_record(const RoutingPlan& plan, const LossModel& loss = {});

struct MonteCarloConfig {
    double coupling_sigma = 0.02;
    double angle_sigma = 2.0 * kPi / 180.0;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    double noise_floor = kDefaultNoiseFloor;
    /// A read-out counts as significant when |M| > significance * m_error.
    double significance = 2.0;
};

struct MonteCarloResult {
    InterferenceOutcome outcome;     // unperturbed run, m_error filled in
    std::vector<double> sample_m;    // NaN where the sample fell below the noise floor
    std::size_t vanishing_samples = 0;
    /// Nominal M exists and exceeds `significance` times its error bar.
    bool readable = false;
};

/// Perturbs every coin angle (uniform within +-angle_sigma) and both detector
/// efficiencies (uniform within +-coupling_sigma) per sample. The random
/// stream is counter-based on (seed, plan, sample, roundtrip, position), so
/// results do not depend on evaluation order.
MonteCarloResult monte_carlo(const RoutingPlan& plan, const MonteCarloConfig& config = {});

/// Uniform draw in [-1, 1) addressed by a counter tuple.
double counter_uniform(std::uint64_t seed, std::span<const std::uint64_t> counter);

enum class Signature { alternating, constant, mixed, undefined };

/// Step-to-step sign pattern of an M sequence.
Signature classify_signature(std::span<const std::optional<double>> m_values);

}  // namespace qwalk
