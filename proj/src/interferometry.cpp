#include "qwalk/interferometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

constexpr int kMaxPlanStep = 24;
constexpr int kMaxPlanPosition = 2;

std::string describe(const RoutingPlan& plan) {
    return std::string(to_string(plan.setting)) + " step " + std::to_string(plan.target_step) + " position " +
           std::to_string(plan.target_position) + " " + std::string(to_string(plan.target_polarization));
}

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t plan_key(const RoutingPlan& plan) {
    return (static_cast<std::uint64_t>(plan.setting) << 48) | (static_cast<std::uint64_t>(plan.target_step) << 24) |
           (static_cast<std::uint64_t>(plan.target_position) << 4) |
           static_cast<std::uint64_t>(plan.target_polarization);
}

// Reference support at the start of roundtrip r, for r = 1 .. interference.
Position reference_site(const RoutingPlan& plan, std::uint64_t r) {
    const auto& refl = plan.reference_reflection;
    if (r <= refl.roundtrip) return plan.injection_site - static_cast<Position>(r);
    return refl.position + static_cast<Position>(r - refl.roundtrip);
}

void check_overlap(const RoutingPlan& plan) {
    const ProtocolTrace walker = simulate_protocol(plan, Arm::walker_only, nullptr, true);
    const ProtocolTrace reference = simulate_protocol(plan, Arm::reference_only, nullptr, true);
    for (std::uint64_t r = 1; r < plan.interference.roundtrip; ++r) {
        const WalkerState& ref = reference.history[r];
        if (ref.amplitudes.size() != 1 || ref.amplitudes.begin()->first != reference_site(plan, r)) {
            throw PlanningInfeasible("make_plan: reference leaves its path at roundtrip " + std::to_string(r) +
                                     " (" + describe(plan) + ")");
        }
        const Position x = ref.amplitudes.begin()->first;
        if (std::sqrt(walker.history[r].at(x).norm2()) > kOverlapTolerance) {
            throw PlanningInfeasible("make_plan: walker meets the reference at roundtrip " + std::to_string(r) +
                                     ", x=" + std::to_string(x) + " (" + describe(plan) + ")");
        }
    }
}

}  // namespace

RoutingPlan make_plan(Setting setting, int target_step, int target_position, Polarization target_polarization,
                      double split_theta) {
    if (target_step < 1 || target_step > kMaxPlanStep) {
        throw InvalidArgument("make_plan: step must lie in [1, " + std::to_string(kMaxPlanStep) + "]");
    }
    if (target_position < 0 || target_position > kMaxPlanPosition || target_position > target_step) {
        throw InvalidArgument("make_plan: position must lie in [0, min(2, step)]");
    }
    if (!std::isfinite(split_theta) || std::abs(std::sin(split_theta)) < 1e-6 ||
        std::abs(std::cos(split_theta)) < 1e-6) {
        throw InvalidArgument("make_plan: split coin must feed both walker and reference");
    }

    RoutingPlan plan;
    plan.setting = setting;
    plan.target_step = target_step;
    plan.target_position = target_position;
    plan.target_polarization = target_polarization;
    plan.split_theta = split_theta;

    const auto s = static_cast<std::uint64_t>(target_step);
    const auto p = static_cast<std::uint64_t>(target_position);
    CoinSchedule& sched = plan.schedule;
    sched = CoinSchedule::for_setting(setting);
    sched.walk_start = 1;
    sched.walk_layers = 2 * s;
    plan.walk_end = 1 + 2 * s;

    sched.overrides[{0, plan.injection_site}] = CoinSpec::rotation(split_theta);

    // The target travels left as V from 2p to the decoupling site; an H
    // target is turned around first. Walker V components already to its left
    // would reach the interference site earlier and are sent back right.
    if (target_polarization == Polarization::H) {
        plan.target_reflected = true;
        plan.target_reflection = {plan.walk_end, plan.target_site()};
        sched.overrides[{plan.walk_end, plan.target_site()}] = CoinSpec::reflect(+1);
    }
    for (std::uint64_t y = 0; y + 2 <= 2 * p; y += 2) {
        sched.overrides[{plan.walk_end + y + 1, plan.injection_site}] = CoinSpec::reflect(+1);
    }

    plan.interference = {2 * p + 2 * s + 2, plan.injection_site};
    const std::uint64_t r_ref = p + s + 1;
    plan.reference_reflection = {r_ref, plan.injection_site - static_cast<Position>(r_ref)};
    for (std::uint64_t r = 1; r < plan.interference.roundtrip; ++r) {
        const RouteSite site{r, reference_site(plan, r)};
        plan.reference_path.push_back(site);
        sched.overrides[{site.roundtrip, site.position}] =
            r == r_ref ? CoinSpec::reflect(+1) : CoinSpec::transmit();
    }
    plan.reference_path.push_back(plan.interference);

    // Walker arrives V and the reference H; C(+pi/4) on (reference, walker)
    // gives the same detector intensities as C(-pi/4) on (walker, reference).
    plan.walker_arrival = Polarization::V;
    plan.mixing_theta = kPi / 4;
    sched.overrides[{plan.interference.roundtrip, plan.interference.position}] =
        CoinSpec::interfere(plan.mixing_theta);
    plan.detection_bins = {DetectionBin{plan.final_roundtrip(), plan.interference.position + 1, Polarization::H},
                           DetectionBin{plan.final_roundtrip(), plan.interference.position - 1, Polarization::V}};

    check_overlap(plan);
    return plan;
}

std::vector<RoutingPlan> full_dataset_plans() {
    std::vector<RoutingPlan> plans;
    for (Setting setting : {Setting::A, Setting::B}) {
        for (int step = 6; step <= 8; ++step) {
            for (int pos = 0; pos <= 2; ++pos) {
                for (Polarization pol : {Polarization::H, Polarization::V}) {
                    plans.push_back(make_plan(setting, step, pos, pol));
                }
            }
        }
    }
    return plans;
}

std::pair<double, double> interfere(Complex walker_amp, Complex reference_amp, int sign) {
    if (sign != 1 && sign != -1) throw InvalidArgument("interfere: sign must be +1 or -1");
    const Spinor out = coin_matrix(sign * kPi / 4) * Spinor{walker_amp, reference_amp};
    return {std::norm(out.h), std::norm(out.v)};
}

double m_estimate(double i_h, double i_v, double i_w, double i_r, double noise_floor) {
    for (double v : {i_h, i_v, i_w, i_r}) {
        if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("m_parameter: intensities must be finite and >= 0");
    }
    if (i_w * i_r <= noise_floor) {
        throw VanishingComponent("m_parameter: i_w * i_r = " + std::to_string(i_w * i_r) +
                                 " is at or below the noise floor");
    }
    return (i_v - i_h) / (2.0 * std::sqrt(i_w * i_r));
}

double m_parameter(double i_h, double i_v, double i_w, double i_r, double noise_floor) {
    const double m = m_estimate(i_h, i_v, i_w, i_r, noise_floor);
    if (std::abs(m) > 1.0 + 1e-9) {
        throw InconsistentIntensities("m_parameter: |M| = " + std::to_string(std::abs(m)) + " exceeds 1");
    }
    return m;
}

ProtocolTrace simulate_protocol(const RoutingPlan& plan, Arm arm, const Imperfections* imperfections,
                                bool keep_history) {
    static const AngleJitter no_jitter;
    const AngleJitter& jitter = imperfections ? imperfections->jitter : no_jitter;

    ProtocolTrace trace;
    WalkerState state = WalkerState::delta(plan.injection_site, {1.0, 0.0});
    for (std::uint64_t r = 0; r <= plan.interference.roundtrip; ++r) {
        if (arm == Arm::foreign_only && r == plan.walk_end) {
            auto it = state.amplitudes.find(plan.target_site());
            if (it != state.amplitudes.end()) it->second[plan.target_polarization] = 0.0;
        }
        if (keep_history) trace.history.push_back(state);
        if (r == plan.interference.roundtrip) trace.interference_input = state.at(plan.interference.position);
        state = apply_coin(state, plan.schedule, jitter);
        if (r == 0 && arm != Arm::both) {
            Spinor& s = state.amplitudes[plan.injection_site];
            (arm == Arm::reference_only ? s.h : s.v) = 0.0;
        }
        state = apply_shift(state);
    }
    if (keep_history) trace.history.push_back(state);
    trace.bin_h = state.at(plan.detection_bins[0].position).h;
    trace.bin_v = state.at(plan.detection_bins[1].position).v;
    return trace;
}

InterferenceOutcome run_protocol(const RoutingPlan& plan, const Imperfections* imperfections, double noise_floor) {
    const double eta_h = imperfections ? imperfections->coupling_h : 1.0;
    const double eta_v = imperfections ? imperfections->coupling_v : 1.0;
    auto detected = [&](const ProtocolTrace& t) { return eta_h * std::norm(t.bin_h) + eta_v * std::norm(t.bin_v); };

    InterferenceOutcome out;
    const ProtocolTrace joint = simulate_protocol(plan, Arm::both, imperfections);
    out.i_h = eta_h * std::norm(joint.bin_h);
    out.i_v = eta_v * std::norm(joint.bin_v);
    out.i_w = detected(simulate_protocol(plan, Arm::walker_only, imperfections));
    out.i_r = detected(simulate_protocol(plan, Arm::reference_only, imperfections));

    if (!imperfections) {
        const ProtocolTrace foreign = simulate_protocol(plan, Arm::foreign_only);
        const double leak = std::max(std::abs(foreign.bin_h), std::abs(foreign.bin_v));
        if (leak > kIsolationTolerance) {
            throw IsolationViolation("run_protocol: non-target walker amplitude " + std::to_string(leak) +
                                     " reaches the detectors (" + describe(plan) + ")");
        }
    }

    try {
        out.m = imperfections ? m_estimate(out.i_h, out.i_v, out.i_w, out.i_r, noise_floor)
                              : m_parameter(out.i_h, out.i_v, out.i_w, out.i_r, noise_floor);
    } catch (const VanishingComponent&) {
        out.m.reset();
    }
    return out;
}

AnalyticReadout analytic_readout(const RoutingPlan& plan, double noise_floor) {
    const WalkerState psi = evolve_from_boundary(plan.setting, static_cast<std::size_t>(plan.target_step));
    const Coin split = coin_matrix(plan.split_theta);
    const Coin ref_reflect = plan.schedule
                                 .coin_at(plan.reference_reflection.roundtrip, plan.reference_reflection.position)
                                 .matrix();

    AnalyticReadout out;
    out.walker_amp = split(0, 0) * psi.at(plan.target_site())[plan.target_polarization];
    if (plan.target_reflected) {
        const Coin c =
            plan.schedule.coin_at(plan.target_reflection.roundtrip, plan.target_reflection.position).matrix();
        out.walker_amp *= c(1, 0);
    }
    out.reference_amp = split(1, 0) * ref_reflect(0, 1);
    std::tie(out.i_h, out.i_v) = interfere(out.walker_amp, out.reference_amp, -1);
    try {
        out.m = m_parameter(out.i_h, out.i_v, std::norm(out.walker_amp), std::norm(out.reference_amp), noise_floor);
    } catch (const VanishingComponent&) {
        out.m.reset();
    }
    return out;
}

std::vector<EvolutionRow> protocol_record(const RoutingPlan& plan, const LossModel& loss) {
    if (!(loss.survival >= 0.0 && loss.survival <= 1.0) || !(loss.outcoupling >= 0.0 && loss.outcoupling <= 1.0)) {
        throw InvalidArgument("protocol_record: survival and outcoupling must lie in [0, 1]");
    }
    const ProtocolTrace trace = simulate_protocol(plan, Arm::both, nullptr, true);
    std::vector<EvolutionRow> rows;
    double scale = loss.outcoupling;
    for (const WalkerState& state : trace.history) {
        for (const auto& [x, s] : state.amplitudes) {
            rows.push_back({state.roundtrip, x, {scale * std::norm(s.h), scale * std::norm(s.v)}});
        }
        scale *= loss.survival;
    }
    return rows;
}

double counter_uniform(std::uint64_t seed, std::span<const std::uint64_t> counter) {
    std::uint64_t h = mix64(seed);
    for (std::uint64_t c : counter) h = mix64(h ^ c);
    return 2.0 * (static_cast<double>(h >> 11) * 0x1.0p-53) - 1.0;
}

MonteCarloResult monte_carlo(const RoutingPlan& plan, const MonteCarloConfig& config) {
    if (config.samples < 2) throw InvalidArgument("monte_carlo: need at least 2 samples");
    if (!(config.coupling_sigma >= 0.0 && config.coupling_sigma < 1.0) || !(config.angle_sigma >= 0.0) ||
        !std::isfinite(config.angle_sigma)) {
        throw InvalidArgument("monte_carlo: sigmas must be finite, >= 0, coupling_sigma < 1");
    }
    if (!(config.noise_floor >= 0.0)) throw InvalidArgument("monte_carlo: noise floor must be >= 0");
    if (!(config.significance > 0.0) || !std::isfinite(config.significance)) {
        throw InvalidArgument("monte_carlo: significance must be finite and > 0");
    }

    MonteCarloResult result;
    result.outcome = run_protocol(plan, nullptr, config.noise_floor);
    const std::uint64_t key = plan_key(plan);

    double sum_sq = 0.0;
    std::size_t counted = 0;
    result.sample_m.reserve(config.samples);
    for (std::size_t i = 0; i < config.samples; ++i) {
        Imperfections imp;
        imp.jitter = [&, i](std::uint64_t r, Position x) {
            const std::uint64_t c[] = {key, i, 0, r, static_cast<std::uint64_t>(x)};
            return config.angle_sigma * counter_uniform(config.seed, c);
        };
        const std::uint64_t ch[] = {key, i, 1};
        const std::uint64_t cv[] = {key, i, 2};
        imp.coupling_h = 1.0 + config.coupling_sigma * counter_uniform(config.seed, ch);
        imp.coupling_v = 1.0 + config.coupling_sigma * counter_uniform(config.seed, cv);

        const InterferenceOutcome o = run_protocol(plan, &imp, config.noise_floor);
        if (!o.m) {
            ++result.vanishing_samples;
            result.sample_m.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        result.sample_m.push_back(*o.m);
        if (result.outcome.m) {
            sum_sq += (*o.m - *result.outcome.m) * (*o.m - *result.outcome.m);
            ++counted;
        }
    }

    if (result.outcome.m && counted > 0) {
        result.outcome.m_error = std::sqrt(sum_sq / static_cast<double>(counted));
        result.readable = std::abs(*result.outcome.m) > config.significance * result.outcome.m_error;
    } else {
        result.outcome.m_error = std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

Signature classify_signature(std::span<const std::optional<double>> m_values) {
    if (m_values.size() < 2) return Signature::undefined;
    for (const auto& m : m_values) {
        if (!m || *m == 0.0) return Signature::undefined;
    }
    bool alternating = true;
    bool constant = true;
    for (std::size_t i = 1; i < m_values.size(); ++i) {
        const bool same = (*m_values[i] > 0) == (*m_values[i - 1] > 0);
        alternating = alternating && !same;
        constant = constant && same;
    }
    if (alternating) return Signature::alternating;
    if (constant) return Signature::constant;
    return Signature::mixed;
}

}  // namespace qwalk
