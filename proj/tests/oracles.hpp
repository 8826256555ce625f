#pragma once

// Reference implementations used only by the tests. They share no code with
// the library: plain arrays instead of sparse maps, coin entries written out
// by hand, winding from the ellipse geometry of c(k).

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
inline const double pi = std::acos(-1.0);
inline const double sqrt2 = std::sqrt(2.0);

/// Walker on positions [-half, half] stored as two flat arrays.
struct Dense {
    long half = 0;
    std::vector<cd> h, v;

    explicit Dense(long half_width) : half(half_width), h(2 * half_width + 1), v(2 * half_width + 1) {}
    cd& H(long x) { return h[static_cast<std::size_t>(x + half)]; }
    cd& V(long x) { return v[static_cast<std::size_t>(x + half)]; }
    cd H(long x) const { return x < -half || x > half ? cd{} : h[static_cast<std::size_t>(x + half)]; }
    cd V(long x) const { return x < -half || x > half ? cd{} : v[static_cast<std::size_t>(x + half)]; }

    double norm2() const {
        double n = 0;
        for (std::size_t i = 0; i < h.size(); ++i) n += std::norm(h[i]) + std::norm(v[i]);
        return n;
    }
};

inline void coin(Dense& d, const std::function<double(long)>& theta) {
    const cd minus_i{0.0, -1.0};
    for (long x = -d.half; x <= d.half; ++x) {
        const double t = theta(x);
        const cd a = d.H(x), b = d.V(x);
        d.H(x) = std::cos(t) * a + minus_i * std::sin(t) * b;
        d.V(x) = minus_i * std::sin(t) * a + std::cos(t) * b;
    }
}

/// H one site right, V one site left; amplitude pushed off the ends is lost
/// (callers size the array so this never happens).
inline void shift(Dense& d) {
    std::vector<cd> h(d.h.size()), v(d.v.size());
    for (std::size_t i = 0; i + 1 < h.size(); ++i) h[i + 1] = d.h[i];
    for (std::size_t i = 1; i < v.size(); ++i) v[i - 1] = d.v[i];
    d.h = std::move(h);
    d.v = std::move(v);
}

inline void step(Dense& d, double theta2, const std::function<double(long)>& theta1) {
    coin(d, [&](long) { return theta2; });
    shift(d);
    coin(d, theta1);
    shift(d);
}

struct SettingParams {
    double theta2;
    double theta1_boundary;  // at x = -1
};

inline SettingParams setting_a() { return {pi / 4, pi / 2}; }
inline SettingParams setting_b() { return {3 * pi / 4, -pi / 2}; }

/// H delta at 0 after `steps` steps of the decoupled walk.
inline Dense boundary_walk(const SettingParams& s, int steps) {
    Dense d(2 * steps + 4);
    d.H(0) = 1.0;
    auto t1 = [&](long x) { return x == -1 ? s.theta1_boundary : 0.0; };
    for (int n = 0; n < steps; ++n) step(d, s.theta2, t1);
    return d;
}

/// Closed-form right edge state amplitude at even site 2n.
inline std::pair<cd, cd> edge_amplitude(const SettingParams& s, int n) {
    const double c = 1.0 / std::sqrt((1.0 + sqrt2) * (1.0 - std::sin(s.theta2)));
    const double mu = 1.0 - sqrt2;
    const double w = c * std::pow(mu, n);
    return {cd{0.0, w * std::cos(s.theta2)}, cd{w * (1.0 - std::sin(s.theta2)), 0.0}};
}

/// Winding of c(k) = a + b cos k - i d sin k, an ellipse around a.
/// nullopt when the ellipse passes through the origin.
inline std::optional<int> ellipse_winding(double theta1, double theta2) {
    const double a = std::sin(theta1) * std::cos(theta2);
    const double b = std::cos(theta1) * std::sin(theta2);
    const double d = std::cos(theta1);
    const double eps = 1e-12;
    if (std::abs(d) < eps) {
        if (std::abs(a) < eps) return std::nullopt;
        return 0;
    }
    if (std::abs(std::abs(a) - std::abs(b)) < eps) return std::nullopt;
    if (std::abs(a) > std::abs(b)) return 0;
    return -(b > 0 ? 1 : -1) * (d > 0 ? 1 : -1);
}

/// Bhattacharyya overlap of two (h, v) intensity lists, each renormalised.
inline double overlap(const std::vector<std::pair<double, double>>& p, const std::vector<std::pair<double, double>>& q) {
    double sp = 0, sq = 0;
    for (auto [a, b] : p) sp += a + b;
    for (auto [a, b] : q) sq += a + b;
    double d = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        d += std::sqrt(p[i].first / sp * q[i].first / sq) + std::sqrt(p[i].second / sp * q[i].second / sq);
    }
    return d;
}

/// Detector intensities from the two-beam formula with alpha = arg.
inline std::pair<double, double> two_beam(cd walker, cd reference) {
    const double iw = std::norm(walker), ir = std::norm(reference);
    const double s = std::sin(std::arg(reference) - std::arg(walker));
    return {0.5 * (iw + ir - 2 * std::sqrt(iw * ir) * s), 0.5 * (iw + ir + 2 * std::sqrt(iw * ir) * s)};
}

}  // namespace oracle
