#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "circle.hpp"

namespace rmtlab {

// F = K^{-2} log Z throughout, so that F > 0 in the weak phase.

/// Branch value without the integration constant.
inline double free_energy_branch_raw(Family f, Phase ph, double t, double g, double v) {
    if (ph == Phase::weak) return -g * g * (1 - v * v) * std::log(1 - t * t);
    if (f == Family::H)
        return -(2 * g - 1) * std::log(1 - t) - 0.5 * std::log(t) + v * v * (std::log(1 - t) - 0.5 * std::log(t));
    return (2 * g + 1) * std::log(1 + t) - 0.5 * std::log(t) + v * v * (std::log(1 + t) - 0.5 * std::log(t));
}

inline double free_energy_branch_dt(Family f, Phase ph, double t, double g, double v) {
    if (ph == Phase::weak) return 2 * g * g * t * (1 - v * v) / (1 - t * t);
    if (f == Family::H) return -(1 + t - 4 * g * t) / (2 * t * (1 - t)) - v * v * (1 + t) / (2 * t * (1 - t));
    return -(1 - t - 4 * g * t) / (2 * t * (1 + t)) - v * v * (1 - t) / (2 * t * (1 + t));
}

/// t_c(gamma) solving gamma_c(family, t) = gamma by bisection; empty when the
/// critical curve is never crossed for t in (0,1).
inline std::optional<double> critical_t(Family f, double g) {
    if (!(g >= 0)) throw std::domain_error("critical_t: gamma must be nonnegative");
    const double floor = f == Family::H ? 1.0 : 0.0;  // gamma_c -> floor as t -> 1
    if (g <= floor) return std::nullopt;
    double lo = 0, hi = 1;  // gamma_c decreasing: above gamma on (0,t_c), below on (t_c,1)
    for (int i = 0; i < 200 && hi - lo > 0; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (critical_gamma(f, mid) > g ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Explicit inverse of gamma_c, used to cross-check the bisection.
inline double critical_t_explicit(Family f, double g) { return f == Family::H ? 1 / (2 * g - 1) : 1 / (2 * g + 1); }

/// Strong-branch constant fixed by continuity at t_c(gamma).
inline double strong_constant(Family f, double g, double v) {
    auto tc = critical_t(f, g);
    if (!tc) throw std::domain_error("strong_constant: no strong phase at this gamma");
    return free_energy_branch_raw(f, Phase::weak, *tc, g, v) - free_energy_branch_raw(f, Phase::strong, *tc, g, v);
}

/// Branch value including the constant; the strong branch may be evaluated
/// on either side of t_c as an analytic continuation.
inline double free_energy_branch(Family f, Phase ph, double t, double g, double v) {
    double F = free_energy_branch_raw(f, ph, t, g, v);
    return ph == Phase::strong ? F + strong_constant(f, g, v) : F;
}

inline double free_energy_closed(const PhasePoint& p) {
    p.validate();
    if (p.gamma == 0) return 0;
    return free_energy_branch(p.family, p.phase(), p.t, p.gamma, p.v);
}

inline double free_energy_closed_dt(const PhasePoint& p) {
    p.validate();
    return free_energy_branch_dt(p.family, p.phase(), p.t, p.gamma, p.v);
}

/// dF/dt = gamma int rho [(1-v) z/(1 -+ t z) + (1+v) zbar/(1 -+ t zbar)] dphi.
/// The imaginary part vanishes by parity and is returned for diagnostics.
inline cplx free_energy_dt_quadrature(const PhasePoint& p) {
    p.validate();
    if (p.gamma == 0) return 0;
    const double sg = p.family == Family::H ? -1 : 1;
    auto kern = [&](double phi) {
        cplx z = std::polar(1.0, phi), zb = std::conj(z);
        return (1 - p.v) * z / (1.0 + sg * p.t * z) + (1 + p.v) * zb / (1.0 + sg * p.t * zb);
    };
    return p.gamma * integrate_density(p, kern);
}

/// F(t) = int_0^t dF/dt' dt' with the density-weighted derivative, split at t_c.
inline double free_energy_quadrature(const PhasePoint& p, int nodes = 48) {
    p.validate();
    if (p.gamma == 0) return 0;
    auto segment = [&](double a, double b, int n) {
        auto rule = gauss_legendre(n);
        return integrate_gl(
            [&](double s) { return free_energy_dt_quadrature(PhasePoint{p.family, s, p.gamma, p.v}).real(); }, a, b,
            rule);
    };
    auto total = [&](int n) {
        auto tc = critical_t(p.family, p.gamma);
        if (tc && *tc < p.t) return segment(0, *tc, n) + segment(*tc, p.t, n);
        return segment(0, p.t, n);
    };
    double a = total(nodes), b = total(2 * nodes);
    if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(b)))
        throw std::runtime_error("free_energy_quadrature: Gauss-Legendre estimates disagree");
    return b;
}

enum class FreeEnergySource { closed, density };

struct PhaseOrderResult {
    int order = 0;  // lowest discontinuous derivative, 0 if none up to third order
    double jump = 0;
    double jump2 = 0;  // weak minus strong, d2F/dt2
    double jump3 = 0;  // weak minus strong, d3F/dt3
    double err2 = 0;   // Richardson correction sizes
    double err3 = 0;
    double gamma = 0;
    double delta = 0;
};

namespace detail {

// Forward 5-point weights on offsets 0..4 for derivatives of order 1, 2, 3.
inline constexpr std::array<std::array<double, 5>, 4> forward_weights{{
    {1, 0, 0, 0, 0},
    {-25.0 / 12, 4, -3, 4.0 / 3, -0.25},
    {35.0 / 12, -26.0 / 3, 19.0 / 2, -14.0 / 3, 11.0 / 12},
    {-2.5, 9, -12, 7, -1.5},
}};

// One-sided derivative of order m of f at t, side = -1 (left) or +1 (right),
// with one Richardson step (leading error order 5-m).
template <class F>
double one_sided(F&& f, double t, int side, int m, double delta, double& err) {
    auto D = [&](double h) {
        double acc = 0;
        for (int k = 0; k < 5; ++k) acc += forward_weights[m][k] * f(t + side * k * h);
        return acc * std::pow(side, m) / std::pow(h, m);
    };
    double d1 = D(delta), d2 = D(delta / 2);
    double corr = (d2 - d1) / (std::pow(2.0, 5 - m) - 1);
    err = std::abs(corr);
    return d2 + corr;
}

}  // namespace detail

/// Jumps of d2F/dt2 and d3F/dt3 across t_c at gamma = gamma_c(family, t).
inline PhaseOrderResult phase_order(Family f, double t, double v, FreeEnergySource src = FreeEnergySource::closed,
                                    double delta = 1e-3) {
    if (!(t > 0 && t < 1)) throw std::domain_error("phase_order: t must lie in (0,1)");
    if (!(v > -1 && v < 1)) throw std::domain_error("phase_order: v must lie in (-1,1)");
    delta = std::min({delta, t / 8, (1 - t) / 8});
    if (delta < 1e-6) throw std::domain_error("phase_order: finite-difference step degenerates near the boundary");
    PhaseOrderResult r;
    r.gamma = critical_gamma(f, t);
    r.delta = delta;
    const double g = r.gamma;
    double e2w, e2s, e3w, e3s;
    if (src == FreeEnergySource::closed) {
        auto weak = [&](double s) { return free_energy_branch(f, Phase::weak, s, g, v); };
        auto strong = [&](double s) { return free_energy_branch(f, Phase::strong, s, g, v); };
        r.jump2 = detail::one_sided(weak, t, -1, 2, delta, e2w) - detail::one_sided(strong, t, 1, 2, delta, e2s);
        r.jump3 = detail::one_sided(weak, t, -1, 3, delta, e3w) - detail::one_sided(strong, t, 1, 3, delta, e3s);
    } else {
        // derivatives of the density-weighted dF/dt; the branch follows the side
        auto dF = [&](double s) { return free_energy_dt_quadrature(PhasePoint{f, s, g, v}).real(); };
        r.jump2 = detail::one_sided(dF, t, -1, 1, delta, e2w) - detail::one_sided(dF, t, 1, 1, delta, e2s);
        r.jump3 = detail::one_sided(dF, t, -1, 2, delta, e3w) - detail::one_sided(dF, t, 1, 2, delta, e3s);
    }
    r.err2 = e2w + e2s;
    r.err3 = e3w + e3s;
    auto significant = [](double j, double e) { return std::abs(j) > std::max(1e-5, 100 * e); };
    if (significant(r.jump2, r.err2)) {
        r.order = 2;
        r.jump = r.jump2;
    } else if (significant(r.jump3, r.err3)) {
        r.order = 3;
        r.jump = r.jump3;
    }
    return r;
}

}  // namespace rmtlab
