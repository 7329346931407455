#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "common.hpp"
#include "quadrature.hpp"
#include "symbol.hpp"

namespace rmtlab {

enum class Phase { weak, strong };

inline const char* to_string(Phase p) { return p == Phase::weak ? "weak" : "strong"; }

/// gamma_c = (1+t)/2t for H, (1-t)/2t for E.
inline double critical_gamma(Family f, double t) {
    if (!(t > 0 && t < 1)) throw std::domain_error("critical_gamma: t must lie in (0,1)");
    return f == Family::H ? (1 + t) / (2 * t) : (1 - t) / (2 * t);
}

struct PhasePoint {
    Family family = Family::H;
    double t = 0.5;
    double gamma = 0;
    double v = 0;

    static PhasePoint make(Family f, double t, double gamma, double v = 0) {
        PhasePoint p{f, t, gamma, v};
        p.validate();
        return p;
    }
    void validate() const {
        if (!(t > 0 && t < 1)) throw std::domain_error("phase point: t must lie in (0,1)");
        if (!(gamma >= 0)) throw std::domain_error("phase point: gamma must be nonnegative");
        if (!(v > -1 && v < 1)) throw std::domain_error("phase point: v must lie in (-1,1)");
    }
    Phase phase() const { return gamma <= critical_gamma(family, t) ? Phase::weak : Phase::strong; }
};

/// sin^2(phi0/2) of the gapped phase.
inline double support_sin2(const PhasePoint& p) {
    p.validate();
    if (p.phase() != Phase::strong) throw std::domain_error("support_boundary: weak phase has no gap");
    const double t = p.t, g = p.gamma;
    if (p.family == Family::H) return (1 - t) * (1 - t) * (2 * g - 1) / (4 * t * (g - 1) * (g - 1));
    return (1 + t) * (1 + t) * (2 * g + 1) / (4 * t * (g + 1) * (g + 1));
}

inline double support_boundary(const PhasePoint& p) {
    return 2 * std::asin(std::sqrt(std::min(1.0, support_sin2(p))));
}

namespace detail {

// Closed forms without range checks, so that formal continuations such as
// (gamma, t) -> (-gamma, -t) can be evaluated.
inline cplx weak_density(Family f, double t, double g, double v, double phi) {
    const cplx iv(0, v);
    if (f == Family::H)
        return (1.0 + 2 * g * t * (std::cos(phi) - t - iv * std::sin(phi)) / (1 + t * t - 2 * t * std::cos(phi))) /
               (2 * pi);
    return (1.0 + 2 * g * t * (std::cos(phi) + t - iv * std::sin(phi)) / (1 + t * t + 2 * t * std::cos(phi))) / (2 * pi);
}

// Strong-phase density divided by sqrt(sin^2(phi0/2) - sin^2(phi/2)).
inline cplx strong_core(Family f, double t, double g, double v, double phi) {
    const cplx iv(0, v);
    const double c = std::cos(phi / 2), s = std::sin(phi / 2);
    if (f == Family::H)
        return 2 * t * (g - 1) / (pi * (1 - t)) * ((1 - t) * c - iv * (1 + t) * s) /
               ((1 - t) * (1 - t) + 4 * t * s * s);
    return 2 * t * (g + 1) / (pi * (1 + t)) * ((1 + t) * c - iv * (1 - t) * s) / ((1 + t) * (1 + t) - 4 * t * s * s);
}

}  // namespace detail

inline cplx density_circle(const PhasePoint& p, double phi) {
    p.validate();
    if (std::abs(phi) > pi) throw std::domain_error("density_circle: |phi| must not exceed pi");
    if (p.phase() == Phase::weak) return detail::weak_density(p.family, p.t, p.gamma, p.v, phi);
    const double s0 = support_sin2(p), s = std::sin(phi / 2);
    const double gap = s0 - s * s;
    if (gap < -1e-14) throw std::domain_error("density_circle: phi outside the support");
    return detail::strong_core(p.family, p.t, p.gamma, p.v, phi) * std::sqrt(std::max(0.0, gap));
}

namespace detail {

// Integral over the support of rho(phi) F(phi). Weak phase: periodic
// trapezoid. Strong phase: phi = phi0 u, where
//   sin^2(phi0/2) - sin^2(phi/2) = (1-u^2) S(u),  S smooth and positive,
// so rho dphi = g(u) sqrt(1-u^2) du with g entire.
template <class F>
cplx integrate_density_fixed(const PhasePoint& p, F&& fn, int n) {
    cplx acc = 0;
    if (p.phase() == Phase::weak) {
        for (int k = 0; k < n; ++k) {
            double th = -pi + 2 * pi * (k + 0.5) / n;
            acc += weak_density(p.family, p.t, p.gamma, p.v, th) * fn(th);
        }
        return acc * (2 * pi / n);
    }
    const double phi0 = support_boundary(p);
    auto r = gauss_chebyshev_2(n);
    for (int k = 0; k < n; ++k) {
        double u = r.nodes[k], th = phi0 * u;
        double S = std::sin(phi0 * (1 - u) / 2) * std::sin(phi0 * (1 + u) / 2) / ((1 - u) * (1 + u));
        acc += r.weights[k] * phi0 * strong_core(p.family, p.t, p.gamma, p.v, th) * std::sqrt(S) * fn(th);
    }
    return acc;
}

}  // namespace detail

template <class F>
cplx integrate_density(const PhasePoint& p, F&& fn, double tol = 1e-13) {
    p.validate();
    cplx prev = detail::integrate_density_fixed(p, fn, 128);
    for (int n = 256; n <= (1 << 17); n *= 2) {
        cplx cur = detail::integrate_density_fixed(p, fn, n);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw std::runtime_error("integrate_density: quadrature did not converge");
}

inline cplx density_normalization(const PhasePoint& p) {
    return integrate_density(p, [](double) { return 1.0; });
}

/// Left-hand side of the saddle-point equation,
///   -i gamma t [(1-v) e^{i phi}/(1 -+ t e^{i phi}) - (1+v) e^{-i phi}/(1 -+ t e^{-i phi})]
/// with - for H and + for E.
inline cplx saddle_lhs(const PhasePoint& p, double phi) {
    const double sg = p.family == Family::H ? -1 : 1;
    const cplx z = std::polar(1.0, phi), zb = std::conj(z);
    return cplx(0, -p.gamma * p.t) * ((1 - p.v) * z / (1.0 + sg * p.t * z) - (1 + p.v) * zb / (1.0 + sg * p.t * zb));
}

/// P int rho(theta) cot((phi-theta)/2) dtheta over the support.
inline cplx saddle_pv(const PhasePoint& p, double phi, double tol = 1e-10) {
    p.validate();
    if (p.phase() == Phase::weak) {
        // full circle: P int cot = 0, and the subtracted integrand is periodic
        const cplx rphi = detail::weak_density(p.family, p.t, p.gamma, p.v, phi);
        auto est = [&](int n) {
            cplx acc = 0;
            for (int k = 0; k < n; ++k) {
                double th = phi + 2 * pi * (k + 0.5) / n;
                acc += (detail::weak_density(p.family, p.t, p.gamma, p.v, th) - rphi) / std::tan((phi - th) / 2);
            }
            return acc * (2 * pi / n);
        };
        cplx prev = est(256);
        for (int n = 512; n <= (1 << 18); n *= 2) {
            cplx cur = est(n);
            if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
            prev = cur;
        }
        throw std::runtime_error("saddle_pv: quadrature did not converge");
    }
    const double phi0 = support_boundary(p);
    if (!(std::abs(phi) < phi0)) throw std::domain_error("saddle_pv: phi must lie strictly inside the support");
    const double uphi = phi / phi0;
    // rho dtheta = g(u) sqrt(1-u^2) du and cot(phi0 (uphi-u)/2) = R(u)/(uphi-u)
    auto gR = [&](double u) -> cplx {
        double S = std::sin(phi0 * (1 - u) / 2) * std::sin(phi0 * (1 + u) / 2) / ((1 - u) * (1 + u));
        cplx g = phi0 * detail::strong_core(p.family, p.t, p.gamma, p.v, phi0 * u) * std::sqrt(S);
        double d = uphi - u;
        double R = std::abs(d) < 1e-9 ? 2 / phi0 : d / std::tan(phi0 * d / 2);
        return g * R;
    };
    return -pv_integral(gR, ChebWeight::second, uphi, 256, tol);
}

inline double saddle_residual(const PhasePoint& p, double phi) {
    if (p.gamma == 0) return 0;
    return std::abs(saddle_lhs(p, phi) - saddle_pv(p, phi));
}

/// a_n = int rho(phi) cos(n phi) dphi; in the weak phase at v = 0 this is
/// gamma t^n for H and -gamma (-t)^n for E.
inline double density_cos_moment(const PhasePoint& p, int n) {
    if (n < 0) throw std::invalid_argument("density_cos_moment: negative order");
    return integrate_density(p, [n](double phi) { return std::cos(n * phi); }).real();
}

/// Formal weak-phase coefficient for any real (gamma, t), |t| < 1.
inline double weak_cos_moment_formal(Family f, double t, double g, int n) {
    return f == Family::H ? g * std::pow(t, n) : -g * std::pow(-t, n);
}

struct DensityProfile {
    PhasePoint point;
    Phase phase;
    double support_half_width;  // phi0, pi in the weak phase
    std::vector<double> phis;
    std::vector<cplx> values;
};

/// Samples on n points spanning the closed support.
inline DensityProfile density_profile(const PhasePoint& p, int n) {
    if (n < 2) throw std::invalid_argument("density_profile: need at least 2 samples");
    DensityProfile d{p, p.phase(), p.phase() == Phase::weak ? pi : support_boundary(p), {}, {}};
    for (int k = 0; k < n; ++k) {
        double phi = -d.support_half_width + 2 * d.support_half_width * k / (n - 1);
        if (k == n - 1) phi = d.support_half_width;
        d.phis.push_back(phi);
        d.values.push_back(density_circle(p, phi));
    }
    return d;
}

}  // namespace rmtlab
