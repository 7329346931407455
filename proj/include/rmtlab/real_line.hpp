#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "circle.hpp"

namespace rmtlab {

/// x = tan(phi/2), so that e^{i phi} = (1+ix)/(1-ix).
inline double stereo_map(double phi) {
    if (!(std::abs(phi) < pi)) throw std::domain_error("stereo_map: |phi| must be below pi");
    return std::tan(phi / 2);
}

inline double stereo_inverse(double x) { return 2 * std::atan(x); }

struct StereoParams {
    Family family = Family::E;
    double t = 0.5;
    double gamma = 1;
    double v = 0;
    double b = 0;  // monomial shift strength, E family only

    double t0() const { return (1 + t) / (1 - t); }

    static StereoParams make(double t, double gamma, double v = 0, double b = 0, Family f = Family::E) {
        StereoParams p{f, t, gamma, v, b};
        p.validate();
        return p;
    }
    void validate() const {
        if (!(t > 0 && t < 1)) throw std::domain_error("stereo: t must lie in (0,1)");
        if (!(v > -1 && v < 1)) throw std::domain_error("stereo: v must lie in (-1,1)");
        if (!(gamma > critical_gamma(family, t)))
            throw std::domain_error("stereo: the projection exists only in the gapped phase");
        if (family == Family::H && b != 0) throw std::domain_error("stereo: the shift b is defined for E only");
    }
};

// One-cut solution of P int rho(y)/(x-y) dy = W(x) on [a,b] for rational
// W(x) = sum_p c_p/(x - z_p). With s(z) = sqrt(z-a) sqrt(z-b),
//   Psi(z) = W(z) - s(z) sum_p c_p/((z - z_p) s(z_p)),
//   rho(x) = sqrt((x-a)(b-x))/pi * sum_p c_p/((x - z_p) s(z_p)),
// and Psi ~ 1/z requires sum c_p/s_p = 0 and sum c_p z_p/s_p = sum c_p - 1.
struct Pole {
    cplx z;
    cplx c;
};

inline cplx cut_sqrt(cplx z, double a, double b) { return std::sqrt(z - a) * std::sqrt(z - b); }

inline cplx one_cut_density(const std::vector<Pole>& poles, double a, double b, double x) {
    if (x < a || x > b) throw std::domain_error("density_real: x outside the support");
    cplx m = 0;
    for (auto& p : poles) m += p.c / ((x - p.z) * cut_sqrt(p.z, a, b));
    return std::sqrt(std::max(0.0, (x - a) * (b - x))) / pi * m;
}

struct OneCutConditions {
    cplx order0;  // sum c_p/s_p
    cplx order1;  // sum c_p z_p/s_p - sum c_p + 1
};

inline OneCutConditions one_cut_conditions(const std::vector<Pole>& poles, double a, double b) {
    OneCutConditions r{0, 1};
    for (auto& p : poles) {
        cplx s = cut_sqrt(p.z, a, b);
        r.order0 += p.c / s;
        r.order1 += p.c * p.z / s - p.c;
    }
    return r;
}

/// Partial fractions of the stereographic W(x) = (LHS(2 arctan x) + x)/(1+x^2).
inline std::vector<Pole> stereo_poles(const StereoParams& p) {
    const double g = p.gamma, v = p.v, t0 = p.t0();
    const cplx i(0, 1);
    if (p.family == Family::E)
        return {{i, (g + 1 + g * v) / 2 + i * p.b},
                {-i, (g + 1 - g * v) / 2 - i * p.b},
                {i * t0, -g * (1 + v) / 2},
                {-i * t0, -g * (1 - v) / 2}};
    return {{i, (1 - g - g * v) / 2}, {-i, (1 - g + g * v) / 2}, {i / t0, g * (1 + v) / 2}, {-i / t0, g * (1 - v) / 2}};
}

/// A^2 = (2g+1)(1+t)^2 / ((2g+1-t)((2g+1)t-1)) for E; for H,
/// A^2 = (2g-1)/((g-1)^2 t0^2 - g^2).
inline double boundary_A(const StereoParams& p) {
    p.validate();
    const double g = p.gamma, t = p.t;
    if (p.family == Family::E) return std::sqrt((2 * g + 1) * (1 + t) * (1 + t) / ((2 * g + 1 - t) * ((2 * g + 1) * t - 1)));
    const double t0 = p.t0();
    return std::sqrt((2 * g - 1) / ((g - 1) * (g - 1) * t0 * t0 - g * g));
}

/// The E formula with the denominator (2g+1-t)(2g-1+t), kept for comparison.
inline double boundary_A_printed(const StereoParams& p) {
    p.validate();
    const double g = p.gamma, t = p.t;
    return std::sqrt((2 * g + 1) * (1 + t) * (1 + t) / ((2 * g + 1 - t) * (2 * g - 1 + t)));
}

/// (g+1)/sqrt(A^2+1) - g t0/sqrt(A^2+t0^2), zero at the symmetric E boundary.
inline double normalization_condition(const StereoParams& p, double A) {
    const double g = p.gamma, t0 = p.t0();
    return (g + 1) / std::sqrt(A * A + 1) - g * t0 / std::sqrt(A * A + t0 * t0);
}

/// Root of normalization_condition by bisection in log A.
inline double boundary_A_numeric(const StereoParams& p) {
    p.validate();
    if (p.family != Family::E) throw std::domain_error("boundary_A_numeric: E family only");
    double lo = -30, hi = 30;
    auto f = [&](double la) { return normalization_condition(p, std::exp(la)); };
    double flo = f(lo);
    if ((flo < 0) == (f(hi) < 0)) throw std::runtime_error("boundary_A_numeric: no sign change");
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (lo + hi);
        if (m == lo || m == hi) break;
        double fm = f(m);
        if ((fm < 0) == (flo < 0)) {
            lo = m;
            flo = fm;
        } else {
            hi = m;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

/// Symmetric-support density from the pole-residue engine (b = 0). For
/// v != 0 the imaginary part reads -i v g x in both numerators.
inline cplx density_real(const StereoParams& p, double x) {
    p.validate();
    if (p.b != 0) throw std::domain_error("density_real: requires b = 0, use asymmetric_support");
    const double A = boundary_A(p);
    if (std::abs(x) > A) throw std::domain_error("density_real: |x| exceeds A");
    return one_cut_density(stereo_poles(p), -A, A, x);
}

/// E density with +i v g x in both numerators, the alternative sign convention.
inline cplx density_real_printed(const StereoParams& p, double x) {
    p.validate();
    if (p.family != Family::E || p.b != 0) throw std::domain_error("density_real_printed: E family with b = 0");
    const double A = boundary_A(p), g = p.gamma, t0 = p.t0();
    if (std::abs(x) > A) throw std::domain_error("density_real: |x| exceeds A");
    const cplx ivx(0, p.v * g * x);
    return std::sqrt(A * A - x * x) / pi *
           (((1 + g) + ivx) / (std::sqrt(A * A + 1) * (x * x + 1)) -
            (g * t0 + ivx) / (std::sqrt(A * A + t0 * t0) * (x * x + t0 * t0)));
}

/// |P int rho(y)/(x-y) dy - W(x)| on the support [a, b].
inline double real_saddle_residual(const std::vector<Pole>& poles, double a, double b, double x) {
    if (!(x > a && x < b)) throw std::domain_error("real_saddle_residual: x must lie inside the support");
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    auto M = [&](double u) {
        double y = mid + half * u;
        cplx m = 0;
        for (auto& p : poles) m += p.c / ((y - p.z) * cut_sqrt(p.z, a, b));
        return m;
    };
    cplx pv = -half / pi * pv_integral(M, ChebWeight::second, (x - mid) / half);
    cplx W = 0;
    for (auto& p : poles) W += p.c / (x - p.z);
    return std::abs(pv - W);
}

struct SupportSolution {
    double A = 0;
    double B = 0;
    int iterations = 0;
    double residual = 0;  // max of the scaled |order0|, |order1|
};

class NewtonFailure : public std::runtime_error {
public:
    NewtonFailure(const std::string& what, double res0, double res1)
        : std::runtime_error(what), residual0(res0), residual1(res1) {}
    double residual0, residual1;
};

/// Support [-A, B] for the E model with shift b: damped Newton on the z^0 and
/// z^1 conditions of the one-cut engine, seeded at A = B = boundary_A.
inline SupportSolution asymmetric_support(const StereoParams& p, double b_bound = 10.0, double tol = 1e-15) {
    p.validate();
    if (p.family != Family::E) throw std::domain_error("asymmetric_support: E family only");
    if (std::abs(p.v) > 0) throw std::domain_error("asymmetric_support: requires v = 0");
    if (!(std::abs(p.b) <= b_bound)) throw std::domain_error("asymmetric_support: |b| exceeds the configured bound");
    const auto poles = stereo_poles(p);
    // each condition is scaled by the size of its terms
    auto F = [&](double A, double B) {
        auto c = one_cut_conditions(poles, -A, B);
        double m0 = 0, m1 = 1;
        for (auto& q : poles) {
            double s = std::abs(cut_sqrt(q.z, -A, B));
            m0 += std::abs(q.c) / s;
            m1 += std::abs(q.c) * (std::abs(q.z) / s + 1);
        }
        return std::array<double, 2>{c.order0.real() / m0, c.order1.real() / m1};
    };
    auto norm = [](const std::array<double, 2>& f) { return std::max(std::abs(f[0]), std::abs(f[1])); };
    SupportSolution s;
    s.A = s.B = boundary_A(StereoParams{p.family, p.t, p.gamma, 0, 0});
    auto f = F(s.A, s.B);
    for (int it = 0; it < 100; ++it) {
        s.iterations = it;
        if (norm(f) <= tol) break;
        double hA = 1e-7 * s.A, hB = 1e-7 * s.B;
        auto fAp = F(s.A + hA, s.B), fAm = F(s.A - hA, s.B), fBp = F(s.A, s.B + hB), fBm = F(s.A, s.B - hB);
        double j00 = (fAp[0] - fAm[0]) / (2 * hA), j01 = (fBp[0] - fBm[0]) / (2 * hB);
        double j10 = (fAp[1] - fAm[1]) / (2 * hA), j11 = (fBp[1] - fBm[1]) / (2 * hB);
        double det = j00 * j11 - j01 * j10;
        if (det == 0 || !std::isfinite(det)) break;
        double dA = -(j11 * f[0] - j01 * f[1]) / det, dB = -(-j10 * f[0] + j00 * f[1]) / det;
        double lam = 1;
        bool accepted = false;
        for (int h = 0; h < 60; ++h, lam *= 0.5) {
            double A = s.A + lam * dA, B = s.B + lam * dB;
            if (!(A > 0 && B > 0)) continue;
            auto fn = F(A, B);
            if (norm(fn) < norm(f)) {
                s.A = A;
                s.B = B;
                f = fn;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        if (std::max(s.A, s.B) > 1e8)
            throw NewtonFailure("asymmetric_support: support escapes to infinity, |b| beyond the one-cut range",
                                std::abs(f[0]), std::abs(f[1]));
    }
    s.residual = norm(f);
    if (!(s.residual <= 1e-12))
        throw NewtonFailure("asymmetric_support: Newton did not converge", std::abs(f[0]), std::abs(f[1]));
    return s;
}

/// Alternative closed-form z^0 / z^1 constraints, built from
/// h~(x) = (x^4 + A^2 B^2 + x^2 (A^2+B^2))^{1/4}; reported as a diagnostic.
inline std::array<double, 2> printed_support_constraints(const StereoParams& p, double A, double B) {
    const double g = p.gamma, t0 = p.t0(), b = p.b;
    auto ht = [&](double x) { return std::pow(x * x * x * x + A * A * B * B + x * x * (A * A + B * B), 0.25); };
    const double h0 = ht(t0), h1 = ht(1);
    double c0 = g / (2 * h0) * ((t0 * t0 + A * B) / (h0 * h0) - 1) -
                1 / (2 * h1) * ((1 + A * B) / (h1 * h1) * (2 * b - g - 1) + 2 * b + g + 1);
    double c1 = g * t0 / (2 * h0) * ((t0 * t0 + A * B) / (h0 * h0) + 1) -
                1 / (2 * h1) * ((1 + A * B) / (h1 * h1) * (2 * b + g + 1) - 2 * b + g + 1);
    return {c0, c1};
}

struct RealLineDensity {
    StereoParams params;
    double A = 0;
    double B = 0;
    std::vector<double> xs;
    std::vector<cplx> values;
};

/// Samples on n points over [-A, B]; b != 0 solves the support first.
inline RealLineDensity real_line_profile(const StereoParams& p, int n) {
    if (n < 2) throw std::invalid_argument("real_line_profile: need at least 2 samples");
    RealLineDensity d{p, 0, 0, {}, {}};
    if (p.b != 0) {
        auto s = asymmetric_support(p);
        d.A = s.A;
        d.B = s.B;
    } else {
        d.A = d.B = boundary_A(p);
    }
    auto poles = stereo_poles(p);
    for (int k = 0; k < n; ++k) {
        double x = k == n - 1 ? d.B : -d.A + (d.A + d.B) * k / (n - 1);
        d.xs.push_back(x);
        d.values.push_back(one_cut_density(poles, -d.A, d.B, x));
    }
    return d;
}

/// int rho(x) F(x) dx over [-A, B] by second-kind Gauss-Chebyshev after x = mid + half u.
template <class F>
cplx integrate_real_density(const std::vector<Pole>& poles, double a, double b, F&& fn, int n = 2048) {
    auto r = gauss_chebyshev_2(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx acc = 0;
    for (int k = 0; k < n; ++k) {
        double x = mid + half * r.nodes[k];
        cplx m = 0;
        for (auto& p : poles) m += p.c / ((x - p.z) * cut_sqrt(p.z, a, b));
        acc += r.weights[k] * half * half / pi * m * fn(x);
    }
    return acc;
}

/// |prod_{j<k} |e^{i phi_j} - e^{i phi_k}|^2 - prod_{j<k} 4 (x_j - x_k)^2 prod_j (1+x_j^2)^{-(K-1)}|,
/// relative to the left side.
inline double vandermonde_pushforward_error(const std::vector<double>& phis) {
    const std::size_t K = phis.size();
    double lhs = 1, rhs = 1;
    for (std::size_t j = 0; j < K; ++j) {
        double xj = stereo_map(phis[j]);
        rhs *= std::pow(1 + xj * xj, -static_cast<double>(K - 1));
        for (std::size_t k = j + 1; k < K; ++k) {
            lhs *= std::norm(std::polar(1.0, phis[j]) - std::polar(1.0, phis[k]));
            double xk = stereo_map(phis[k]);
            rhs *= 4 * (xj - xk) * (xj - xk);
        }
    }
    return std::abs(lhs - rhs) / std::abs(lhs);
}

}  // namespace rmtlab
