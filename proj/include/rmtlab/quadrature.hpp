#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmtlab {

enum class RuleKind { gauss_chebyshev_1, gauss_chebyshev_2, gauss_legendre };

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    RuleKind kind;
};

/// Nodes for weight 1/sqrt(1-y^2); weights sum to pi.
inline QuadratureRule gauss_chebyshev_1(int n) {
    if (n < 2) throw std::invalid_argument("quadrature: need at least 2 nodes");
    QuadratureRule r{{}, {}, RuleKind::gauss_chebyshev_1};
    r.nodes.resize(n);
    r.weights.assign(n, std::numbers::pi / n);
    for (int k = 0; k < n; ++k) r.nodes[k] = -std::cos((2.0 * k + 1) * std::numbers::pi / (2.0 * n));
    return r;
}

/// Nodes for weight sqrt(1-y^2); weights sum to pi/2.
inline QuadratureRule gauss_chebyshev_2(int n) {
    if (n < 2) throw std::invalid_argument("quadrature: need at least 2 nodes");
    QuadratureRule r{{}, {}, RuleKind::gauss_chebyshev_2};
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int k = 0; k < n; ++k) {
        double th = (k + 1.0) * std::numbers::pi / (n + 1.0);
        r.nodes[k] = -std::cos(th);
        r.weights[k] = std::numbers::pi / (n + 1.0) * std::sin(th) * std::sin(th);
    }
    return r;
}

/// Unit weight on [-1,1]; weights sum to 2.
inline QuadratureRule gauss_legendre(int n) {
    if (n < 2) throw std::invalid_argument("quadrature: need at least 2 nodes");
    QuadratureRule r{{}, {}, RuleKind::gauss_legendre};
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double w = 2 / ((1 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.weights[i] = w;
        r.nodes[n - 1 - i] = x;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

/// Integral of f over [lo,hi] with an n-point Gauss-Legendre rule.
template <class F>
auto integrate_gl(F&& f, double lo, double hi, const QuadratureRule& gl) {
    double h = (hi - lo) / 2, m = (hi + lo) / 2;
    decltype(f(0.0)) acc{};
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) acc += gl.weights[i] * f(m + h * gl.nodes[i]);
    return acc * h;
}

/// Chebyshev-type weights on (-1,1):
///   first  1/sqrt(1-y^2)      second sqrt(1-y^2)
///   third  sqrt((1+y)/(1-y))  fourth sqrt((1-y)/(1+y))
enum class ChebWeight { first, second, third, fourth };

namespace detail {

template <class F>
auto weighted_sum(F&& f, ChebWeight w, int n) {
    decltype(f(0.0)) acc{};
    if (w == ChebWeight::second) {
        auto r = gauss_chebyshev_2(n);
        for (int k = 0; k < n; ++k) acc += r.weights[k] * f(r.nodes[k]);
        return acc;
    }
    auto r = gauss_chebyshev_1(n);
    for (int k = 0; k < n; ++k) {
        double y = r.nodes[k];
        double m = w == ChebWeight::first ? 1.0 : (w == ChebWeight::third ? 1 + y : 1 - y);
        acc += r.weights[k] * m * f(y);
    }
    return acc;
}

inline double weight_pv(ChebWeight w, double x) {
    switch (w) {
        case ChebWeight::first: return 0;
        case ChebWeight::second: return -std::numbers::pi * x;
        case ChebWeight::third: return std::numbers::pi;
        case ChebWeight::fourth: return -std::numbers::pi;
    }
    return 0;
}

}  // namespace detail

/// Integral of f(y) w(y) over (-1,1). Node count doubles from n0 until two
/// successive estimates agree to tol.
template <class F>
auto integrate_weighted(F&& f, ChebWeight w, int n0 = 256, double tol = 1e-10, int n_max = 1 << 16) {
    auto prev = detail::weighted_sum(f, w, n0);
    for (int n = 2 * n0; n <= n_max; n *= 2) {
        auto cur = detail::weighted_sum(f, w, n);
        if (std::abs(cur - prev) <= tol * std::max(1.0, static_cast<double>(std::abs(cur)))) return cur;
        prev = cur;
    }
    throw std::runtime_error("integrate_weighted: no convergence");
}

/// Principal value of the integral of f(y) w(y) / (y - x) over (-1,1), with a
/// fixed node count. The singular part is removed by f(y) - f(x) and the
/// principal value of w itself is added back in closed form.
template <class F>
auto pv_integral_fixed(F&& f, ChebWeight w, double x, int n) {
    if (!(x > -1 && x < 1)) throw std::domain_error("pv_integral: x must lie strictly inside (-1,1)");
    auto fx = f(x);
    auto g = [&](double y) {
        double d = y - x;
        if (std::abs(d) < 1e-12) {
            double h = 1e-6;
            return (f(x + h) - f(x - h)) / (2 * h);
        }
        return (f(y) - fx) / d;
    };
    return detail::weighted_sum(g, w, n) + fx * detail::weight_pv(w, x);
}

template <class F>
auto pv_integral(F&& f, ChebWeight w, double x, int n0 = 256, double tol = 1e-10, int n_max = 1 << 16) {
    auto prev = pv_integral_fixed(f, w, x, n0);
    for (int n = 2 * n0; n <= n_max; n *= 2) {
        auto cur = pv_integral_fixed(f, w, x, n);
        if (std::abs(cur - prev) <= tol * std::max(1.0, static_cast<double>(std::abs(cur)))) return cur;
        prev = cur;
    }
    throw std::runtime_error("pv_integral: no convergence");
}

/// Same with the node family taken from a rule (first or second kind).
template <class F>
auto pv_integral(F&& f, const QuadratureRule& rule, double x) {
    if (rule.kind == RuleKind::gauss_legendre)
        throw std::invalid_argument("pv_integral: rule must be of Chebyshev type");
    ChebWeight w = rule.kind == RuleKind::gauss_chebyshev_1 ? ChebWeight::first : ChebWeight::second;
    return pv_integral_fixed(f, w, x, static_cast<int>(rule.nodes.size()));
}

}  // namespace rmtlab
