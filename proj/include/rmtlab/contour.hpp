#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "circle.hpp"

namespace rmtlab {

/// V(z) for the E/H models with beta1 = beta(1-v), beta2 = beta(1+v).
inline cplx log_potential(Family f, double t, double beta, double v, cplx z) {
    if (f == Family::E) return beta * ((1 - v) * std::log(1.0 + t * z) + (1 + v) * std::log(1.0 + t / z));
    return -beta * ((1 - v) * std::log(1.0 - t * z) + (1 + v) * std::log(1.0 - t / z));
}

/// beta_GW[(z + 1/z) - v(z - 1/z)]
inline cplx gw_potential(double beta_gw, double v, cplx z) { return beta_gw * ((1 - v) * z + (1 + v) / z); }

/// sup over the unit circle of |V(e^{i phi}) - V_GW(e^{i phi})| at beta = beta_gw/t.
inline double gw_limit_deviation(Family f, double t, double beta_gw, double v = 0, int samples = 4096) {
    if (!(t > 0 && t < 1)) throw std::domain_error("gw_limit_deviation: t must lie in (0,1)");
    if (!(v > -1 && v < 1)) throw std::domain_error("gw_limit_deviation: v must lie in (-1,1)");
    const double beta = beta_gw / t;
    double dev = 0;
    for (int k = 0; k < samples; ++k) {
        cplx z = std::polar(1.0, -pi + 2 * pi * (k + 0.5) / samples);
        dev = std::max(dev, std::abs(log_potential(f, t, beta, v, z) - gw_potential(beta_gw, v, z)));
    }
    return dev;
}

struct Contour {
    std::vector<double> phis;
    std::vector<double> radii;
    std::vector<cplx> points;
    std::vector<cplx> potential;  // V along the contour
    std::vector<int> rays_without_root;
    std::vector<int> degenerate_rays;  // Im V identically zero on the ray; radius interpolated
    bool connected = false;
    double max_abs_im = 0;
};

namespace detail {

// Radius nearest 1 (in log r) with Im V(r e^{i phi}) = 0, scanning log r on
// [-L, L] for sign changes and bisecting each bracket.
inline std::optional<double> ray_root(const std::function<double(double)>& im_on_ray, double L, int scan) {
    std::optional<double> best;
    auto consider = [&](double lr) {
        if (!best || std::abs(lr) < std::abs(std::log(*best))) best = std::exp(lr);
    };
    double prev_x = -L, prev_f = im_on_ray(std::exp(-L));
    for (int k = 1; k <= scan; ++k) {
        double x = -L + 2 * L * k / scan, fx = im_on_ray(std::exp(x));
        if (fx == 0) {
            consider(x);
        } else if (prev_f != 0 && (fx < 0) != (prev_f < 0)) {
            double a = prev_x, b = x, fa = prev_f;
            for (int i = 0; i < 200; ++i) {
                double m = 0.5 * (a + b);
                if (m == a || m == b) break;
                double fm = im_on_ray(std::exp(m));
                if (fm == 0) {
                    a = b = m;
                    break;
                }
                if ((fm < 0) == (fa < 0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            consider(0.5 * (a + b));
        }
        prev_x = x;
        prev_f = fx;
    }
    return best;
}

inline Contour trace_locus(const std::function<cplx(cplx)>& V, const std::function<bool(double)>& degenerate,
                           int resolution, double L = std::log(1e4), int scan = 4000) {
    if (resolution < 8) throw std::invalid_argument("contour: resolution must be at least 8");
    Contour c;
    std::vector<std::optional<double>> rs(resolution);
    for (int j = 0; j < resolution; ++j) {
        double phi = -pi + 2 * pi * (j + 0.5) / resolution;
        c.phis.push_back(phi);
        if (degenerate(phi)) {
            c.degenerate_rays.push_back(j);
            continue;
        }
        rs[j] = ray_root([&](double r) { return V(std::polar(r, phi)).imag(); }, L, scan);
        if (!rs[j]) c.rays_without_root.push_back(j);
    }
    // degenerate rays take the mean log radius of their nearest resolved neighbours
    for (int j : c.degenerate_rays) {
        int lo = j, hi = j;
        for (int s = 1; s < resolution && !rs[lo]; ++s) lo = (j - s + resolution) % resolution;
        for (int s = 1; s < resolution && !rs[hi]; ++s) hi = (j + s) % resolution;
        if (rs[lo] && rs[hi]) rs[j] = std::sqrt(*rs[lo] * *rs[hi]);
    }
    c.connected = c.rays_without_root.empty();
    for (int j = 0; j < resolution; ++j) {
        double r = rs[j].value_or(std::nan(""));
        c.radii.push_back(r);
        if (!rs[j]) continue;
        cplx z = std::polar(r, c.phis[j]);
        c.points.push_back(z);
        c.potential.push_back(V(z));
        c.max_abs_im = std::max(c.max_abs_im, std::abs(V(z).imag()));
        int nj = (j + 1) % resolution;
        if (rs[nj] && std::abs(std::log(*rs[nj] / r)) > 0.5) c.connected = false;
    }
    return c;
}

}  // namespace detail

/// Real locus Im V = 0 of V(z) = sum_k c_k [(1-v) z^k + (1+v) z^{-k}], traced
/// ray by ray. On each ray r^n Im V(r e^{i phi}) is a polynomial in r of
/// degree 2n; the positive root nearest r = 1 is kept.
inline Contour deformed_contour(const std::vector<double>& coeffs, double v, int resolution) {
    if (coeffs.empty()) throw std::invalid_argument("deformed_contour: need at least one coefficient");
    if (!(v > -1 && v < 1)) throw std::domain_error("deformed_contour: v must lie in (-1,1)");
    auto V = [&](cplx z) {
        cplx acc = 0, zk = 1, zmk = 1;
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            zk *= z;
            zmk /= z;
            acc += coeffs[k] * ((1 - v) * zk + (1 + v) * zmk);
        }
        return acc;
    };
    auto degenerate = [&](double phi) {
        double s = 0, m = 0;
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            s += std::abs(coeffs[k] * std::sin((k + 1) * phi));
            m += std::abs(coeffs[k]);
        }
        return s <= 1e-14 * m;
    };
    return detail::trace_locus(V, degenerate, resolution);
}

/// Same tracer applied to the E/H logarithmic potentials.
inline Contour log_potential_locus(Family f, double t, double beta, double v, int resolution) {
    if (!(t > 0 && t < 1)) throw std::domain_error("log_potential_locus: t must lie in (0,1)");
    if (!(v > -1 && v < 1)) throw std::domain_error("log_potential_locus: v must lie in (-1,1)");
    return detail::trace_locus([&](cplx z) { return log_potential(f, t, beta, v, z); },
                               [](double) { return false; }, resolution);
}

}  // namespace rmtlab
