#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "common.hpp"
#include "groups.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace rmtlab {

// Large-K limit of Z^{G(K)}(beta) = Z(beta)/Z(0) for the Hankel weight
// f(x) (1+x)^a (1-x)^b with f = (xi + x)^beta (E) or (xi - x)^{-beta} (H).
//   log Z_inf = single + endpoint + double
// single:   (a+b)/(2 pi) int log f / sqrt(1-x^2) dx, after the (2t)^{+-beta K}
//           prefactor has cancelled the K-linear exponential
// endpoint: -(a log f(-1) + b log f(1))/2
// double:   int log f/sqrt(1-x^2) [P int f'/f sqrt(1-y^2)/(x-y) dy/2pi] dx/2pi
//           (kernel 1/(x-y); with 1/(y-x) the sign disagrees with the exact limit)
// The Barnes-G/Gamma block cancels against the Haar normalization.

struct BasorChenTerms {
    double single = 0;
    double endpoint = 0;
    double double_integral = 0;
    double gblock_printed_log = 0;  // log of the printed G/Gamma block, diagnostic
    double total = 0;
};

namespace detail {

struct BCSymbol {
    Family family;
    double beta, t, xi;

    double log_f(double x) const {
        return family == Family::E ? beta * std::log(xi + x) : -beta * std::log(xi - x);
    }
    double dlog_f(double x) const { return family == Family::E ? beta / (xi + x) : beta / (xi - x); }
};

inline BCSymbol bc_symbol(Family f, double beta, double t) {
    if (!(t > 0 && t < 1)) throw std::domain_error("basor_chen: t must lie in (0,1)");
    if (!std::isfinite(beta)) throw std::domain_error("basor_chen: beta must be finite");
    return {f, beta, t, (1 + t * t) / (2 * t)};
}

}  // namespace detail

/// (1/4 pi^2) int log f/sqrt(1-x^2) P int f'/f sqrt(1-y^2)/(x-y) dy dx by nested quadrature.
inline double basor_chen_double_integral(Family f, double beta, double t, int outer = 128, double tol = 1e-12) {
    auto s = detail::bc_symbol(f, beta, t);
    if (beta == 0) return 0;
    auto est = [&](int n) {
        auto r = gauss_chebyshev_1(n);
        double acc = 0;
        for (int k = 0; k < n; ++k) {
            double x = r.nodes[k];
            double inner = -pv_integral([&](double y) { return s.dlog_f(y); }, ChebWeight::second, x, 64, 1e-13);
            acc += r.weights[k] * s.log_f(x) * inner;
        }
        return acc / (4 * pi * pi);
    };
    double prev = est(outer);
    for (int n = 2 * outer; n <= 4096; n *= 2) {
        double cur = est(n);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw std::runtime_error("basor_chen_double_integral: quadrature did not converge");
}

/// Coefficient oracle: with log f = c_0/2 + sum c_k T_k, the double integral is (1/8) sum k c_k^2.
/// For these symbols c_k = 2 beta (-+t)^k / k up to sign, giving -(beta^2/2) log(1-t^2).
inline double basor_chen_double_integral_szego(Family f, double beta, double t, int n_coeffs = 512) {
    auto s = detail::bc_symbol(f, beta, t);
    if (n_coeffs < 2) throw std::invalid_argument("basor_chen_double_integral_szego: need at least 2 coefficients");
    // discrete cosine transform on Chebyshev points
    std::vector<double> vals(n_coeffs);
    for (int j = 0; j < n_coeffs; ++j) vals[j] = s.log_f(std::cos(pi * (j + 0.5) / n_coeffs));
    double acc = 0;
    for (int k = 1; k < n_coeffs; ++k) {
        double ck = 0;
        for (int j = 0; j < n_coeffs; ++j) ck += vals[j] * std::cos(pi * k * (j + 0.5) / n_coeffs);
        ck *= 2.0 / n_coeffs;
        acc += k * ck * ck;
    }
    return acc / 8;
}

inline double basor_chen_double_integral_closed(double beta, double t) { return -0.5 * beta * beta * std::log1p(-t * t); }

/// log of G((a+b+1)/2)^2 G((a+b+2)/2)^2 / (G(a+b+1) G(a+1) G(b+1)) * Gamma((a+b+1)/2);
/// at a+b = -1 the zeros of G cancel and the limit is 1/2.
inline double gblock_printed_log(double a, double b) {
    const double s = a + b + 1;
    if (std::abs(s) < 1e-14) {
        // G(e)^2 Gamma(e)/G(2e) -> 1/2
        return std::log(0.5) + 2 * log_barnes_g(0.5 + s / 2) - log_barnes_g(a + 1) - log_barnes_g(b + 1);
    }
    return 2 * log_barnes_g(s / 2) + 2 * log_barnes_g((s + 1) / 2) - log_barnes_g(s) - log_barnes_g(a + 1) -
           log_barnes_g(b + 1) + std::lgamma(s / 2);
}

inline BasorChenTerms basor_chen_terms(Family f, const GroupKind& g, double beta, double t) {
    auto s = detail::bc_symbol(f, beta, t);
    auto [a, b] = g.jacobi_exponents();
    BasorChenTerms r;
    double mean_log = integrate_weighted([&](double x) { return s.log_f(x); }, ChebWeight::first, 64, 1e-14) / pi;
    r.single = 0.5 * (a + b) * mean_log;
    r.endpoint = -0.5 * (a * s.log_f(-1) + b * s.log_f(1));
    r.double_integral = basor_chen_double_integral(f, beta, t);
    r.gblock_printed_log = gblock_printed_log(a, b);
    r.total = r.single + r.endpoint + r.double_integral;
    return r;
}

/// log of the predicted large-K value of Z^{G(K)}_{E/H}(beta).
inline double basor_chen_asymptotic(Family f, const GroupKind& g, double beta, double t) {
    return basor_chen_terms(f, g, beta, t).total;
}

/// Partial sums S_0..S_{n_max} of +-(beta^2/4)(1-t^2) sum (-+t)^n U_n(-+xi)/(n+1),
/// upper sign for E. (-+t)^n U_n(-+xi) = t^n U_n(xi) =: q_n with
/// q_0 = 1, q_1 = 1+t^2, q_{n+1} = (1+t^2) q_n - t^2 q_{n-1}.
inline std::vector<double> printed_series_partial(Family f, double beta, double t, long n_max) {
    if (!(t > 0 && t < 1)) throw std::domain_error("printed_series_partial: t must lie in (0,1)");
    if (n_max < 0 || n_max > 10000) throw std::domain_error("printed_series_partial: n_max must lie in [0, 10^4]");
    const double sg = f == Family::E ? 1 : -1, pref = sg * beta * beta / 4 * (1 - t * t);
    std::vector<double> sums;
    sums.reserve(n_max + 1);
    double q0 = 1, q1 = 1 + t * t, acc = 0;
    for (long n = 0; n <= n_max; ++n) {
        double q = n == 0 ? q0 : q1;
        acc += pref * q / (n + 1);
        sums.push_back(acc);
        if (n >= 1) {
            double q2 = (1 + t * t) * q1 - t * t * q0;
            q0 = q1;
            q1 = q2;
        }
    }
    return sums;
}

struct DivergenceReport {
    Family family;
    double beta = 0, t = 0;
    std::vector<long> n_values;
    std::vector<double> partial_sums;
    double slope = 0;           // fitted d S / d ln n over the last two n values
    double expected_slope = 0;  // +-beta^2/4
    double quadrature_value = 0;
    bool diverges = false;
    bool matches_quadrature = false;  // any partial sum within tol of the quadrature value
};

inline DivergenceReport printed_series_report(Family f, double beta, double t,
                                              const std::vector<long>& n_values = {100, 1000, 10000},
                                              double tol = 1e-6) {
    if (n_values.size() < 2) throw std::invalid_argument("printed_series_report: need at least two n values");
    DivergenceReport r{f, beta, t, n_values, {}, 0, 0, 0, false, false};
    long n_top = 0;
    for (long n : n_values) n_top = std::max(n_top, n);
    auto sums = printed_series_partial(f, beta, t, n_top);
    for (long n : n_values) r.partial_sums.push_back(sums[n]);
    const std::size_t m = n_values.size();
    r.slope = (r.partial_sums[m - 1] - r.partial_sums[m - 2]) /
              std::log(static_cast<double>(n_values[m - 1] + 1) / (n_values[m - 2] + 1));
    r.expected_slope = (f == Family::E ? 1 : -1) * beta * beta / 4;
    r.quadrature_value = basor_chen_double_integral(f, beta, t);
    r.diverges = beta != 0 && std::abs(r.slope - r.expected_slope) < 0.05 * std::abs(r.expected_slope);
    for (double s : sums)
        if (std::abs(s - r.quadrature_value) < tol) r.matches_quadrature = true;
    return r;
}

}  // namespace rmtlab
