#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "exact.hpp"
#include "special.hpp"

namespace rmtlab {

namespace detail {

// log|Gamma(x)| and its sign, x not a pole.
inline double log_abs_gamma(double x, int& sign) {
    if (x > 0) {
        sign = 1;
        return std::lgamma(x);
    }
    if (x == std::floor(x)) throw std::domain_error("Gamma pole");
    sign = (static_cast<long>(std::ceil(-x)) % 2) ? -1 : 1;
    return std::log(std::numbers::pi / std::abs(std::sin(std::numbers::pi * x))) - std::lgamma(1 - x);
}

}  // namespace detail

/// Squared norm (with the 1/2pi measure) of the n-th monic Romanovski
/// polynomial for the weight (1-ix)^{-alpha1} (1+ix)^{-alpha2}. The overall
/// sign is -1/(2n-alpha1-alpha2+1) for every n, which keeps the norm
/// positive; an alternating (-1)^{n+1} would make odd-degree norms negative.
inline double romanovski_norm(long n, double a1, double a2) {
    if (n < 0) throw std::invalid_argument("romanovski_norm: negative degree");
    if (!(a1 + a2 > 2.0 * n + 1)) throw std::domain_error("romanovski_norm: requires alpha1+alpha2 > 2n+1");
    const double s = a1 + a2;
    int g1, g2, g3, g4, g5;
    double lg = detail::log_abs_gamma(s - n, g1) - detail::log_abs_gamma(a1 - n, g2) -
                detail::log_abs_gamma(a2 - n, g3);
    double lsq = std::lgamma(n + 1.0) + n * std::log(2.0) + detail::log_abs_gamma(s - 2.0 * n, g4) -
                 detail::log_abs_gamma(s - n, g5);
    double denom = 2.0 * n - s + 1;
    int sign = -g1 * g2 * g3 * (denom < 0 ? -1 : 1);
    double v = std::exp((1 - s) * std::log(2.0) + lg - std::lgamma(n + 1.0) - std::log(std::abs(denom)) + 2 * lsq);
    return sign * v;
}

/// Exact value for integer exponents with alpha_i - n >= 1.
inline ExactScalar romanovski_norm_exact(long n, long a1, long a2) {
    if (n < 0) throw std::invalid_argument("romanovski_norm: negative degree");
    if (!(a1 + a2 > 2 * n + 1)) throw std::domain_error("romanovski_norm: requires alpha1+alpha2 > 2n+1");
    if (a1 - n < 1 || a2 - n < 1) throw std::domain_error("romanovski_norm_exact: Gamma pole for integer exponents");
    const long s = a1 + a2;
    auto gam = [](long m) { return ExactScalar(factorial(m - 1)); };
    ExactScalar first = -gam(s - n) / (ExactScalar(factorial(n)) * (2 * n - s + 1) * gam(a1 - n) * gam(a2 - n));
    ExactScalar sq = ExactScalar(factorial(n)) * qpow(2, n) * gam(s - 2 * n) / gam(s - n);
    return qpow(2, 1 - s) * first * sq * sq;
}

/// 2^{K^2+2K beta} prod_{n<K} h_n at alpha1 = alpha2 = K + beta.
inline ExactScalar romanovski_partition_exact(long K, long beta) {
    ExactScalar p = qpow(2, K * K + 2 * K * beta);
    for (long n = 0; n < K; ++n) p *= romanovski_norm_exact(n, K + beta, K + beta);
    return p;
}

inline double romanovski_partition(long K, double beta) {
    double lp = (K * K + 2.0 * K * beta) * std::log(2.0);
    for (long n = 0; n < K; ++n) lp += std::log(romanovski_norm(n, K + beta, K + beta));
    return std::exp(lp);
}

/// (K!/2^{K^2-2 beta K}) G(K+1) G(beta+s+1) G(beta-s+1) G(K+2beta+1)
///   / (G(K+beta+s+1) G(K+beta-s+1) G(2beta+1))
inline ExactScalar shifted_stereo_det(long K, long beta, long s) {
    if (K < 1 || beta < 1) throw std::invalid_argument("shifted_stereo_det: K and beta must be positive");
    if (s > beta || -s > beta) throw std::domain_error("shifted_stereo_det: |s| must not exceed beta");
    ExactScalar bracket = ExactScalar(factorial(K)) * qpow(2, 2 * beta * K - K * K);
    return bracket * barnes_g_int(K + 1) * barnes_g_int(beta + s + 1) * barnes_g_int(beta - s + 1) *
           barnes_g_int(K + 2 * beta + 1) /
           (barnes_g_int(K + beta + s + 1) * barnes_g_int(K + beta - s + 1) * barnes_g_int(2 * beta + 1));
}

inline ExactScalar shifted_stereo_bracket(long K, long beta) {
    return ExactScalar(factorial(K)) * qpow(2, 2 * beta * K - K * K);
}

}  // namespace rmtlab
