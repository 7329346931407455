#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact.hpp"
#include "special.hpp"

namespace rmtlab {

enum class Family { E, H };

inline const char* to_string(Family f) { return f == Family::E ? "E" : "H"; }

inline Family parse_family(const std::string& s) {
    if (s == "E" || s == "e") return Family::E;
    if (s == "H" || s == "h") return Family::H;
    throw std::invalid_argument("unknown family: " + s);
}

/// E: (1+tz)^{beta1} (1+t/z)^{beta2},  H: (1-tz)^{-beta1} (1-t/z)^{-beta2},
/// optionally multiplied by z^shift.
struct SymbolSpec {
    Family family = Family::E;
    ExactScalar t = 1;
    ExactScalar beta1 = 0;
    ExactScalar beta2 = 0;
    long shift = 0;

    static SymbolSpec make(Family f, const ExactScalar& t, long n1, long n2, long s = 0) {
        SymbolSpec sp{f, t, ExactScalar(n1), ExactScalar(n2), s};
        sp.validate();
        return sp;
    }

    void validate() const {
        if (!(t > 0 && t <= 1)) throw std::domain_error("symbol: t must lie in (0,1]");
        if (beta1 < 0 || beta2 < 0) throw std::domain_error("symbol: exponents must be nonnegative");
        if (family == Family::H && t == 1) throw std::domain_error("symbol: H family needs t < 1");
    }

    bool integer_exponents() const { return beta1.get_den() == 1 && beta2.get_den() == 1; }
    bool symmetric() const { return beta1 == beta2 && shift == 0; }
    long n1() const { return beta1.get_num().get_si(); }
    long n2() const { return beta2.get_num().get_si(); }
};

namespace detail {

inline ExactScalar e_coeff(long b1, long b2, long j, const ExactScalar& t) {
    if (j < 0) return e_coeff(b2, b1, -j, t);
    ExactScalar acc = 0;
    for (long k = 0; k <= b2 && k + j <= b1; ++k)
        acc += binomial(b1, k + j) * binomial(b2, k) * qpow(t, 2 * k + j);
    return acc;
}

// Coefficient of z^j in (1-tz)^{-b1}(1-t/z)^{-b2}, |t| < 1. The inner sum
// over k is sum_k P(k) u^k with u = t^2 and P a polynomial of degree
// D = b1+b2-2, which equals Q(u)/(1-u)^{D+1} with Q read off from the first
// D+1 terms.
inline ExactScalar h_coeff(long b1, long b2, long j, const ExactScalar& t) {
    if (j < 0) return h_coeff(b2, b1, -j, t);
    if (b1 == 0 && b2 == 0) return j == 0 ? 1 : 0;
    if (b2 == 0) return binomial(b1 - 1 + j, j) * qpow(t, j);
    if (b1 == 0) return j == 0 ? 1 : 0;
    const long D = b1 + b2 - 2;
    std::vector<ExactScalar> p(D + 1);
    for (long k = 0; k <= D; ++k) p[k] = binomial(b1 - 1 + k + j, b1 - 1) * binomial(b2 - 1 + k, b2 - 1);
    // Q = (1-u)^{D+1} * sum p_k u^k mod u^{D+1}
    std::vector<ExactScalar> q(D + 1, ExactScalar(0));
    for (long i = 0; i <= D; ++i) {
        ExactScalar c = binomial(D + 1, i);
        if (i % 2) c = -c;
        for (long k = 0; i + k <= D; ++k) q[i + k] += c * p[k];
    }
    ExactScalar u = t * t, acc = 0;
    for (long i = D; i >= 0; --i) acc = acc * u + q[i];
    return qpow(t, j) * acc / qpow(1 - u, D + 1);
}

}  // namespace detail

/// Coefficient of z^j without the integrity checks on t, so that formal
/// continuations (t < 0 for H) can be evaluated.
inline ExactScalar symbol_coefficient(Family f, long b1, long b2, long j, const ExactScalar& t) {
    if (f == Family::E) return detail::e_coeff(b1, b2, j, t);
    if (!(t > -1 && t < 1)) throw std::domain_error("symbol: H family needs |t| < 1");
    return detail::h_coeff(b1, b2, j, t);
}

/// sigma_j for j in [jmin, jmax]; the shift s maps sigma_j to sigma_{j-s}
/// (z^s sigma(z) has the coefficients of sigma translated by s).
inline std::vector<ExactScalar> fourier_coeffs(const SymbolSpec& sp, long jmin, long jmax) {
    sp.validate();
    if (!sp.integer_exponents()) throw std::domain_error("fourier_coeffs: exact path needs integer exponents");
    std::vector<ExactScalar> out;
    for (long j = jmin; j <= jmax; ++j)
        out.push_back(symbol_coefficient(sp.family, sp.n1(), sp.n2(), j - sp.shift, sp.t));
    return out;
}

enum class Method { toeplitz, schur_sum, meixner_sum, closed_form, toeplitz_hankel, romanovski };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::toeplitz: return "toeplitz";
        case Method::schur_sum: return "schur-sum";
        case Method::meixner_sum: return "meixner-sum";
        case Method::closed_form: return "closed-form";
        case Method::toeplitz_hankel: return "toeplitz-hankel";
        case Method::romanovski: return "romanovski";
    }
    return "?";
}

struct ExactResult {
    ExactScalar value;
    Method method;
    std::map<std::string, std::string> params;
};

inline std::map<std::string, std::string> describe(const SymbolSpec& sp) {
    return {{"family", to_string(sp.family)},
            {"t", to_string(sp.t)},
            {"beta1", to_string(sp.beta1)},
            {"beta2", to_string(sp.beta2)},
            {"shift", std::to_string(sp.shift)}};
}

/// det(sigma_{j-k})_{j,k=1..K}
inline ExactResult toeplitz_det(const SymbolSpec& sp, long K) {
    if (K < 0) throw std::invalid_argument("toeplitz_det: negative size");
    auto p = describe(sp);
    p["K"] = std::to_string(K);
    if (K == 0) return {1, Method::toeplitz, p};
    auto c = fourier_coeffs(sp, -(K - 1), K - 1);
    Matrix<ExactScalar> m(K);
    for (long j = 0; j < K; ++j)
        for (long k = 0; k < K; ++k) m(j, k) = c[j - k + K - 1];
    return {det_exact(m), Method::toeplitz, p};
}

/// Closed form at t = 1:
/// G(N1+1)G(N2+1)G(N1+N2+K+1)G(K+1) / (G(N1+N2+1)G(N1+K+1)G(N2+K+1)).
inline ExactScalar bs_closed_form(long N1, long N2, long K) {
    if (N1 < 0 || N2 < 0 || K < 0) throw std::invalid_argument("bs_closed_form: negative argument");
    return barnes_g_int(N1 + 1) * barnes_g_int(N2 + 1) * barnes_g_int(N1 + N2 + K + 1) * barnes_g_int(K + 1) /
           (barnes_g_int(N1 + N2 + 1) * barnes_g_int(N1 + K + 1) * barnes_g_int(N2 + K + 1));
}

inline ExactScalar shifted_closed_form(long N, long s, long K) {
    if (s > N || -s > N) throw std::domain_error("shifted_closed_form: |s| must not exceed N");
    return bs_closed_form(N + s, N - s, K);
}

/// Probability that lambda_1 <= K under the Schur measure.
inline ExactScalar prob_lambda1_from(const ExactScalar& z_e, long N1, long N2, const ExactScalar& t) {
    if (!(t > 0 && t < 1)) throw std::domain_error("prob_lambda1: t must lie in (0,1)");
    return z_e * qpow(1 - t * t, N1 * N2);
}

}  // namespace rmtlab
