#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chebyshev.hpp"
#include "exact.hpp"
#include "quadrature.hpp"
#include "special.hpp"
#include "symbol.hpp"

namespace rmtlab {

enum class GroupTag { U, O_plus_even, Sp, O_plus_odd, O_minus_odd };

inline const char* to_string(GroupTag g) {
    switch (g) {
        case GroupTag::U: return "U";
        case GroupTag::O_plus_even: return "O+even";
        case GroupTag::Sp: return "Sp";
        case GroupTag::O_plus_odd: return "O+odd";
        case GroupTag::O_minus_odd: return "O-odd";
    }
    return "?";
}

inline GroupTag parse_group(const std::string& s) {
    if (s == "U") return GroupTag::U;
    if (s == "O+even" || s == "O_plus_even") return GroupTag::O_plus_even;
    if (s == "Sp") return GroupTag::Sp;
    if (s == "O+odd" || s == "O_plus_odd") return GroupTag::O_plus_odd;
    if (s == "O-odd" || s == "O_minus_odd") return GroupTag::O_minus_odd;
    throw std::invalid_argument("unknown group: " + s);
}

/// G(K) with K >= 1: O+(2K), Sp(2K), O+(2K+1), O-(2K+1). For U the rank
/// parameter is the matrix size M of U(M).
struct GroupKind {
    GroupTag tag = GroupTag::Sp;
    long K = 1;

    void validate() const {
        if (K < 1) throw std::domain_error("group: K must be at least 1");
    }
    /// Jacobi exponents of (1+x)^a (1-x)^b.
    std::pair<double, double> jacobi_exponents() const {
        switch (tag) {
            case GroupTag::O_plus_even: return {-0.5, -0.5};
            case GroupTag::Sp: return {0.5, 0.5};
            case GroupTag::O_plus_odd: return {-0.5, 0.5};
            case GroupTag::O_minus_odd: return {0.5, -0.5};
            case GroupTag::U: break;
        }
        throw std::domain_error("group: U has no Jacobi reduction");
    }
    ChebKind cheb_kind() const {
        switch (tag) {
            case GroupTag::O_plus_even: return ChebKind::T;
            case GroupTag::Sp: return ChebKind::U;
            case GroupTag::O_minus_odd: return ChebKind::V;
            case GroupTag::O_plus_odd: return ChebKind::W;
            case GroupTag::U: break;
        }
        throw std::domain_error("group: U has no single Chebyshev kind");
    }
    /// log2 of N_G(K).
    long norm_log2() const {
        switch (tag) {
            case GroupTag::O_plus_even: return K * K - K + 1;
            case GroupTag::Sp: return K * K + K;
            case GroupTag::O_plus_odd:
            case GroupTag::O_minus_odd: return K * K;
            case GroupTag::U: break;
        }
        throw std::domain_error("group: U has no Jacobi reduction");
    }
};

enum class THVariant { plusminus2, minus, plus1, minus1 };

inline THVariant th_variant(GroupTag g) {
    switch (g) {
        case GroupTag::O_plus_even: return THVariant::plusminus2;
        case GroupTag::Sp: return THVariant::minus;
        case GroupTag::O_minus_odd: return THVariant::plus1;
        case GroupTag::O_plus_odd: return THVariant::minus1;
        case GroupTag::U: break;
    }
    throw std::domain_error("th_variant: U is a Toeplitz determinant");
}

/// det(sigma_{j-k} +- sigma_{j+k-c}) for a coefficient function, j,k = 1..K;
/// plusminus2 carries the factor 1/2.
inline ExactScalar th_determinant_from(THVariant var, const std::function<ExactScalar(long)>& sigma, long K) {
    if (K < 1) throw std::domain_error("th_determinant: K must be at least 1");
    long c = 0;
    int sg = 1;
    switch (var) {
        case THVariant::plusminus2: c = 2; sg = 1; break;
        case THVariant::minus: c = 0; sg = -1; break;
        case THVariant::plus1: c = 1; sg = 1; break;
        case THVariant::minus1: c = 1; sg = -1; break;
    }
    // indices run over -(K-1) .. 2K
    std::vector<ExactScalar> cache(3 * K + 1);
    std::vector<bool> have(3 * K + 1, false);
    auto s = [&](long j) -> const ExactScalar& {
        long idx = j + K;
        if (!have[idx]) {
            cache[idx] = sigma(j);
            have[idx] = true;
        }
        return cache[idx];
    };
    Matrix<ExactScalar> m(K);
    for (long j = 1; j <= K; ++j)
        for (long k = 1; k <= K; ++k) m(j - 1, k - 1) = s(j - k) + sg * s(j + k - c);
    ExactScalar d = det_exact(m);
    return var == THVariant::plusminus2 ? d / 2 : d;
}

/// Symmetric symbols only; non-symmetric symbols do not reduce to a Hankel form.
inline ExactScalar th_determinant(THVariant var, const SymbolSpec& sym, long K) {
    sym.validate();
    if (!sym.symmetric()) throw std::domain_error("th_determinant: symbol must be symmetric (beta1 = beta2, no shift)");
    if (!sym.integer_exponents()) throw std::domain_error("th_determinant: exact path needs integer exponents");
    const long n = sym.n1();
    return th_determinant_from(var, [&](long j) { return symbol_coefficient(sym.family, n, n, j, sym.t); }, K);
}

/// Same without the range check on t, for formal continuations t -> -t.
inline ExactScalar th_determinant_formal(THVariant var, Family f, long N, const ExactScalar& t, long K) {
    return th_determinant_from(var, [&](long j) { return symbol_coefficient(f, N, N, j, t); }, K);
}

/// Z^{G(K)} = N_G/(K!(2pi)^K) (2t)^{+-beta K} int prod (xi +- x)^{+-beta} (1+x)^a (1-x)^b dx Delta^2,
/// reduced by Andreief to N_G/(2pi)^K (2t)^{+-beta K} det(Gram) in the monic
/// Chebyshev basis of the matching kind. Half-integer Jacobi weights use
/// Gauss-Chebyshev nodes of the first or second kind.
inline double hankel_via_quadrature(const GroupKind& g, const std::function<double(double)>& f, double prefactor,
                                    int nodes = 512) {
    g.validate();
    auto [a, b] = g.jacobi_exponents();
    const long K = g.K;
    QuadratureRule r = (a > 0 && b > 0) ? gauss_chebyshev_2(nodes) : gauss_chebyshev_1(nodes);
    std::vector<double> w(r.nodes.size());
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        double x = r.nodes[i], extra = 1;
        if (a > 0 && b < 0) extra = 1 + x;  // (1+x)/sqrt(1-x^2)
        if (a < 0 && b > 0) extra = 1 - x;  // (1-x)/sqrt(1-x^2)
        w[i] = r.weights[i] * extra * f(x);
        if (!std::isfinite(w[i])) throw std::runtime_error("hankel_via_quadrature: integrand not finite");
    }
    const ChebKind kind = g.cheb_kind();
    auto monic = [&](long n, double x) {
        double lead = n == 0 ? 1.0 : std::ldexp(1.0, kind == ChebKind::T ? n - 1 : n);
        return chebyshev_eval(kind, n, x) / lead;
    };
    std::vector<std::vector<double>> P(K, std::vector<double>(r.nodes.size()));
    for (long n = 0; n < K; ++n)
        for (std::size_t i = 0; i < r.nodes.size(); ++i) P[n][i] = monic(n, r.nodes[i]);
    Matrix<double> gram(K);
    for (long i = 0; i < K; ++i)
        for (long j = 0; j < K; ++j) {
            double s = 0;
            for (std::size_t q = 0; q < r.nodes.size(); ++q) s += w[q] * P[i][q] * P[j][q];
            gram(i, j) = s;
        }
    double logpref = g.norm_log2() * std::log(2.0) - K * std::log(2 * std::numbers::pi);
    return prefactor * std::exp(logpref) * det_float(gram);
}

/// E: f = (xi + x)^beta with prefactor (2t)^{beta K}; H: f = (xi - x)^{-beta} with (2t)^{-beta K}.
inline double hankel_via_quadrature(const GroupKind& g, Family fam, double beta, double t, int nodes = 512) {
    if (!(t > 0 && t < 1)) throw std::domain_error("hankel_via_quadrature: t must lie in (0,1)");
    const double xi = (1 + t * t) / (2 * t);
    if (fam == Family::E)
        return hankel_via_quadrature(
            g, [=](double x) { return std::pow(xi + x, beta); }, std::pow(2 * t, beta * g.K), nodes);
    return hankel_via_quadrature(
        g, [=](double x) { return std::pow(xi - x, -beta); }, std::pow(2 * t, -beta * g.K), nodes);
}

/// det(d^{j-1}/dx^{j-1} P_{n+k-1}(x))_{j,k=1..N}
inline ExactScalar chebyshev_wronskian(ChebKind kind, long start_degree, long count, const ExactScalar& x) {
    if (start_degree < 0) throw std::domain_error("chebyshev_wronskian: negative start degree");
    if (count < 1) throw std::domain_error("chebyshev_wronskian: count must be at least 1");
    Matrix<ExactScalar> m(count);
    for (long j = 0; j < count; ++j)
        for (long k = 0; k < count; ++k) m(j, k) = chebyshev_derivative(kind, start_degree + k, j, x);
    return det_exact(m);
}

/// coeff * pi^pi_power
struct PiScaled {
    ExactScalar coeff;
    long pi_power = 0;

    double value() const { return coeff.get_d() * std::pow(std::numbers::pi, static_cast<double>(pi_power)); }
    PiScaled operator/(const PiScaled& o) const { return {coeff / o.coeff, pi_power - o.pi_power}; }
    PiScaled operator/(const ExactScalar& o) const { return {coeff / o, pi_power}; }
    bool operator==(const PiScaled& o) const = default;
};

namespace detail {

inline ExactScalar c_e(long N) {
    ExactScalar c = 1 / barnes_g_int(N + 1);
    return (N * (N - 1) / 2) % 2 ? ExactScalar(-c) : c;
}

// C_H(N) = (4/pi)^N / G(N+1)
inline PiScaled c_h(long N) { return {qpow(4, N) / barnes_g_int(N + 1), -N}; }

}  // namespace detail

/// Wronskian formula for Z(beta = N)/Z(beta = 0), xi = (1+t^2)/2t. For U
/// the rank parameter is the matrix size M.
inline PiScaled charpoly_prediction(const GroupKind& g, Family fam, long N, const ExactScalar& t) {
    g.validate();
    if (N < 1) throw std::domain_error("charpoly_prediction: N must be positive");
    if (t == 0) throw std::domain_error("charpoly_prediction: t must be nonzero");
    const ExactScalar xi = (1 + t * t) / (2 * t);
    const long K = g.K;
    auto sgnN = [&](const ExactScalar& x) { return N % 2 ? ExactScalar(-x) : x; };
    if (g.tag == GroupTag::U) {
        const long M = K, k = M / 2;
        const ExactScalar gn2 = barnes_g_int(N + 1) * barnes_g_int(N + 1);
        if (fam == Family::E) {
            ExactScalar w = M % 2 ? chebyshev_wronskian(ChebKind::T, k + 1, N, ExactScalar(-xi)) *
                                        chebyshev_wronskian(ChebKind::U, k, N, ExactScalar(-xi))
                                  : chebyshev_wronskian(ChebKind::V, k, N, ExactScalar(-xi)) *
                                        chebyshev_wronskian(ChebKind::W, k, N, ExactScalar(-xi));
            return {w * qpow(-2 * t, N * M) / gn2, 0};
        }
        if (N >= k) throw std::domain_error("charpoly_prediction: H family needs 0 <= N < K");
        ExactScalar w = M % 2 ? chebyshev_wronskian(ChebKind::T, k - N + 1, N, xi) *
                                    chebyshev_wronskian(ChebKind::U, k - N - 1, N, xi)
                              : chebyshev_wronskian(ChebKind::V, k - N, N, xi) *
                                    chebyshev_wronskian(ChebKind::W, k - N, N, xi);
        // 1/C~_H = (4/pi)^{2N} / (G(N+1)^2 (2t)^{NM})
        return {sgnN(w) * qpow(4, 2 * N) / (gn2 * qpow(2 * t, N * M)), -2 * N};
    }
    if (fam == Family::E)
        return {qpow(-2 * t, N * K) * detail::c_e(N) * chebyshev_wronskian(g.cheb_kind(), K, N, ExactScalar(-xi)), 0};
    if (N >= K) throw std::domain_error("charpoly_prediction: H family needs 0 <= N < K");
    PiScaled ch = detail::c_h(N);
    ExactScalar w;
    switch (g.tag) {
        case GroupTag::O_plus_even: w = sgnN(chebyshev_wronskian(ChebKind::U, K - N - 1, N, xi)); break;
        case GroupTag::Sp: w = chebyshev_wronskian(ChebKind::T, K - N + 1, N, xi); break;
        case GroupTag::O_minus_odd: w = sgnN(chebyshev_wronskian(ChebKind::W, K - N, N, xi)); break;
        case GroupTag::O_plus_odd: w = chebyshev_wronskian(ChebKind::V, K - N, N, xi); break;
        case GroupTag::U: break;
    }
    return {ch.coeff * w / qpow(2 * t, N * K), ch.pi_power};
}

namespace detail {

// Polynomials in t with exact coefficients, c[i] of t^i.
using TPoly = std::vector<ExactScalar>;

inline TPoly tpoly_mul(const TPoly& a, const TPoly& b) {
    TPoly r(a.size() + b.size() - 1, ExactScalar(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline TPoly tpoly_sub(TPoly a, const TPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), ExactScalar(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
}

inline TPoly tpoly_diff(const TPoly& a) {
    if (a.size() <= 1) return {ExactScalar(0)};
    TPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<long>(i);
    return r;
}

inline ExactScalar tpoly_eval(const TPoly& a, const ExactScalar& t) {
    ExactScalar r = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * t + *it;
    return r;
}

struct TRat {
    TPoly num, den;
};

// d/dxi with xi = (1+t^2)/(2t): d/dxi = 2t^2/(t^2-1) d/dt
inline TRat xi_derivative(const TRat& f) {
    TPoly n = tpoly_sub(tpoly_mul(tpoly_diff(f.num), f.den), tpoly_mul(f.num, tpoly_diff(f.den)));
    TPoly d = tpoly_mul(f.den, f.den);
    return {tpoly_mul(n, TPoly{0, 0, 2}), tpoly_mul(d, TPoly{-1, 0, 1})};
}

}  // namespace detail

/// int P_n(y) w(y)/(xi - y) dy / pi for xi = (1+t^2)/(2t) > 1 as a rational
/// function of t, w the weight of the Chebyshev kind:
///   T: 2t^{n+1}/(1-t^2), U: t^{n+1}, V: 2t^{n+1}/(1-t), W: 2t^{n+1}/(1+t).
inline detail::TRat chebyshev_cauchy_transform(ChebKind kind, long n) {
    if (n < 0) throw std::domain_error("chebyshev_cauchy_transform: negative degree");
    detail::TPoly mono(n + 2, ExactScalar(0));
    mono[n + 1] = 1;
    switch (kind) {
        case ChebKind::T: return {detail::tpoly_mul(mono, {2}), {1, 0, -1}};
        case ChebKind::U: return {mono, {1}};
        case ChebKind::V: return {detail::tpoly_mul(mono, {2}), {1, -1}};
        case ChebKind::W: return {detail::tpoly_mul(mono, {2}), {1, 1}};
    }
    throw std::logic_error("unreachable");
}

/// Wr[h_s, ..., h_{s+N-1}](xi) in the variable xi for the Cauchy transforms above.
inline ExactScalar cauchy_wronskian(ChebKind kind, long start_degree, long count, const ExactScalar& t) {
    if (count < 1) throw std::domain_error("cauchy_wronskian: count must be at least 1");
    if (!(t > 0 && t < 1)) throw std::domain_error("cauchy_wronskian: t must lie in (0,1)");
    Matrix<ExactScalar> m(count);
    for (long k = 0; k < count; ++k) {
        detail::TRat f = chebyshev_cauchy_transform(kind, start_degree + k);
        for (long j = 0; j < count; ++j) {
            m(j, k) = detail::tpoly_eval(f.num, t) / detail::tpoly_eval(f.den, t);
            if (j + 1 < count) f = detail::xi_derivative(f);
        }
    }
    return det_exact(m);
}

/// H-family prediction with the polynomials replaced by their Cauchy transforms
/// (inverse characteristic polynomials): (2t)^{-NK} Wr[h_{K-N}, ..., h_{K-1}](xi) pi^N,
/// h_n the transform of the monic-up-to-constant Chebyshev polynomial of the
/// group's kind. Holds up to a t-independent constant for 1 <= N <= K.
inline PiScaled charpoly_prediction_h_cauchy(const GroupKind& g, long N, const ExactScalar& t) {
    g.validate();
    if (g.tag == GroupTag::U) throw std::domain_error("charpoly_prediction_h_cauchy: orthogonal and symplectic groups only");
    if (N < 1 || N > g.K) throw std::domain_error("charpoly_prediction_h_cauchy: needs 1 <= N <= K");
    return {cauchy_wronskian(g.cheb_kind(), g.K - N, N, t) / qpow(2 * t, N * g.K), N};
}

/// Exact Z(beta = N)/Z(beta = 0) from Toeplitz+-Hankel (or Toeplitz for U) determinants.
inline ExactScalar exact_charpoly_ratio(const GroupKind& g, Family fam, long N, const ExactScalar& t) {
    g.validate();
    auto sym = SymbolSpec::make(fam, t, N, N);
    auto haar = SymbolSpec::make(fam, t, 0, 0);
    if (g.tag == GroupTag::U) return toeplitz_det(sym, g.K).value / toeplitz_det(haar, g.K).value;
    THVariant v = th_variant(g.tag);
    return th_determinant(v, sym, g.K) / th_determinant(v, haar, g.K);
}

/// prediction / exact ratio; the Wronskian formulas hold when this is t-independent.
inline PiScaled charpoly_constant(const GroupKind& g, Family fam, long N, const ExactScalar& t) {
    return charpoly_prediction(g, fam, N, t) / exact_charpoly_ratio(g, fam, N, t);
}

struct FactorizationCheck {
    ExactScalar even_lhs, even_rhs;  // det T_{2K} vs det(+1) det(-1)
    ExactScalar odd_lhs, odd_rhs;    // det T_{2K+1} vs 1/2 det(-)_{K} det(+-2)_{K+1}
};

inline FactorizationCheck unitary_factorization_check(const SymbolSpec& sym, long K) {
    if (!sym.symmetric()) throw std::domain_error("unitary_factorization_check: symbol must be symmetric");
    if (K < 1) throw std::domain_error("unitary_factorization_check: K must be at least 1");
    FactorizationCheck c;
    c.even_lhs = toeplitz_det(sym, 2 * K).value;
    c.even_rhs = th_determinant(THVariant::plus1, sym, K) * th_determinant(THVariant::minus1, sym, K);
    c.odd_lhs = toeplitz_det(sym, 2 * K + 1).value;
    // th_determinant(plusminus2) already carries the 1/2
    c.odd_rhs = th_determinant(THVariant::minus, sym, K) * th_determinant(THVariant::plusminus2, sym, K + 1);
    return c;
}

struct DualityCheck {
    ExactScalar e_side;  // (-2t)^{-NK} C_E(N)^{-1} x E prediction for O-(2K+1)
    ExactScalar h_side;  // printed H Wronskian for O+(2(K+N)+1) evaluated at -xi
    ExactScalar determinant_ratio;  // Z_E^{O-(2K+1)}(t) / Z_H^{O+(2(K+N)+1)}(-t), formal continuation
};

/// E model on O-(2K+1) against the H model on O+(2K'+1) with K = K' - N and
/// xi -> -xi. The formula-level sides agree exactly; the determinant-level
/// ratio is returned to show it is not a constant.
inline DualityCheck duality_check(long N, long K, const ExactScalar& t) {
    if (N < 1 || K < 1) throw std::domain_error("duality_check: N and K must be positive");
    if (!(t > 0 && t < 1)) throw std::domain_error("duality_check: t must lie in (0,1)");
    const ExactScalar xi = (1 + t * t) / (2 * t);
    DualityCheck d;
    d.e_side = charpoly_prediction({GroupTag::O_minus_odd, K}, Family::E, N, t).coeff / qpow(-2 * t, N * K) /
               detail::c_e(N);
    const long KH = K + N;
    d.h_side = chebyshev_wronskian(ChebKind::V, KH - N, N, ExactScalar(-xi));
    ExactScalar ze = th_determinant_formal(THVariant::plus1, Family::E, N, t, K) /
                     th_determinant_formal(THVariant::plus1, Family::E, 0, t, K);
    ExactScalar zh = th_determinant_formal(THVariant::minus1, Family::H, N, ExactScalar(-t), KH) /
                     th_determinant_formal(THVariant::minus1, Family::H, 0, ExactScalar(-t), KH);
    d.determinant_ratio = ze / zh;
    return d;
}

/// sum_{m=0}^{K} t^{2m}, the Sp(2K) E-model value at beta = 1.
inline ExactScalar sp_e_beta1_closed(long K, const ExactScalar& t) {
    ExactScalar s = 0, p = 1;
    for (long m = 0; m <= K; ++m, p *= t * t) s += p;
    return s;
}

}  // namespace rmtlab
