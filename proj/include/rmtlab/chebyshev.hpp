#pragma once

#include <stdexcept>
#include <type_traits>
#include <string>
#include <vector>

#include "exact.hpp"

namespace rmtlab {

enum class ChebKind { T, U, V, W };

inline const char* to_string(ChebKind k) {
    switch (k) {
        case ChebKind::T: return "T";
        case ChebKind::U: return "U";
        case ChebKind::V: return "V";
        case ChebKind::W: return "W";
    }
    return "?";
}

inline ChebKind parse_cheb_kind(const std::string& s) {
    if (s == "T") return ChebKind::T;
    if (s == "U") return ChebKind::U;
    if (s == "V") return ChebKind::V;
    if (s == "W") return ChebKind::W;
    throw std::invalid_argument("unknown Chebyshev kind: " + s);
}

// All four kinds share p_{n+1} = 2x p_n - p_{n-1} with p_0 = 1 and
// p_1 = x, 2x, 2x-1, 2x+1 for T, U, V, W.
template <class S>
S chebyshev_eval(ChebKind kind, long n, const S& x) {
    if (n < 0) throw std::domain_error("chebyshev_eval: negative degree");
    S p0 = S(1);
    if (n == 0) return p0;
    S p1 = x;
    switch (kind) {
        case ChebKind::T: p1 = x; break;
        case ChebKind::U: p1 = 2 * x; break;
        case ChebKind::V: p1 = 2 * x - 1; break;
        case ChebKind::W: p1 = 2 * x + 1; break;
    }
    for (long k = 1; k < n; ++k) {
        S p2 = 2 * x * p1 - p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// Integer coefficients c[i] of x^i.
inline std::vector<BigInt> chebyshev_coeffs(ChebKind kind, long n) {
    if (n < 0) throw std::domain_error("chebyshev_coeffs: negative degree");
    std::vector<BigInt> p0{1};
    if (n == 0) return p0;
    std::vector<BigInt> p1;
    switch (kind) {
        case ChebKind::T: p1 = {0, 1}; break;
        case ChebKind::U: p1 = {0, 2}; break;
        case ChebKind::V: p1 = {-1, 2}; break;
        case ChebKind::W: p1 = {1, 2}; break;
    }
    for (long k = 1; k < n; ++k) {
        std::vector<BigInt> p2(p1.size() + 1, BigInt(0));
        for (std::size_t i = 0; i < p1.size(); ++i) p2[i + 1] += 2 * p1[i];
        for (std::size_t i = 0; i < p0.size(); ++i) p2[i] -= p0[i];
        p0 = std::move(p1);
        p1 = std::move(p2);
    }
    return p1;
}

template <class S>
S chebyshev_derivative(ChebKind kind, long n, long order, const S& x) {
    if (order < 0) throw std::domain_error("chebyshev_derivative: negative order");
    auto c = chebyshev_coeffs(kind, n);
    for (long d = 0; d < order; ++d) {
        if (c.size() <= 1) return S(0);
        for (std::size_t i = 1; i < c.size(); ++i) c[i - 1] = c[i] * static_cast<long>(i);
        c.pop_back();
    }
    S acc = S(0);
    for (std::size_t i = c.size(); i-- > 0;) {
        acc *= x;
        if constexpr (std::is_same_v<S, ExactScalar>) acc += ExactScalar(c[i]);
        else acc += static_cast<S>(c[i].get_d());
    }
    return acc;
}

}  // namespace rmtlab
