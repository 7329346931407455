#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rmtlab {

// Arbitrary precision rational. GMP keeps mpq values canonical after every
// arithmetic operation, so the lowest-terms invariant holds throughout.
using ExactScalar = mpq_class;
using BigInt = mpz_class;

inline ExactScalar rational(long p, long q = 1) {
    if (q == 0) throw std::invalid_argument("rational: zero denominator");
    ExactScalar r(p, q);
    r.canonicalize();
    return r;
}

inline ExactScalar rational(const BigInt& p, const BigInt& q) {
    if (q == 0) throw std::invalid_argument("rational: zero denominator");
    ExactScalar r(p, q);
    r.canonicalize();
    return r;
}

/// Parses "p/q" or "p". Leading sign allowed on the numerator only.
inline ExactScalar parse_rational(const std::string& s) {
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto digits = [](const std::string& d, bool sign_ok) {
        if (d.empty()) return false;
        std::size_t i = 0;
        if (sign_ok && (d[0] == '-' || d[0] == '+')) i = 1;
        if (i == d.size()) return false;
        for (; i < d.size(); ++i)
            if (d[i] < '0' || d[i] > '9') return false;
        return true;
    };
    if (!digits(num, true) || !digits(den, false))
        throw std::invalid_argument("not a rational literal: " + s);
    BigInt p(num[0] == '+' ? num.substr(1) : num, 10), q(den, 10);
    return rational(p, q);
}

inline std::string to_string(const ExactScalar& x) { return x.get_str(); }

inline double to_double(const ExactScalar& x) { return x.get_d(); }

inline ExactScalar qpow(const ExactScalar& x, long e) {
    if (e == 0) return ExactScalar(1);
    if (x == 0) {
        if (e < 0) throw std::domain_error("qpow: zero to a negative power");
        return ExactScalar(0);
    }
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), x.get_num_mpz_t(), a);
    mpz_pow_ui(d.get_mpz_t(), x.get_den_mpz_t(), a);
    return e < 0 ? rational(d, n) : rational(n, d);
}

template <class T>
struct Matrix {
    std::size_t n = 0;
    std::vector<T> a;

    Matrix() = default;
    explicit Matrix(std::size_t size) : n(size), a(size * size, T(0)) {}

    T& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

namespace detail {

// Fraction-free Gaussian elimination over the integers, with row pivoting.
inline BigInt bareiss_int(Matrix<BigInt> m) {
    const std::size_t n = m.n;
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m(k, k);
    }
    BigInt d = m(n - 1, n - 1);
    return sign < 0 ? BigInt(-d) : d;
}

}  // namespace detail

/// Exact determinant. Rows are cleared of denominators first so that the
/// elimination itself runs over integers (Bareiss).
inline ExactScalar det_exact(const Matrix<ExactScalar>& m) {
    const std::size_t n = m.n;
    Matrix<BigInt> z(n);
    BigInt scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        BigInt l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j) z(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
        scale *= l;
    }
    return rational(detail::bareiss_int(std::move(z)), scale);
}

/// Laplace expansion along the first row. Independent of elimination; only
/// sensible for small sizes.
inline ExactScalar det_expansion(const Matrix<ExactScalar>& m) {
    const std::size_t n = m.n;
    if (n > 10) throw std::invalid_argument("det_expansion: size above 10");
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    ExactScalar acc = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m(0, c) == 0) continue;
        Matrix<ExactScalar> minor(n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, jj = 0; j < n; ++j)
                if (j != c) minor(i - 1, jj++) = m(i, j);
        ExactScalar term = m(0, c) * det_expansion(minor);
        if (c % 2) acc -= term;
        else acc += term;
    }
    return acc;
}

/// Floating determinant with partial pivoting.
template <class T>
T det_float(Matrix<T> m) {
    const std::size_t n = m.n;
    T d = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
        if (m(p, k) == T(0)) return T(0);
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            d = -d;
        }
        d *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            T f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return d;
}

}  // namespace rmtlab
