#pragma once

#include <cmath>
#include <stdexcept>

#include "exact.hpp"

namespace rmtlab {

inline BigInt factorial(long n) {
    if (n < 0) throw std::domain_error("factorial: negative argument");
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

/// C(n,k), extended to negative n by C(n,k) = (-1)^k C(k-n-1,k).
inline ExactScalar binomial(long n, long k) {
    if (k < 0) return 0;
    if (n < 0) {
        ExactScalar b = binomial(k - n - 1, k);
        return k % 2 ? ExactScalar(-b) : b;
    }
    if (k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return ExactScalar(r);
}

/// G(n) = 0! 1! ... (n-2)! for integer n >= 1.
inline ExactScalar barnes_g_int(long n) {
    if (n <= 0) throw std::domain_error("barnes_g_int: argument must be positive");
    BigInt acc = 1, f = 1;
    for (long j = 1; j <= n - 2; ++j) {
        f *= j;
        acc *= f;
    }
    return ExactScalar(acc);
}

/// log G(x) for real x > 0. Shifts the argument up with G(y+1) = Gamma(y) G(y)
/// and uses the large-argument expansion there.
inline double log_barnes_g(double x) {
    if (!(x > 0)) throw std::domain_error("log_barnes_g: argument must be positive");
    constexpr long double log2pi = 1.8378770664093454835606594728112353L;
    constexpr long double zeta_prime_m1 = -0.16542114370045092921391966024278064L;
    // B_{2k+2} for k = 1..9
    constexpr long double bern[] = {-1.0L / 30,     1.0L / 42,          -1.0L / 30,
                                    5.0L / 66,      -691.0L / 2730,     7.0L / 6,
                                    -3617.0L / 510, 43867.0L / 798,     -174611.0L / 330};
    long double y = x, shift = 0;
    while (y < 16) {
        shift += std::lgamma(y);
        y += 1;
    }
    // log G(z+1) with z = y-1
    long double z = y - 1, lz = std::log(z);
    long double s = z * z / 2 * lz - 0.75L * z * z + z / 2 * log2pi - lz / 12 + zeta_prime_m1;
    long double zp = z * z;
    for (int k = 1; k <= 9; ++k) {
        s += bern[k - 1] / (4.0L * k * (k + 1) * zp);
        zp *= z * z;
    }
    return static_cast<double>(s - shift);
}

}  // namespace rmtlab
