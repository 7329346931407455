#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact.hpp"
#include "special.hpp"

namespace rmtlab {

/// Raised when an enumeration would exceed its configured size budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t default_budget = 10'000'000;

struct Partition {
    std::vector<long> parts;  // weakly decreasing, positive

    Partition() = default;
    explicit Partition(std::vector<long> p) : parts(std::move(p)) {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] <= 0) throw std::invalid_argument("partition parts must be positive");
            if (i && parts[i] > parts[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
        }
    }

    long length() const { return static_cast<long>(parts.size()); }
    long size() const {
        long s = 0;
        for (long p : parts) s += p;
        return s;
    }
    long first() const { return parts.empty() ? 0 : parts[0]; }
    long conj(long j) const {  // length of column j (0-based)
        long c = 0;
        for (long p : parts)
            if (p > j) ++c;
        return c;
    }
};

inline long hook(const Partition& l, long i, long j) { return l.parts[i] - j + l.conj(j) - i - 1; }

/// dim(lambda) = |lambda|! / prod of hooks
inline ExactScalar hook_dim(const Partition& l) {
    BigInt h = 1;
    for (long i = 0; i < l.length(); ++i)
        for (long j = 0; j < l.parts[i]; ++j) h *= hook(l, i, j);
    return rational(factorial(l.size()), h);
}

/// s_lambda(t,...,t) with n copies of t.
inline ExactScalar schur_principal(const Partition& l, const ExactScalar& t, long n) {
    if (l.length() > n) return 0;
    ExactScalar c = 1;
    for (long i = 0; i < l.length(); ++i)
        for (long j = 0; j < l.parts[i]; ++j) c *= rational(n + j - i, hook(l, i, j));
    return c * qpow(t, l.size());
}

inline std::uint64_t box_partition_count(long rows, long cols) {
    // C(rows+cols, rows), saturating
    long double c = 1;
    for (long i = 1; i <= rows; ++i) c = c * (cols + i) / i;
    return c > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(c + 0.5L);
}

/// Visits every partition with at most `rows` parts and first part <= `cols`.
inline void for_each_box_partition(long rows, long cols, const std::function<void(const Partition&)>& visit) {
    Partition p;
    std::function<void(long, long)> rec = [&](long row, long maxpart) {
        visit(p);
        if (row == rows) return;
        for (long v = 1; v <= maxpart; ++v) {
            p.parts.push_back(v);
            rec(row + 1, v);
            p.parts.pop_back();
        }
    };
    rec(0, cols);
}

/// Sum over lambda with lambda_1 <= K of s_lambda(t^{N1}) s_lambda(t^{N2}).
inline ExactScalar schur_sum_oracle(long N1, long N2, long K, const ExactScalar& t,
                                    std::uint64_t budget = default_budget) {
    if (N1 < 0 || N2 < 0 || K < 0) throw std::invalid_argument("schur_sum_oracle: negative size");
    long rows = std::min(N1, N2);
    if (box_partition_count(rows, K) > budget)
        throw BudgetExceeded("schur_sum_oracle: partition count exceeds budget");
    ExactScalar acc = 0;
    for_each_box_partition(rows, K, [&](const Partition& l) {
        acc += schur_principal(l, t, N1) * schur_principal(l, t, N2);
    });
    return acc;
}

enum class MeixnerMethod { automatic, enumerate, moments };

struct MeixnerResult {
    ExactScalar value;
    MeixnerMethod method;
};

/// Restricted Meixner sum over h in {0..N1+K-1}^{N1}. Enumeration runs over
/// strictly increasing tuples (the summand is symmetric and vanishes on
/// repeated entries). The moments route uses
///   (1/N!) sum_h Delta(h)^2 prod w(h_j) = det(sum_h h^{i+j} w(h)).
inline MeixnerResult meixner_sum_detail(long N1, long N2, long K, const ExactScalar& t,
                                        MeixnerMethod method = MeixnerMethod::automatic,
                                        std::uint64_t budget = default_budget) {
    if (N1 <= 0 || N2 <= 0 || K <= 0) throw std::invalid_argument("meixner_sum: sizes must be positive");
    if (t == 0) throw std::invalid_argument("meixner_sum: t must be nonzero");
    if (N1 > N2) std::swap(N1, N2);
    const long M = N1 + K - 1;  // top of the summation range
    const long d = N2 - N1;
    std::uint64_t count = box_partition_count(N1, K);
    if (method == MeixnerMethod::automatic) method = count <= budget ? MeixnerMethod::enumerate : MeixnerMethod::moments;
    if (method == MeixnerMethod::enumerate && count > budget)
        throw BudgetExceeded("meixner_sum: enumeration exceeds budget");

    // s_lambda(1^{N2}) = Delta(h) prod_i d! w(h_i) / prod_{i<=N1} (N2-i)!, and
    // prod_{i<=N1} (N2-i)! = G(N2+1)/G(d+1)
    ExactScalar pref = qpow(t, -N1 * (N1 - 1)) * qpow(ExactScalar(factorial(d)), N1) * barnes_g_int(d + 1) /
                       (barnes_g_int(N1 + 1) * barnes_g_int(N2 + 1));
    std::vector<BigInt> w(M + 1);
    for (long h = 0; h <= M; ++h) w[h] = binomial(d + h, h).get_num();
    ExactScalar u = t * t;

    if (method == MeixnerMethod::moments) {
        Matrix<ExactScalar> m(N1);
        std::vector<ExactScalar> mom(2 * N1 - 1, ExactScalar(0));
        ExactScalar up = 1;
        for (long h = 0; h <= M; ++h) {
            BigInt hp = 1;
            for (long k = 0; k < 2 * N1 - 1; ++k) {
                mom[k] += ExactScalar(hp * w[h]) * up;
                hp *= h;
            }
            up *= u;
        }
        for (long i = 0; i < N1; ++i)
            for (long j = 0; j < N1; ++j) m(i, j) = mom[i + j];
        return {pref * det_exact(m), MeixnerMethod::moments};
    }

    // coefficient of u^{sum h}
    std::vector<BigInt> poly(N1 * M + 1, BigInt(0));
    std::vector<long> h(N1);
    std::function<void(long, long)> rec = [&](long pos, long lo) {
        if (pos == N1) {
            BigInt v = 1;
            long s = 0;
            for (long a = 0; a < N1; ++a) {
                v *= w[h[a]];
                s += h[a];
                for (long b = a + 1; b < N1; ++b) v *= (h[b] - h[a]) * (h[b] - h[a]);
            }
            poly[s] += v;
            return;
        }
        for (long x = lo; x <= M - (N1 - 1 - pos); ++x) {
            h[pos] = x;
            rec(pos + 1, x + 1);
        }
    };
    rec(0, 0);
    ExactScalar acc = 0;
    for (std::size_t k = poly.size(); k-- > 0;) acc = acc * u + ExactScalar(poly[k]);
    return {pref * acc, MeixnerMethod::enumerate};
}

inline ExactScalar meixner_sum(long N1, long N2, long K, const ExactScalar& t,
                               std::uint64_t budget = default_budget) {
    return meixner_sum_detail(N1, N2, K, t, MeixnerMethod::automatic, budget).value;
}

}  // namespace rmtlab
