#include <gtest/gtest.h>

#include <cmath>

#include "rmtlab/rmtlab.hpp"

using namespace rmtlab;

namespace {

const GroupTag jacobi_tags[] = {GroupTag::O_plus_even, GroupTag::Sp, GroupTag::O_plus_odd, GroupTag::O_minus_odd};

ExactScalar q(long p, long r = 1) { return ExactScalar(p, r); }

}  // namespace

TEST(GroupKind, TablesAndParsing) {
    EXPECT_EQ(parse_group("O+even"), GroupTag::O_plus_even);
    EXPECT_EQ(parse_group("O_plus_even"), GroupTag::O_plus_even);
    EXPECT_EQ(parse_group("Sp"), GroupTag::Sp);
    EXPECT_EQ(parse_group("O-odd"), GroupTag::O_minus_odd);
    EXPECT_THROW(parse_group("SO"), std::invalid_argument);
    EXPECT_EQ((GroupKind{GroupTag::O_plus_even, 2}.jacobi_exponents()), std::make_pair(-0.5, -0.5));
    EXPECT_EQ((GroupKind{GroupTag::Sp, 2}.jacobi_exponents()), std::make_pair(0.5, 0.5));
    EXPECT_EQ((GroupKind{GroupTag::O_plus_odd, 2}.jacobi_exponents()), std::make_pair(-0.5, 0.5));
    EXPECT_EQ((GroupKind{GroupTag::O_minus_odd, 2}.jacobi_exponents()), std::make_pair(0.5, -0.5));
    EXPECT_THROW((GroupKind{GroupTag::Sp, 0}.validate()), std::domain_error);
    EXPECT_THROW((GroupKind{GroupTag::U, 2}.jacobi_exponents()), std::domain_error);
}

TEST(THDeterminant, SpExamples) {
    for (auto t : {q(1, 4), q(1, 2), q(2, 3)}) {
        EXPECT_EQ(th_determinant(THVariant::minus, SymbolSpec::make(Family::E, t, 1, 1), 1), 1 + t * t);
        for (long K = 1; K <= 20; ++K)
            EXPECT_EQ(th_determinant(THVariant::minus, SymbolSpec::make(Family::E, t, 1, 1), K),
                      sp_e_beta1_closed(K, t));
    }
}

TEST(THDeterminant, OddOrthogonalPhaseSwap) {
    for (long N = 1; N <= 2; ++N)
        for (long K = 1; K <= 4; ++K) {
            auto sym = SymbolSpec::make(Family::E, q(1, 3), N, N);
            auto sigma = [&](long j) -> ExactScalar { return symbol_coefficient(Family::E, N, N, j, sym.t); };
            auto flipped = [&](long j) -> ExactScalar { return (j % 2 ? ExactScalar(-1) : ExactScalar(1)) * sigma(j); };
            EXPECT_EQ(th_determinant_from(THVariant::plus1, sigma, K), th_determinant_from(THVariant::minus1, flipped, K));
            EXPECT_EQ(th_determinant_from(THVariant::minus1, sigma, K), th_determinant_from(THVariant::plus1, flipped, K));
        }
}

TEST(THDeterminant, RequiresSymmetricSymbol) {
    EXPECT_THROW(th_determinant(THVariant::minus, SymbolSpec::make(Family::E, q(1, 2), 2, 1), 2), std::domain_error);
}

TEST(HankelQuadrature, Examples) {
    EXPECT_NEAR(hankel_via_quadrature({GroupTag::Sp, 1}, Family::E, 1, 0.5), 1.25, 1e-10);
    for (GroupTag g : jacobi_tags)
        for (long K : {1, 3})
            for (Family f : {Family::E, Family::H})
                EXPECT_NEAR(hankel_via_quadrature({g, K}, f, 0, 0.4), 1, 1e-12) << to_string(g) << " K=" << K;
}

TEST(HankelQuadrature, BridgeToToeplitzHankel) {
    for (GroupTag g : jacobi_tags)
        for (long N = 1; N <= 2; ++N)
            for (long K = 1; K <= 4; ++K)
                for (auto t : {q(1, 4), q(1, 2)}) {
                    double exact = exact_charpoly_ratio({g, K}, Family::E, N, t).get_d();
                    double quad = hankel_via_quadrature({g, K}, Family::E, static_cast<double>(N), t.get_d());
                    EXPECT_NEAR(quad, exact, 1e-9 * std::max(1.0, std::abs(exact)))
                        << to_string(g) << " N=" << N << " K=" << K;
                }
}

TEST(Wronskian, Examples) {
    for (auto x : {q(0), q(1, 3), q(-5, 4), q(7)}) {
        EXPECT_EQ(chebyshev_wronskian(ChebKind::U, 1, 1, x), 2 * x);
        EXPECT_EQ(chebyshev_wronskian(ChebKind::T, 1, 2, x), 2 * x * x + 1);
    }
    const ExactScalar xi = q(5, 4);
    for (long K = 1; K <= 6; ++K)
        for (long N = 1; N <= 3; ++N) EXPECT_GT(chebyshev_wronskian(ChebKind::U, K, N, xi), 0);
}

TEST(Charpoly, SpTwoExample) {
    for (auto t : {q(1, 4), q(1, 2), q(3, 4)}) {
        auto p = charpoly_prediction({GroupTag::Sp, 1}, Family::E, 1, t);
        EXPECT_EQ(p.pi_power, 0);
        EXPECT_EQ(p.coeff, 2 * (1 + t * t));
        EXPECT_EQ(charpoly_constant({GroupTag::Sp, 1}, Family::E, 1, t), (PiScaled{2, 0}));
    }
}

TEST(Charpoly, EConstantsAreTIndependent) {
    for (GroupTag g : jacobi_tags)
        for (long N = 1; N <= 2; ++N)
            for (long K = 2; K <= 3; ++K) {
                auto c0 = charpoly_constant({g, K}, Family::E, N, q(1, 4));
                EXPECT_NE(c0.coeff, 0);
                for (auto t : {q(1, 2), q(3, 4)})
                    EXPECT_EQ(charpoly_constant({g, K}, Family::E, N, t), c0) << to_string(g) << " N=" << N << " K=" << K;
            }
}

TEST(Charpoly, UnitaryEConstantsAreTIndependent) {
    for (long M = 2; M <= 5; ++M)
        for (long N = 1; N <= 2; ++N) {
            auto c0 = charpoly_constant({GroupTag::U, M}, Family::E, N, q(1, 4));
            for (auto t : {q(1, 2), q(3, 4)}) EXPECT_EQ(charpoly_constant({GroupTag::U, M}, Family::E, N, t), c0);
        }
}

TEST(Charpoly, HCauchyConstantsAreTIndependent) {
    for (GroupTag g : jacobi_tags)
        for (long K = 1; K <= 4; ++K)
            for (long N = 1; N <= std::min(3L, K); ++N) {
                GroupKind gk{g, K};
                auto c = [&](const ExactScalar& t) {
                    return charpoly_prediction_h_cauchy(gk, N, t) / exact_charpoly_ratio(gk, Family::H, N, t);
                };
                auto c0 = c(q(1, 4));
                EXPECT_EQ(c0.pi_power, N);
                for (auto t : {q(1, 2), q(3, 4)}) EXPECT_EQ(c(t), c0) << to_string(g) << " N=" << N << " K=" << K;
            }
    auto sp = charpoly_prediction_h_cauchy({GroupTag::Sp, 1}, 1, q(1, 2)) /
              exact_charpoly_ratio({GroupTag::Sp, 1}, Family::H, 1, q(1, 2));
    EXPECT_EQ(sp, (PiScaled{q(1, 2), 1}));
}

// The polynomial-Wronskian H formula does not track the exact ratio.
TEST(Charpoly, PrintedHFormulaVariesWithT) {
    GroupKind g{GroupTag::Sp, 2};
    EXPECT_EQ(exact_charpoly_ratio(g, Family::H, 1, q(1, 4)), 1);
    EXPECT_EQ(exact_charpoly_ratio(g, Family::H, 1, q(1, 2)), 1);
    EXPECT_NE(charpoly_constant(g, Family::H, 1, q(1, 4)), charpoly_constant(g, Family::H, 1, q(1, 2)));
}

TEST(UnitaryFactorization, Examples) {
    for (auto t : {q(1, 3), q(1, 2)}) {
        auto c1 = unitary_factorization_check(SymbolSpec::make(Family::E, t, 1, 1), 1);
        EXPECT_EQ(c1.even_lhs, (1 + t * t) * (1 + t * t) - t * t);
        EXPECT_EQ(c1.even_lhs, c1.even_rhs);
        EXPECT_EQ(c1.odd_lhs, c1.odd_rhs);
        for (long K = 1; K <= 3; ++K) {
            auto e = unitary_factorization_check(SymbolSpec::make(Family::E, t, 2, 2), K);
            EXPECT_EQ(e.even_lhs, e.even_rhs);
            EXPECT_EQ(e.odd_lhs, e.odd_rhs);
            auto h = unitary_factorization_check(SymbolSpec::make(Family::H, t, 1, 1), K);
            EXPECT_EQ(h.even_lhs, h.even_rhs);
            EXPECT_EQ(h.odd_lhs, h.odd_rhs);
        }
    }
    EXPECT_THROW(unitary_factorization_check(SymbolSpec::make(Family::E, q(1, 2), 2, 1), 1), std::domain_error);
}

TEST(Duality, FormulaLevel) {
    for (long K = 2; K <= 4; ++K)
        for (auto t : {q(1, 4), q(1, 2)}) {
            auto d = duality_check(1, K, t);
            EXPECT_EQ(d.e_side, d.h_side) << "K=" << K;
        }
    // the determinant-level continuation t -> -t is not a constant multiple
    EXPECT_NE(duality_check(1, 2, q(1, 4)).determinant_ratio, duality_check(1, 2, q(1, 2)).determinant_ratio);
}

TEST(BasorChen, SpEBetaOneLimit) {
    double lim = std::exp(basor_chen_asymptotic(Family::E, {GroupTag::Sp, 1}, 1, 0.5));
    EXPECT_NEAR(lim, 4.0 / 3, 1e-6);
    EXPECT_NEAR(sp_e_beta1_closed(20, q(1, 2)).get_d(), lim, 1e-11);
}

TEST(BasorChen, MatchesLargeKExact) {
    for (GroupTag g : jacobi_tags)
        for (Family f : {Family::E, Family::H})
            for (long beta = 1; beta <= 2; ++beta) {
                double lim = basor_chen_asymptotic(f, {g, 1}, static_cast<double>(beta), 0.5);
                double ex = std::log(exact_charpoly_ratio({g, 30}, f, beta, q(1, 2)).get_d());
                EXPECT_NEAR(ex, lim, 1e-12) << to_string(g) << " " << to_string(f) << " beta=" << beta;
            }
}

TEST(BasorChen, DoubleIntegralOracles) {
    for (Family f : {Family::E, Family::H}) {
        EXPECT_EQ(basor_chen_double_integral(f, 0, 0.5), 0);
        for (double beta : {0.5, 1.0, 2.0}) {
            double quad = basor_chen_double_integral(f, beta, 0.5);
            EXPECT_NEAR(quad, basor_chen_double_integral_closed(beta, 0.5), 1e-10);
            EXPECT_NEAR(quad, basor_chen_double_integral_szego(f, beta, 0.5), 1e-10);
        }
    }
    EXPECT_NEAR(basor_chen_double_integral(Family::E, 1.5, 0.3), basor_chen_double_integral(Family::H, 1.5, 0.3), 1e-8);
}

TEST(BasorChen, PrintedGBlock) {
    EXPECT_NEAR(std::exp(gblock_printed_log(-0.5, -0.5)), 0.5, 1e-12);
    EXPECT_NEAR(std::exp(gblock_printed_log(0.5, 0.5)), 1, 1e-12);
    EXPECT_NEAR(std::exp(gblock_printed_log(-0.5, 0.5)), 1, 1e-12);
    EXPECT_NEAR(std::exp(gblock_printed_log(0.5, -0.5)), 1, 1e-12);
}

TEST(PrintedSeries, DivergesLogarithmically) {
    auto s0 = printed_series_partial(Family::E, 1, 0.5, 0);
    ASSERT_EQ(s0.size(), 1u);
    EXPECT_NEAR(s0[0], 0.75 / 4, 1e-15);
    auto r = printed_series_report(Family::E, 1, 0.5);
    EXPECT_TRUE(r.diverges);
    EXPECT_NEAR(r.slope, 0.25, 0.01);
    EXPECT_FALSE(r.matches_quadrature);
    EXPECT_LT(r.partial_sums[0], r.partial_sums[1]);
    EXPECT_LT(r.partial_sums[1], r.partial_sums[2]);
    // term n equals (beta^2/4)(1 - t^{2n+2})/(n+1)
    auto s = printed_series_partial(Family::E, 1, 0.5, 5);
    for (int n = 1; n <= 5; ++n) EXPECT_NEAR(s[n] - s[n - 1], 0.25 * (1 - std::pow(0.25, n + 1)) / (n + 1), 1e-15);
    EXPECT_THROW(printed_series_partial(Family::E, 1, 0.5, 20000), std::domain_error);
}
