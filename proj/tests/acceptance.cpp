// One PASS/FAIL line per acceptance criterion; indented lines carry details.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "rmtlab/rmtlab.hpp"

using namespace rmtlab;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& summary) {
    std::printf("criterion %d: %s %s\n", id, ok ? "PASS" : "FAIL", summary.c_str());
    if (!ok) ++failures;
}

template <class... A>
void detail(const char* fmt, A... a) {
    std::printf("    ");
    if constexpr (sizeof...(A) == 0)
        std::fputs(fmt, stdout);
    else
        std::printf(fmt, a...);
    std::printf("\n");
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

std::string secs(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<ExactScalar> grid_t{rational(1, 4), rational(1, 2), rational(3, 4)};

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    int cases = 0, bad = 0;
    for (long n1 = 1; n1 <= 4; ++n1)
        for (long n2 = 1; n2 <= 4; ++n2)
            for (long k = 1; k <= 6; ++k)
                for (const auto& t : grid_t) {
                    ExactScalar tz = toeplitz_det(SymbolSpec::make(Family::E, t, n1, n2), k).value;
                    ExactScalar sc = schur_sum_oracle(n1, n2, k, t);
                    ExactScalar mx = meixner_sum(n1, n2, k, t);
                    ++cases;
                    if (tz != sc || tz != mx) {
                        ++bad;
                        detail("mismatch N1=%ld N2=%ld K=%ld t=%s", n1, n2, k, to_string(t).c_str());
                    }
                }
    double dt = seconds_since(t0);
    report(1, bad == 0 && dt < 60,
           std::to_string(cases) + " grid points, Toeplitz = Schur sum = Meixner sum exactly, " +
               std::to_string(bad) + " mismatches, " + secs(dt) + " s (limit 60 s)");
}

void criterion2() {
    int cases = 0, bad = 0;
    for (long n1 = 1; n1 <= 4; ++n1)
        for (long n2 = 1; n2 <= 4; ++n2)
            for (long k = 1; k <= 6; ++k) {
                ++cases;
                if (bs_closed_form(n1, n2, k) != schur_sum_oracle(n1, n2, k, ExactScalar(1))) ++bad;
            }
    ExactScalar s1 = bs_closed_form(1, 1, 1), s2 = bs_closed_form(2, 1, 2);
    bool spots = s1 == 2 && s2 == 6;
    detail("spot values: K=1,N1=N2=1 -> %s; K=2,N1=2,N2=1 -> %s", to_string(s1).c_str(), to_string(s2).c_str());
    report(2, bad == 0 && spots,
           std::to_string(cases) + " t=1 cases, closed form = Schur sum exactly, " + std::to_string(bad) +
               " mismatches, spot values 2 and 6");
}

void criterion3() {
    int bad = 0;
    double worst = 0;
    for (long beta = 1; beta <= 4; ++beta)
        for (long k = 1; k <= 4; ++k) {
            ExactScalar closed = bs_closed_form(beta, beta, k);
            if (romanovski_partition_exact(k, beta) != closed) ++bad;
            double rel = std::abs(romanovski_partition(k, static_cast<double>(beta)) / closed.get_d() - 1);
            worst = std::max(worst, rel);
        }
    report(3, bad == 0 && worst < 1e-10,
           "2^{K^2+2K beta} prod h_n vs closed form, beta,K <= 4: exact mismatches " + std::to_string(bad) +
               ", worst float relative error " + sci(worst));
}

struct BranchResult {
    double residual = 0, norm = 0, odd = 0;
    bool ok() const { return residual < 1e-6 && norm < 1e-10 && odd < 1e-10; }
};

BranchResult circle_branch(const PhasePoint& p) {
    BranchResult r;
    const bool strong = p.phase() == Phase::strong;
    const double half = strong ? support_boundary(p) : pi;
    for (int k = 0; k < 50; ++k) {
        double phi = -half + 2 * half * (k + 1) / 51.0;
        r.residual = std::max(r.residual, saddle_residual(p, phi));
        r.odd = std::max(r.odd, std::abs(density_circle(p, phi).imag() + density_circle(p, -phi).imag()));
    }
    r.norm = std::abs(density_normalization(p) - 1.0);
    return r;
}

BranchResult line_branch(const StereoParams& p) {
    BranchResult r;
    const double A = boundary_A(p);
    auto poles = stereo_poles(p);
    for (int k = 0; k < 50; ++k) {
        double x = -A + 2 * A * (k + 1) / 51.0;
        r.residual = std::max(r.residual, real_saddle_residual(poles, -A, A, x));
        r.odd = std::max(r.odd, std::abs(density_real(p, x).imag() + density_real(p, -x).imag()));
    }
    r.norm = std::abs(integrate_real_density(poles, -A, A, [](double) { return 1.0; }) - 1.0);
    return r;
}

void criterion4() {
    const double t = 0.5;
    int total = 0, passed = 0;
    auto show = [&](const char* label, Family f, const char* ph, double g, double v, const BranchResult& r) {
        ++total;
        if (r.ok()) ++passed;
        detail("%-6s %s %-6s gamma=%-5g v=%-4g residual=%.3e norm=%.1e odd=%.1e %s", label, to_string(f), ph, g, v,
               r.residual, r.norm, r.odd, r.ok() ? "ok" : "not satisfied");
    };
    for (Family f : {Family::H, Family::E})
        for (double v : {0.0, 0.5}) {
            double gc = critical_gamma(f, t);
            show("circle", f, "weak", 0.5 * gc, v, circle_branch(PhasePoint::make(f, t, 0.5 * gc, v)));
            show("circle", f, "strong", 2 * gc, v, circle_branch(PhasePoint::make(f, t, 2 * gc, v)));
        }
    for (Family f : {Family::H, Family::E})
        for (double v : {0.0, 0.5}) {
            double g = 2 * critical_gamma(f, t);
            show("line", f, "strong", g, v, line_branch(StereoParams::make(t, g, v, 0, f)));
        }
    detail("v != 0 gapped densities carry a phi-independent imaginary offset; no symmetric real support solves it");
    report(4, passed == total,
           std::to_string(passed) + "/" + std::to_string(total) +
               " density branches satisfy residual < 1e-6, normalization and odd imaginary part to 1e-10");
}

void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (Family f : {Family::H, Family::E})
        for (double t : {0.3, 0.5, 0.7}) {
            double expected = 1 / (t * t * t * (1 - t * t));
            auto dens = phase_order(f, t, 0, FreeEnergySource::density);
            auto closed = phase_order(f, t, 0, FreeEnergySource::closed);
            double rel = std::abs(dens.jump3 / expected - 1);
            bool here = dens.order == 3 && rel < 0.02;
            ok = ok && here;
            detail("%s t=%.1f order=%d jump3=%.6f (closed-form branches %.6f) expected %.6f rel %.2e", to_string(f), t,
                   dens.order, dens.jump3, closed.jump3, expected, rel);
        }
    double dt = seconds_since(t0);
    report(5, ok && dt < 30,
           "third-order jump from density-weighted dF/dt within 2% of 1/(t^3(1-t^2)), both families, " +
               secs(dt) + " s (limit 30 s)");
}

void criterion6() {
    bool ok = true;
    const double t = 0.5;
    for (Family f : {Family::H, Family::E})
        for (double v : {0.25, 0.5}) {
            double expected = -v * v / (t * t * (f == Family::H ? 1 - t : 1 + t));
            auto dens = phase_order(f, t, v, FreeEnergySource::density);
            double rel = std::abs(dens.jump2 / expected - 1);
            bool here = dens.order == 2 && rel < 0.02;
            ok = ok && here;
            detail("%s v=%.2f order=%d jump2=%.6f expected %.6f rel %.2e", to_string(f), v, dens.order, dens.jump2,
                   expected, rel);
        }
    report(6, ok, "second-order jump within 2% of -v^2/(t^2(1-+t)), H with (1-t), E with (1+t)");
}

void criterion7() {
    double worst = 0;
    int n = 0;
    for (Family f : {Family::H, Family::E}) {
        for (double t : {0.3, 0.5, 0.7})
            for (double g : {0.25, 0.75, 1.5, 3.0})
                for (double v : {0.0, 0.25, 0.5}) {
                    auto p = PhasePoint::make(f, t, g, v);
                    worst = std::max(worst, std::abs(free_energy_quadrature(p) - free_energy_closed(p)));
                    ++n;
                }
    }
    // main-text weak branch with (1+v^2): reported only
    auto p = PhasePoint::make(Family::H, 0.5, 0.75, 0.5);
    double main_text = -p.gamma * p.gamma * (1 + p.v * p.v) * std::log(1 - p.t * p.t);
    detail("main-text (1+v^2) weak branch at H t=.5 gamma=.75 v=.5 differs from quadrature by %.6f (reported)",
           std::abs(main_text - free_energy_quadrature(p)));
    report(7, worst < 1e-6,
           std::to_string(n) + " points (3 t x 4 gamma x 3 v, both families): max |quadrature - closed| = " +
               sci(worst));
}

void criterion8() {
    bool ok = true;
    int printed_flagged = 0, checked = 0;
    for (double t : {0.3, 0.5, 0.7})
        for (double g : {1.0, 2.0}) {
            if (!(g > critical_gamma(Family::E, t))) {
                bool rejected = false;
                try {
                    boundary_A(StereoParams{Family::E, t, g, 0, 0});
                } catch (const std::domain_error&) {
                    rejected = true;
                }
                ok = ok && rejected;
                detail("t=%.1f gamma=%g is in the ungapped phase (gamma_c=%.4f): no support boundary, input %s", t, g,
                       critical_gamma(Family::E, t), rejected ? "rejected" : "accepted");
                continue;
            }
            auto p = StereoParams::make(t, g);
            double A = boundary_A(p);
            double normc = std::abs(normalization_condition(p, A));
            double sin2 = support_sin2(PhasePoint::make(Family::E, t, g));
            double back = std::abs(A * A / (1 + A * A) - sin2);
            double Ap = boundary_A_printed(p);
            double pnorm = std::abs(normalization_condition(p, Ap));
            double pback = std::abs(Ap * Ap / (1 + Ap * Ap) - sin2);
            bool flagged = pnorm > 1e-6 || pback > 1e-6;
            ++checked;
            if (flagged) ++printed_flagged;
            ok = ok && normc < 1e-12 && back < 1e-10;
            detail("t=%.1f gamma=%g A^2=%.12f normalization=%.1e back-projection=%.1e | printed A^2=%.6f "
                   "normalization=%.2e back-projection=%.2e %s",
                   t, g, A * A, normc, back, Ap * Ap, pnorm, pback, flagged ? "(erratum flagged)" : "");
        }
    report(8, ok && printed_flagged == checked,
           "corrected A^2 normalized to 1e-12 and back-projects to sin^2(phi0/2) to 1e-10 at " +
               std::to_string(checked) + " gapped points; printed denominator flagged at " +
               std::to_string(printed_flagged) + "/" + std::to_string(checked));
}

void criterion9() {
    const GroupTag tags[] = {GroupTag::O_plus_even, GroupTag::Sp, GroupTag::O_plus_odd, GroupTag::O_minus_odd};
    double worst_bridge = 0;
    for (GroupTag tag : tags)
        for (long N = 1; N <= 2; ++N)
            for (long K = 1; K <= 4; ++K)
                for (const auto& t : {rational(1, 4), rational(1, 2)}) {
                    double ex = th_determinant(th_variant(tag), SymbolSpec::make(Family::E, t, N, N), K).get_d();
                    double q = hankel_via_quadrature({tag, K}, Family::E, static_cast<double>(N), t.get_d());
                    worst_bridge = std::max(worst_bridge, std::abs(q - ex) / std::abs(ex));
                }
    detail("bridge: max relative |th_determinant - hankel_via_quadrature| = %.2e", worst_bridge);

    auto spread = [](const std::vector<PiScaled>& cs) {
        double s = 0;
        for (const auto& c : cs) {
            if (c.pi_power != cs[0].pi_power) return 1.0;
            s = std::max(s, std::abs(ExactScalar(c.coeff / cs[0].coeff).get_d() - 1));
        }
        return s;
    };
    double worst_const = 0;
    int cases = 0;
    for (GroupTag tag : tags)
        for (long N = 1; N <= 2; ++N)
            for (long K = 1; K <= 4; ++K) {
                std::vector<PiScaled> cs;
                for (const auto& t : grid_t) cs.push_back(charpoly_constant({tag, K}, Family::E, N, t));
                worst_const = std::max(worst_const, spread(cs));
                ++cases;
                if (K == 2) detail("E %-6s N=%ld K=%ld constant %s", to_string(tag), N, K, to_string(cs[0].coeff).c_str());
            }
    for (long M = 2; M <= 5; ++M)
        for (long N = 1; N <= 2; ++N) {
            std::vector<PiScaled> cs;
            for (const auto& t : grid_t) cs.push_back(charpoly_constant({GroupTag::U, M}, Family::E, N, t));
            worst_const = std::max(worst_const, spread(cs));
            ++cases;
        }
    // H family: Cauchy-transform Wronskians are asserted, printed polynomial ones reported
    double worst_h = 0;
    int printed_h_const = 0, h_cases = 0;
    for (GroupTag tag : tags)
        for (long K = 2; K <= 3; ++K)
            for (long N = 1; N < K; ++N) {
                std::vector<PiScaled> cc, cp;
                for (const auto& t : grid_t) {
                    ExactScalar ex = exact_charpoly_ratio({tag, K}, Family::H, N, t);
                    cc.push_back(charpoly_prediction_h_cauchy({tag, K}, N, t) / ex);
                    cp.push_back(charpoly_prediction({tag, K}, Family::H, N, t) / ex);
                }
                worst_h = std::max(worst_h, spread(cc));
                ++h_cases;
                if (spread(cp) < 1e-10) ++printed_h_const;
            }
    detail("H family, Cauchy-transform Wronskians: max constant spread %.1e over %d cases", worst_h, h_cases);
    detail("H family, printed polynomial Wronskians: t-independent in %d/%d cases (reported)", printed_h_const, h_cases);
    report(9, worst_bridge < 1e-9 && worst_const < 1e-10 && worst_h < 1e-10,
           "bridge within " + sci(worst_bridge) + " (limit 1e-9); E Wronskian constants " +
               "stable across t in {1/4,1/2,3/4} to " + sci(worst_const) + " in " +
               std::to_string(cases) + " cases");
}

void criterion10() {
    const ExactScalar t = rational(1, 2), limit = rational(4, 3);
    bool exact_ok = true;
    for (long K = 1; K <= 20; ++K) {
        ExactScalar z = th_determinant(THVariant::minus, SymbolSpec::make(Family::E, t, 1, 1), K);
        ExactScalar err = limit - z;
        if (z != sp_e_beta1_closed(K, t) || err != qpow(t, 2 * K + 2) / (1 - t * t)) exact_ok = false;
    }
    double bc = std::exp(basor_chen_asymptotic(Family::E, {GroupTag::Sp, 1}, 1.0, 0.5));
    double bc_err = std::abs(bc - 4.0 / 3.0);
    auto rep = printed_series_report(Family::E, 1.0, 0.5);
    detail("Basor-Chen prediction %.15f vs 4/3, error %.2e", bc, bc_err);
    detail("printed U_n series partial sums at n=100,1000,10000: %.6f %.6f %.6f; slope per ln n %.5f (beta^2/4 = %.2f); "
           "double integral by quadrature %.10f",
           rep.partial_sums[0], rep.partial_sums[1], rep.partial_sums[2], rep.slope, rep.expected_slope,
           rep.quadrature_value);
    report(10, exact_ok && bc_err < 1e-6 && rep.diverges,
           std::string("exact Sp E beta=1 sequence and error t^{2K+2}/(1-t^2) for K<=20 ") +
               (exact_ok ? "hold" : "broken") + "; asymptotic within 1e-6; printed series " +
               (rep.diverges ? "reported divergent" : "not divergent"));
}

void criterion11() {
    double wr = 0, wi = 0, wv = 0;
    for (double v : {-0.6, -0.3, 0.3, 0.6}) {
        auto c = deformed_contour({1.0}, v, 720);
        if (!c.rays_without_root.empty() || c.points.size() != c.phis.size()) wr = 1;
        double r0 = std::sqrt((1 + v) / (1 - v));
        for (std::size_t j = 0; j < c.points.size(); ++j) {
            wr = std::max(wr, std::abs(c.radii[j] - r0));
            wi = std::max(wi, std::abs(c.potential[j].imag()));
            wv = std::max(wv, std::abs(c.potential[j].real() - 2 * std::sqrt(1 - v * v) * std::cos(c.phis[j])));
        }
    }
    report(11, wr < 1e-10 && wi < 1e-10 && wv < 1e-10,
           "GW contour at v in {+-0.3,+-0.6}: radius error " + sci(wr) + ", |Im V| " +
               sci(wi) + ", restricted potential error " + sci(wv));
}

}  // namespace

int main() {
    void (*all[])() = {criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
                       criterion7, criterion8, criterion9, criterion10, criterion11};
    for (int i = 0; i < 11; ++i) {
        try {
            all[i]();
        } catch (const std::exception& e) {
            report(i + 1, false, std::string("exception: ") + e.what());
        }
        std::fflush(stdout);
    }
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
