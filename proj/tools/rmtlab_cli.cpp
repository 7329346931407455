// Command-line front end: verification suites, sweeps and convergence tables.
// Exit codes: 0 success, 1 verification failure, 2 validation error, 3 budget exceeded.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rmtlab/rmtlab.hpp"

using namespace rmtlab;

namespace {

constexpr int exit_ok = 0, exit_verify = 1, exit_validation = 2, exit_budget = 3;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

std::uint64_t budget_from_env() {
    const char* s = std::getenv("RMTLAB_BUDGET");
    if (!s || !*s) return default_budget;
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(s, &pos);
        if (pos != std::string(s).size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ValidationError(std::string("RMTLAB_BUDGET must be a nonnegative integer, got '") + s + "'");
    }
}

struct Output {
    std::string format = "csv";
    std::string path;

    void emit(const std::string& command, const json& params, const Table& t, const json& extra = json::object()) const {
        std::string text = format == "json" ? dump_json(table_document(command, params, t, extra)) : to_csv(t);
        write(path, text);
    }

    static void write(const std::string& p, const std::string& text) {
        if (p.empty() || p == "-") {
            std::cout << text << std::flush;
            return;
        }
        try {
            write_text(p, text);
        } catch (const std::runtime_error& e) {
            throw ValidationError(e.what());
        }
    }

    /// Sibling file for a secondary CSV table: out.csv -> out_<suffix>.csv
    std::string sibling(const std::string& suffix) const {
        auto dot = path.rfind('.');
        auto slash = path.find_last_of('/');
        if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "_" + suffix;
        return path.substr(0, dot) + "_" + suffix + path.substr(dot);
    }
};

void add_output_flags(CLI::App* sub, Output& out) {
    sub->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out.path, "Output file (stdout when omitted)");
}

std::vector<double> parse_reals(const std::vector<std::string>& xs, const char* name) {
    require(!xs.empty(), std::string("--") + name + " grid must not be empty");
    std::vector<double> r;
    for (const auto& x : xs) {
        require(!x.empty(), std::string("--") + name + " grid has an empty entry");
        r.push_back(parse_real(x));
    }
    return r;
}

std::vector<Family> parse_families(const std::string& s) {
    if (s == "both") return {Family::H, Family::E};
    return {parse_family(s)};
}

/// Runs jobs[i] for i in [0, n) on up to `workers` threads; results land by index.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& job) {
    workers = std::max(1, std::min<int>(workers, static_cast<int>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) job(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) job(i);
        });
    for (auto& th : pool) th.join();
}

// verify-equivalence ---------------------------------------------------------

struct VerifyArgs {
    long n1 = 1, n2 = 1, k = 1, shift = 0;
    std::string t = "1/2";
};

int cmd_verify(const VerifyArgs& a, const Output& out) {
    const ExactScalar t = parse_exact(a.t);
    require(t > 0 && t <= 1, "t must lie in (0,1]");
    require(a.n1 >= 1 && a.n2 >= 1 && a.k >= 1, "--n1, --n2 and --k must be positive");
    const std::uint64_t budget = budget_from_env();
    Table tab{{"method", "value"}, {}};
    std::vector<ExactScalar> values;
    auto add = [&](const char* m, const ExactScalar& v) {
        tab.add({m, cell(v)});
        values.push_back(v);
    };
    if (a.shift != 0) {
        require(t == 1 && a.n1 == a.n2, "a nonzero --shift is checked at t = 1 with n1 = n2");
        require(std::abs(a.shift) <= a.n1, "|shift| must not exceed n1");
        add("toeplitz", toeplitz_det(SymbolSpec::make(Family::E, t, a.n1, a.n2, a.shift), a.k).value);
        add("closed_form", shifted_closed_form(a.n1, a.shift, a.k));
    } else {
        add("toeplitz", toeplitz_det(SymbolSpec::make(Family::E, t, a.n1, a.n2), a.k).value);
        add("schur_sum", schur_sum_oracle(a.n1, a.n2, a.k, t, budget));
        add("meixner_sum", meixner_sum(a.n1, a.n2, a.k, t, budget));
        if (t == 1) add("closed_form", bs_closed_form(a.n1, a.n2, a.k));
    }
    const bool pass = std::all_of(values.begin(), values.end(), [&](const ExactScalar& v) { return v == values[0]; });
    json params{{"n1", a.n1}, {"n2", a.n2}, {"k", a.k}, {"t", to_string(t)}, {"shift", a.shift}};
    out.emit("verify-equivalence", params, tab, {{"pass", pass}, {"value", to_string(values[0])}});
    std::cerr << (pass ? "PASS" : "FAIL") << " value " << to_string(values[0]) << "\n";
    return pass ? exit_ok : exit_verify;
}

// phase-diagram --------------------------------------------------------------

struct PhaseArgs {
    std::string family = "both";
    std::vector<std::string> t{"0.5"}, gamma{"0.5", "1", "1.5", "2", "3"}, v{"0"};
    int workers = 1;
    int samples = 0;  // density samples per grid point; 0 skips the profiles
};

int cmd_phase(const PhaseArgs& a, const Output& out) {
    const auto fams = parse_families(a.family);
    const auto ts = parse_reals(a.t, "t"), gs = parse_reals(a.gamma, "gamma"), vs = parse_reals(a.v, "v");
    for (double t : ts) require(t > 0 && t < 1, "t values must lie in (0,1)");
    for (double g : gs) require(g >= 0, "gamma values must be nonnegative");
    for (double v : vs) require(v > -1 && v < 1, "v values must lie in (-1,1)");
    require(a.workers >= 1, "--workers must be positive");
    require(a.samples == 0 || a.samples >= 2, "--samples must be 0 or at least 2");
    require(a.samples == 0 || out.format == "json" || !(out.path.empty() || out.path == "-"),
            "CSV density profiles need --out (they go to a sibling file)");

    // transition order per (family, t, v) slice
    struct Slice {
        Family f;
        double t, v;
        PhaseOrderResult r;
        std::string error;
    };
    std::vector<Slice> slices;
    for (Family f : fams)
        for (double t : ts)
            for (double v : vs) slices.push_back({f, t, v, {}, {}});
    parallel_for(slices.size(), a.workers, [&](std::size_t i) {
        try {
            slices[i].r = phase_order(slices[i].f, slices[i].t, slices[i].v);
        } catch (const std::exception& e) {
            slices[i].error = e.what();
        }
    });

    struct Point {
        Family f;
        double t, g, v;
        std::size_t slice;
        std::vector<json> row;
        std::vector<std::vector<json>> profile;
    };
    std::vector<Point> pts;
    std::size_t si = 0;
    for (Family f : fams)
        for (double t : ts)
            for (double v : vs) {
                for (double g : gs) pts.push_back({f, t, g, v, si, {}, {}});
                ++si;
            }
    parallel_for(pts.size(), a.workers, [&](std::size_t i) {
        Point& p = pts[i];
        const Slice& s = slices[p.slice];
        std::vector<json> row{to_string(p.f), p.t, p.g, p.v};
        try {
            auto pp = PhasePoint::make(p.f, p.t, p.g, p.v);
            const Phase ph = pp.phase();
            if (a.samples > 0) {
                auto prof = density_profile(pp, a.samples);
                for (std::size_t j = 0; j < prof.phis.size(); ++j)
                    p.profile.push_back({to_string(p.f), p.t, p.g, p.v, to_string(ph), prof.phis[j],
                                         prof.values[j].real(), prof.values[j].imag()});
            }
            const double h = std::min({1e-4, p.t / 4, (1 - p.t) / 4});
            const double d2 = (free_energy_branch_dt(p.f, ph, p.t + h, p.g, p.v) -
                               free_energy_branch_dt(p.f, ph, p.t - h, p.g, p.v)) /
                              (2 * h);
            row.insert(row.end(), {to_string(ph), critical_gamma(p.f, p.t), free_energy_closed(pp),
                                   free_energy_quadrature(pp), free_energy_closed_dt(pp),
                                   free_energy_dt_quadrature(pp).real(), d2});
        } catch (const std::exception& e) {
            std::cerr << "phase-diagram: " << to_string(p.f) << " t=" << p.t << " gamma=" << p.g << " v=" << p.v
                      << ": " << e.what() << "\n";
            row.insert(row.end(), {"error", nullptr, nullptr, nullptr, nullptr, nullptr, nullptr});
            row.insert(row.end(), {nullptr, nullptr, nullptr, std::string("error: ") + e.what()});
            p.row = std::move(row);
            return;
        }
        if (s.error.empty())
            row.insert(row.end(), {s.r.order, s.r.jump2, s.r.jump3, "ok"});
        else
            row.insert(row.end(), {nullptr, nullptr, nullptr, "ok; transition: " + s.error});
        p.row = std::move(row);
    });
    Table tab{{"family", "t", "gamma", "v", "phase", "gamma_c", "F_closed", "F_quadrature", "dF_dt", "dF_dt_density", "d2F_dt2",
               "transition_order", "jump_d2F", "jump_d3F", "status"},
              {}};
    Table prof{{"family", "t", "gamma", "v", "phase", "phi", "re_rho", "im_rho"}, {}};
    for (auto& p : pts) {
        tab.add(std::move(p.row));
        for (auto& r : p.profile) prof.add(std::move(r));
    }
    json params{{"family", a.family}, {"t", ts}, {"gamma", gs}, {"v", vs}, {"samples", a.samples}};
    json extra = json::object();
    if (a.samples > 0 && out.format == "json")
        extra["density"] = {{"columns", prof.columns}, {"rows", prof.rows}};
    out.emit("phase-diagram", params, tab, extra);
    if (a.samples > 0 && out.format == "csv") Output::write(out.sibling("density"), to_csv(prof));
    return exit_ok;
}

// density --------------------------------------------------------------------

struct DensityArgs {
    std::string family = "H", line = "circle", t = "0.5", gamma = "1", v = "0", shift = "0";
    int samples = 201;
};

int cmd_density(const DensityArgs& a, const Output& out) {
    const Family f = parse_family(a.family);
    const double t = parse_real(a.t), g = parse_real(a.gamma), v = parse_real(a.v), b = parse_real(a.shift);
    require(a.samples >= 2, "--samples must be at least 2");
    json params{{"family", a.family}, {"line", a.line}, {"t", t}, {"gamma", g}, {"v", v}, {"shift", b}};
    if (a.line == "circle") {
        require(b == 0, "--shift applies to the real line only");
        auto p = PhasePoint::make(f, t, g, v);
        auto prof = density_profile(p, a.samples);
        Table tab{{"family", "t", "gamma", "v", "phase", "phi", "re_rho", "im_rho"}, {}};
        for (std::size_t i = 0; i < prof.phis.size(); ++i)
            tab.add({to_string(f), t, g, v, to_string(prof.phase), prof.phis[i], prof.values[i].real(),
                     prof.values[i].imag()});
        out.emit("density", params, tab,
                 {{"phase", to_string(prof.phase)}, {"support_half_width", prof.support_half_width}});
        return exit_ok;
    }
    require(a.line == "real", "--line must be circle or real");
    auto p = StereoParams::make(t, g, v, b, f);
    auto prof = real_line_profile(p, a.samples);
    Table tab{{"family", "t", "gamma", "v", "b", "A", "B", "x", "re_rho", "im_rho"}, {}};
    for (std::size_t i = 0; i < prof.xs.size(); ++i)
        tab.add({to_string(f), t, g, v, b, prof.A, prof.B, prof.xs[i], prof.values[i].real(), prof.values[i].imag()});
    out.emit("density", params, tab, {{"support_left", -prof.A}, {"support_right", prof.B}});
    return exit_ok;
}

// group-convergence ----------------------------------------------------------

struct GroupArgs {
    std::string group = "Sp", family = "E", beta = "1", t = "1/2";
    long k_max = 20;
};

int cmd_group(const GroupArgs& a, const Output& out) {
    const GroupTag tag = parse_group(a.group);
    require(tag != GroupTag::U, "group-convergence covers O+even, Sp, O+odd and O-odd");
    const Family f = parse_family(a.family);
    require(a.k_max >= 1, "--k-max must be positive");
    const double beta = parse_real(a.beta), td = parse_real(a.t);
    require(td > 0 && td < 1, "t must lie in (0,1)");
    require(beta >= 0, "beta must be nonnegative");
    // exact path when beta is a nonnegative integer and t rational
    std::optional<ExactScalar> texact;
    try {
        texact = parse_exact(a.t);
    } catch (const std::invalid_argument&) {
    }
    const bool exact = texact && beta == std::floor(beta);
    if (exact) require(a.k_max <= 24, "--k-max must not exceed 24 on the exact path");
    const long N = static_cast<long>(beta);
    const double limit = std::exp(basor_chen_asymptotic(f, {tag, 1}, beta, td));
    Table tab{{"K", "exact", "value", "limit", "abs_error", "error_ratio"}, {}};
    double prev_err = 0;
    for (long K = 1; K <= a.k_max; ++K) {
        json ex = nullptr;
        double val;
        if (exact) {
            ExactScalar z = exact_charpoly_ratio({tag, K}, f, N, *texact);
            ex = cell(z);
            val = z.get_d();
        } else {
            val = hankel_via_quadrature({tag, K}, f, beta, td);
        }
        double err = std::abs(val - limit);
        json ratio = K > 1 && prev_err > 0 ? json(err / prev_err) : json(nullptr);
        tab.add({K, ex, val, limit, err, ratio});
        prev_err = err;
    }
    json params{{"group", a.group}, {"family", a.family}, {"beta", beta}, {"t", a.t}, {"k_max", a.k_max}};
    auto terms = basor_chen_terms(f, {tag, 1}, beta, td);
    auto div = printed_series_report(f, beta, td);
    json series{{"n", div.n_values},
                {"partial_sums", div.partial_sums},
                {"slope_per_log_n", div.slope},
                {"expected_slope", div.expected_slope},
                {"quadrature_value", div.quadrature_value},
                {"diverges", div.diverges},
                {"matches_quadrature", div.matches_quadrature}};
    out.emit("group-convergence", params, tab,
             {{"log_limit", terms.total},
              {"terms", {{"single", terms.single}, {"endpoint", terms.endpoint}, {"double", terms.double_integral}}},
              {"printed_gblock", std::exp(terms.gblock_printed_log)},
              {"printed_series", series}});
    std::cerr << "printed U_n series: partial sums " << (div.diverges ? "diverge" : "do not show log growth")
              << " (slope " << format_double(div.slope) << " per log n), "
              << (div.matches_quadrature ? "one matches" : "none match") << " the double integral "
              << format_double(div.quadrature_value) << "\n";
    return exit_ok;
}

// wronskian-check ------------------------------------------------------------

struct WronskianArgs {
    std::string group = "Sp", family = "E", h_formula = "cauchy";
    long n = 1, k = 2;
    std::vector<std::string> t{"1/4", "1/2", "3/4"};
};

int cmd_wronskian(const WronskianArgs& a, const Output& out) {
    const GroupTag tag = parse_group(a.group);
    const Family f = parse_family(a.family);
    require(!a.t.empty(), "--t grid must not be empty");
    require(a.h_formula == "cauchy" || a.h_formula == "printed", "--h-formula must be cauchy or printed");
    const bool cauchy = f == Family::H && a.h_formula == "cauchy";
    require(!(cauchy && tag == GroupTag::U), "the Cauchy-transform H formula covers orthogonal and symplectic groups");
    Table tab{{"group", "family", "N", "K", "t", "exact_value", "prediction", "pi_power", "ratio"}, {}};
    std::vector<PiScaled> consts;
    for (const auto& ts : a.t) {
        ExactScalar t = parse_exact(ts);
        require(t > 0 && t < 1, "t values must lie in (0,1)");
        GroupKind g{tag, a.k};
        ExactScalar ex = exact_charpoly_ratio(g, f, a.n, t);
        PiScaled pred = cauchy ? charpoly_prediction_h_cauchy(g, a.n, t) : charpoly_prediction(g, f, a.n, t);
        PiScaled c = pred / ex;
        consts.push_back(c);
        tab.add({to_string(tag), to_string(f), a.n, a.k, cell(t), cell(ex), cell(pred.coeff), pred.pi_power,
                 cell(c.coeff)});
    }
    const bool stable = std::all_of(consts.begin(), consts.end(), [&](const PiScaled& c) { return c == consts[0]; });
    json params{{"group", a.group}, {"family", a.family}, {"n", a.n}, {"k", a.k}, {"t", a.t}};
    if (f == Family::H) params["h_formula"] = a.h_formula;
    out.emit("wronskian-check", params, tab, {{"t_independent", stable}});
    std::cerr << (stable ? "PASS" : "FAIL") << " constant " << to_string(consts[0].coeff) << " * pi^"
              << consts[0].pi_power << (stable ? "" : " (varies with t)") << "\n";
    return stable ? exit_ok : exit_verify;
}

// contour --------------------------------------------------------------------

struct ContourArgs {
    std::string family, v = "0", beta = "1", t = "0.5";
    int samples = 360;
};

int cmd_contour(const ContourArgs& a, const Output& out) {
    const double v = parse_real(a.v), beta = parse_real(a.beta);
    Contour c;
    json params{{"v", v}, {"beta", beta}, {"samples", a.samples}};
    if (a.family.empty()) {
        c = deformed_contour({beta}, v, a.samples);
        params["potential"] = "gw";
    } else {
        const double t = parse_real(a.t);
        c = log_potential_locus(parse_family(a.family), t, beta, v, a.samples);
        params["potential"] = "log";
        params["family"] = a.family;
        params["t"] = t;
    }
    Table tab{{"phi", "r", "x", "y", "re_V", "im_V"}, {}};
    std::size_t pi_ = 0;
    for (std::size_t j = 0; j < c.phis.size(); ++j) {
        if (std::isnan(c.radii[j])) {
            tab.add({c.phis[j], nullptr, nullptr, nullptr, nullptr, nullptr});
            continue;
        }
        const auto& z = c.points[pi_];
        const auto& V = c.potential[pi_++];
        tab.add({c.phis[j], c.radii[j], z.real(), z.imag(), V.real(), V.imag()});
    }
    out.emit("contour", params, tab,
             {{"connected", c.connected},
              {"rays_without_root", c.rays_without_root},
              {"max_abs_im", c.max_abs_im}});
    std::cerr << "contour: " << (c.connected ? "connected" : "not connected") << ", " << c.rays_without_root.size()
              << " rays without a root, max |Im V| " << format_double(c.max_abs_im) << "\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and asymptotic tools for unitary, orthogonal and symplectic matrix models"};
    app.require_subcommand(1);
    Output out;

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify-equivalence", "Toeplitz = Schur sum = Meixner sum (and t=1 closed form)");
    verify->add_option("--n1", va.n1);
    verify->add_option("--n2", va.n2);
    verify->add_option("--k", va.k);
    verify->add_option("--t", va.t, "Rational p/q or decimal");
    verify->add_option("--shift", va.shift, "Monomial shift of the symbol (t = 1, n1 = n2)");
    add_output_flags(verify, out);

    PhaseArgs pa;
    auto* phase = app.add_subcommand("phase-diagram", "Free energy, derivatives and transition order over a grid");
    phase->add_option("--family", pa.family)->check(CLI::IsMember({"H", "E", "both"}));
    phase->add_option("--t", pa.t)->delimiter(',');
    phase->add_option("--gamma", pa.gamma)->delimiter(',');
    phase->add_option("--v", pa.v)->delimiter(',');
    phase->add_option("--workers", pa.workers);
    phase->add_option("--samples", pa.samples, "Density samples per grid point (0 skips profiles)");
    add_output_flags(phase, out);

    DensityArgs da;
    auto* density = app.add_subcommand("density", "Eigenvalue density on the circle or the real line");
    density->add_option("--family", da.family)->check(CLI::IsMember({"H", "E"}));
    density->add_option("--line", da.line)->check(CLI::IsMember({"circle", "real"}));
    density->add_option("--t", da.t);
    density->add_option("--gamma", da.gamma);
    density->add_option("--v", da.v);
    density->add_option("--shift", da.shift, "Real-line shift b (E family)");
    density->add_option("--samples", da.samples);
    add_output_flags(density, out);

    GroupArgs ga;
    auto* group = app.add_subcommand("group-convergence", "Exact group averages against the large-K limit");
    group->add_option("--group", ga.group);
    group->add_option("--family", ga.family)->check(CLI::IsMember({"H", "E"}));
    group->add_option("--beta", ga.beta);
    group->add_option("--t", ga.t);
    group->add_option("--k-max", ga.k_max);
    add_output_flags(group, out);

    WronskianArgs wa;
    auto* wr = app.add_subcommand("wronskian-check", "Wronskian predictions against exact determinant ratios");
    wr->add_option("--group", wa.group);
    wr->add_option("--family", wa.family)->check(CLI::IsMember({"H", "E"}));
    wr->add_option("--n1,--beta", wa.n, "Power N of the characteristic polynomial");
    wr->add_option("--k", wa.k, "Rank K (matrix size M for U)");
    wr->add_option("--t", wa.t)->delimiter(',');
    wr->add_option("--h-formula", wa.h_formula, "H family: cauchy or printed");
    add_output_flags(wr, out);

    ContourArgs ca;
    auto* contour = app.add_subcommand("contour", "Im V = 0 locus for the deformed GW or logarithmic potential");
    contour->add_option("--family", ca.family, "Use the E/H log potential instead of GW")
        ->check(CLI::IsMember({"H", "E"}));
    contour->add_option("--t", ca.t);
    contour->add_option("--v", ca.v);
    contour->add_option("--beta", ca.beta, "GW coupling or log-potential beta");
    contour->add_option("--samples", ca.samples, "Number of rays");
    add_output_flags(contour, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_validation;
    }

    try {
        if (*verify) return cmd_verify(va, out);
        if (*phase) return cmd_phase(pa, out);
        if (*density) return cmd_density(da, out);
        if (*group) return cmd_group(ga, out);
        if (*wr) return cmd_wronskian(wa, out);
        if (*contour) return cmd_contour(ca, out);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return exit_budget;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_verify;
    }
    return exit_validation;
}
