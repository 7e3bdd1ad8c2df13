#include "odfrac/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "odfrac/field_io.hpp"
#include "odfrac/norms.hpp"
#include "odfrac/operators.hpp"

namespace odfrac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double spread(const std::vector<double>& v) {
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    double mid = 0.5 * (*lo + *hi);
    return mid == 0.0 ? 0.0 : (*hi - *lo) / std::abs(mid);
}

struct LineFit {
    double slope = 0.0, intercept = 0.0, rel_residual = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit f;
    double denom = m * sxx - sx * sx;
    f.slope = (m * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / m;
    double r2 = 0, n2 = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double e = y[i] - (f.slope * x[i] + f.intercept);
        r2 += e * e;
        n2 += y[i] * y[i];
    }
    f.rel_residual = n2 > 0 ? std::sqrt(r2 / n2) : 0.0;
    return f;
}

// Composite midpoint on a power-graded mesh clustered at `a` (handles the
// integrable log singularity of the counterexample bound).
double integrate_graded(double a, double b, const std::function<double(double)>& f,
                        int cells = 20000, double grade = 3.0) {
    double acc = 0.0;
    for (int k = 0; k < cells; ++k) {
        double t0 = double(k) / cells, t1 = double(k + 1) / cells;
        double x0 = a + (b - a) * std::pow(t0, grade);
        double x1 = a + (b - a) * std::pow(t1, grade);
        acc += f(0.5 * (x0 + x1)) * (x1 - x0);
    }
    return acc;
}

std::string case_id(const std::string& fn, int N, const std::string& extra = "") {
    std::ostringstream os;
    os << fn << "@N=" << N;
    if (!extra.empty()) os << ":" << extra;
    return os.str();
}

template <class T>
std::vector<T> subsample(std::vector<T> family, int max_cases, unsigned seed) {
    if (max_cases <= 0 || static_cast<int>(family.size()) <= max_cases) return family;
    std::mt19937 rng(seed);
    std::shuffle(family.begin(), family.end(), rng);
    family.resize(max_cases);
    return family;
}

// ratio ||u - c*||_q / ||d_s u||_{L^p_od} on a given grid; vacuous when the
// seminorm vanishes and u is constant.
struct EmbeddingRatio {
    double lhs = 0, rhs = 0, ratio = 0, cstar = 0;
    bool vacuous = false, rigidity_violated = false;
};

EmbeddingRatio embedding_ratio(const ScalarFnSpec& spec, const GridSpec& grid,
                               double s, double p, double q) {
    EmbeddingRatio r;
    ScalarField u = sample_scalar(spec, grid);
    auto [c, lhs] = best_constant_shift(u, q);
    r.cstar = c;
    r.lhs = lhs;
    r.rhs = gagliardo_seminorm(u, s, p);
    if (r.rhs < 1e-12) {
        auto [mn, mx] = std::minmax_element(u.values.begin(), u.values.end());
        if (*mx - *mn < 1e-10) {
            r.vacuous = true;  // constant: 0/0 recorded, never a silent pass
            r.ratio = 0.0;
        } else {
            r.rigidity_violated = true;  // would contradict the rigidity corollary
            r.ratio = kInf;
        }
        return r;
    }
    r.ratio = r.lhs / r.rhs;
    return r;
}

// Same ratio with u and the grid dilated together: u_lam(x) = u(lam x) on
// [-L/lam, L/lam]^n with the same N. The continuum ratio is invariant.
EmbeddingRatio embedding_ratio_dilated(const ScalarFnSpec& spec, int dim, double L,
                                       int N, double lambda, double s, double p,
                                       double q) {
    GridSpec gd = make_grid(dim, L / lambda, N);
    ScalarFnSpec dil = spec;
    switch (spec.kind) {
        case ScalarFnSpec::Kind::Gaussian:
        case ScalarFnSpec::Kind::Bump:
            dil.center = spec.center / lambda;
            dil.width = spec.width / lambda;
            break;
        case ScalarFnSpec::Kind::PolyGaussian:
            // x^d exp(-|x|^2/w^2) scaled in amplitude by lam^{-d} on rescale;
            // amplitude scaling drops out of the ratio, only shape matters
            dil.width = spec.width / lambda;
            break;
        default:
            break;
    }
    return embedding_ratio(dil, gd, s, p, q);
}

void note_norm(VerificationReport& rep, const std::string& kind, double value,
               const FracParams& fp, const GridSpec& g) {
    NormResult nr;
    nr.kind = kind;
    nr.value = value;
    nr.params = fp;
    nr.points_per_axis = g.points_per_axis;
    nr.half_width = g.half_width;
    rep.norm_rows.push_back(std::move(nr));
}

std::vector<OdFnSpec> make_gfamily(int count) {
    std::vector<OdFnSpec> fam;
    const double centers[] = {1.5, 2.0, 2.5, 3.0};
    const double radii[] = {0.75, 1.25};
    for (double a : centers)
        for (double r : radii)
            fam.push_back(OdFnSpec::disjoint_bumps(ScalarFnSpec::bump(-a, r),
                                                   ScalarFnSpec::bump(a, r)));
    const double sig[] = {0.5, 0.8};
    for (double a : centers)
        for (double sg : sig)
            fam.push_back(OdFnSpec::separated_pair(ScalarFnSpec::gaussian(-a, sg, 1.0),
                                                   ScalarFnSpec::gaussian(a, sg, 1.0)));
    if (count > 0 && static_cast<int>(fam.size()) > count) fam.resize(count);
    return fam;
}

}  // namespace

std::vector<ScalarFnSpec> default_scalar_family(int dim) {
    std::vector<ScalarFnSpec> fam;
    fam.push_back(ScalarFnSpec::gaussian(0.0, 1.0, 1.0));
    fam.push_back(ScalarFnSpec::gaussian(0.5, 1.5, 2.0));
    if (dim == 1) {
        fam.push_back(ScalarFnSpec::gaussian(-1.0, 0.7, 0.6));
        fam.push_back(ScalarFnSpec::poly_gaussian(2, 1.2));
        fam.push_back(ScalarFnSpec::poly_gaussian(1, 1.0));
        fam.push_back(ScalarFnSpec::bump(0.0, 3.0));
        fam.push_back(ScalarFnSpec::bump(1.5, 2.0));
    } else {
        fam.push_back(ScalarFnSpec::bump(0.0, 2.5));
    }
    return fam;
}

std::vector<OdFnSpec> default_od_family() {
    std::vector<OdFnSpec> fam;
    fam.push_back(OdFnSpec::disjoint_bumps(ScalarFnSpec::bump(-2.0, 1.0),
                                           ScalarFnSpec::bump(2.0, 1.0)));
    fam.push_back(OdFnSpec::disjoint_bumps(ScalarFnSpec::bump(-3.0, 1.2),
                                           ScalarFnSpec::bump(1.5, 1.0)));
    fam.push_back(OdFnSpec::separated_pair(ScalarFnSpec::gaussian(-2.0, 0.5, 1.0),
                                           ScalarFnSpec::gaussian(2.0, 0.5, 1.0)));
    fam.push_back(OdFnSpec::cutoff_gradient(ScalarFnSpec::gaussian(0.0, 1.0, 1.0), 0.5, 0.5));
    return fam;
}

SuiteConfig SuiteConfig::defaults(const std::string& suite) {
    SuiteConfig c;
    c.suite = suite;
    if (suite == "adjointness") {
        c.grid_ladder = {256};
        c.s_values = {0.25, 0.5, 0.75};
    } else if (suite == "laplacian") {
        c.half_width = 12.0;
        c.grid_ladder = {512};
        c.s_values = {0.25, 0.5, 0.75};
        c.spectral_pad = 32;
    } else if (suite == "bb_l1") {
        c.s_values = {0.5};
        c.p = 1.0;
        c.q = 2.0;
        c.baseline = 0.0732;  // committed max ratio over the family, N = 512
    } else if (suite == "sobolev") {
        c.s_values = {0.25};
        c.p = 2.0;
        c.q = 4.0;
        c.baseline = 0.2791;   // committed, (1, 0.25, 2, 4) at N = 512
        c.baseline2 = 0.1706;  // committed, (2, 0.5, 2, 4) at N = 64
    } else if (suite == "poincare") {
        c.half_width = 8.0;
        c.grid_ladder = {257};
        c.s_values = {0.5};
        c.p = 1.0;
        c.q = 2.0;
        c.baseline = 0.1033;  // committed max cube ratio
    } else if (suite == "holder") {
        c.s_values = {0.75};
        c.p = 2.0;
        c.q = 2.0;
        c.baseline = 0.3782;  // committed max ratio, (1, 0.75, 2) at N = 512
    } else if (suite == "wsp_od") {
        c.grid_ladder = {256};
    } else if (suite == "sum_space") {
        c.grid_ladder = {256};
        c.baseline = 0.0732;  // bb_l1 committed constant; bound uses baseline + 1
    } else if (suite == "counterexample") {
        c.grid_ladder = {512};
    } else if (suite == "decay") {
        c.half_width = 20.0;
        c.grid_ladder = {1024};
        c.s_values = {0.5};
    } else if (suite == "convergence") {
        c.grid_ladder = {129, 257, 513};
    }
    return c;
}

std::vector<std::string> suite_names() {
    return {"adjointness", "laplacian", "bb_l1",     "sobolev",
            "poincare",    "holder",    "wsp_od",    "sum_space",
            "counterexample", "decay",  "convergence"};
}

// ---------------------------------------------------------------------------
// adjointness: <d_s u, G>_od == <u, div_s G> exactly (summation by parts)
// ---------------------------------------------------------------------------

VerificationReport suite_adjointness(const SuiteConfig& cfg) {
    VerificationReport rep;
    rep.suite = "adjointness";
    const int N = cfg.grid_ladder.back();
    GridSpec grid = make_grid(cfg.dim, cfg.half_width, N);
    rep.param("n", double(cfg.dim));
    rep.param("L", cfg.half_width);
    rep.param("N", double(N));

    std::vector<ScalarFnSpec> us = {
        ScalarFnSpec::gaussian(0.0, 1.0, 1.0), ScalarFnSpec::gaussian(0.5, 1.5, 2.0),
        ScalarFnSpec::bump(0.0, 2.5),          ScalarFnSpec::bump(-1.0, 1.5),
        ScalarFnSpec::constant(2.0)};
    std::vector<OdFnSpec> gs = {
        OdFnSpec::disjoint_bumps(ScalarFnSpec::bump(-2.0, 1.0), ScalarFnSpec::bump(2.0, 1.0)),
        OdFnSpec::separated_pair(ScalarFnSpec::gaussian(-2.0, 0.6, 1.0),
                                 ScalarFnSpec::gaussian(2.0, 0.6, 1.0))};

    std::vector<OffDiagonalField> gfields;
    for (const auto& gspec : gs) gfields.push_back(sample_od(gspec, grid));

    double worst = 0.0;
    for (const auto& uspec : us) {
        ScalarField u = sample_scalar(uspec, grid);
        for (std::size_t gi = 0; gi < gs.size(); ++gi) {
            for (double s : cfg.s_values) {
                double lhs = pair_od(frac_gradient(u, s), gfields[gi]);
                double rhs = pair_scalar(u, frac_divergence(gfields[gi], s));
                double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
                double resid = std::abs(lhs - rhs) / scale;
                worst = std::max(worst, resid);
                CaseRecord c;
                c.id = case_id(uspec.label(), N, gs[gi].label() + ":s=" + format_double(s));
                c.num("lhs", lhs).num("rhs", rhs).num("residual", resid);
                c.pass = resid <= cfg.tol_exact;
                rep.cases.push_back(std::move(c));
            }
        }
    }

    // symmetric parts are annihilated: pairing against antisymmetrize(S + A)
    // equals pairing against A alone
    {
        const std::int64_t K = grid.node_count();
        std::vector<double> raw(static_cast<std::size_t>(K) * K);
        ScalarField b1 = sample_scalar(ScalarFnSpec::bump(-2.0, 1.0), grid);
        ScalarField b2 = sample_scalar(ScalarFnSpec::bump(2.0, 1.0), grid);
        for (std::int64_t i = 0; i < K; ++i)
            for (std::int64_t j = 0; j < K; ++j)
                raw[i * K + j] = b1.values[i] * b2.values[j];  // neither odd nor even
        OffDiagonalField proj = antisymmetrize(grid, raw);
        ScalarField u = sample_scalar(ScalarFnSpec::gaussian(0.0, 1.0, 1.0), grid);
        OffDiagonalField du = frac_gradient(u, 0.5);
        double via_raw = pair_od(du, proj);
        double via_odd = pair_od(du, gfields[0]);  // same odd part by construction
        // gfields[0] = b1(x)b2(y) - b1(y)b2(x); antisymmetrize(raw) = that / 2
        double resid = std::abs(2.0 * via_raw - via_odd) /
                       std::max({std::abs(via_odd), std::abs(via_raw), 1.0});
        rep.check("odd_projection_pairing", resid <= cfg.tol_exact, resid, cfg.tol_exact,
                  "pairing sees only the antisymmetric part");
    }

    rep.fit("max_relative_residual", worst);
    rep.check("adjointness_exact", worst <= cfg.tol_exact, worst, cfg.tol_exact,
              "summation-by-parts identity at rounding level");
    return rep;
}

// ---------------------------------------------------------------------------
// laplacian: div_s d_s u proportional to the spectral (-Delta)^s u
// ---------------------------------------------------------------------------

VerificationReport suite_laplacian(const SuiteConfig& cfg) {
    VerificationReport rep;
    rep.suite = "laplacian";
    const int N = cfg.grid_ladder.back();
    GridSpec grid = make_grid(1, cfg.half_width, N);
    rep.param("n", 1.0);
    rep.param("L", cfg.half_width);
    rep.param("N", double(N));
    rep.param("pad", double(cfg.spectral_pad));

    std::vector<ScalarFnSpec> us = {ScalarFnSpec::gaussian(0.0, 1.0, 1.0),
                                    ScalarFnSpec::gaussian(0.5, 1.5, 1.0)};

    bool all_ok = true;
    for (double s : cfg.s_values) {
        const double Cns = std::pow(4.0, s) * std::tgamma(0.5 + s) /
                           (std::sqrt(3.14159265358979323846) *
                            std::abs(std::tgamma(-s)));
        const double kappa_theory = 2.0 / Cns;
        std::vector<double> kappas;
        for (const auto& uspec : us) {
            ScalarField u = sample_scalar(uspec, grid);
            bool warned = false;
            WarnSink sink = [&](const std::string&) { warned = true; };
            ScalarField T = frac_laplacian_integral(u, s);
            ScalarField S = frac_laplacian_spectral(u, s, cfg.spectral_pad, sink);
            double smax = lp_norm(S, kInf);
            double num = 0, den = 0;
            std::vector<double> ratios;
            for (std::int64_t i = 0; i < grid.node_count(); ++i) {
                if (std::abs(S.values[i]) < 1e-6 * smax) continue;
                ratios.push_back(T.values[i] / S.values[i]);
                num += T.values[i] * S.values[i];
                den += S.values[i] * S.values[i];
            }
            double kappa = num / den;
            double var = 0;
            for (double r : ratios) var += (r - kappa) * (r - kappa);
            double rel_std = std::sqrt(var / ratios.size()) / std::abs(kappa);
            kappas.push_back(kappa);

            CaseRecord c;
            c.id = case_id(uspec.label(), N, "s=" + format_double(s));
            c.num("kappa", kappa)
                .num("ratio_rel_std", rel_std)
                .num("kappa_theory", kappa_theory)
                .num("trusted_nodes", double(ratios.size()));
            c.pass = rel_std <= cfg.tol_ratio_std && !warned;
            if (warned) c.note = "spectral boundary warning escalated to failure";
            all_ok = all_ok && c.pass;
            rep.cases.push_back(std::move(c));
        }
        double cross = std::abs(kappas[0] / kappas[1] - 1.0);
        rep.fit("kappa_s=" + format_double(s), kappas[0]);
        rep.fit("kappa_theory_s=" + format_double(s), kappa_theory);
        rep.check("kappa_u_independent_s=" + format_double(s), cross <= cfg.tol_kappa_u,
                  cross, cfg.tol_kappa_u);
        double dev = std::abs(kappas[0] / kappa_theory - 1.0);
        rep.check("kappa_matches_theory_s=" + format_double(s),
                  dev <= cfg.tol_kappa_theory, dev, cfg.tol_kappa_theory,
                  "singular-integral constant is external convention");
    }
    rep.check("ratio_fields_constant", all_ok, all_ok ? 1.0 : 0.0, 1.0);
    return rep;
}

// ---------------------------------------------------------------------------
// bb_l1 / sobolev / holder: embedding-type ratio suites
// ---------------------------------------------------------------------------

namespace {

VerificationReport embedding_suite(const SuiteConfig& cfg, const std::string& name,
                                   double s, double p, double q,
                                   bool holder_mode) {
    VerificationReport rep;
    rep.suite = name;
    rep.param("n", double(cfg.dim));
    rep.param("L", cfg.half_width);
    rep.param("s", s);
    rep.param("p", p);
    rep.param("q", q);

    FracParams fp;
    fp.s = s;
    fp.p = p;
    fp.q = q;
    fp.n = cfg.dim;
    const double alpha = holder_mode ? fp.alpha() : 0.0;
    if (holder_mode) rep.param("alpha", alpha);

    auto family = subsample(default_scalar_family(cfg.dim), cfg.max_cases, cfg.seed);
    family.push_back(ScalarFnSpec::constant(3.0));  // vacuous-path member

    bool finite_ok = true, rigidity_ok = true;
    std::vector<double> final_ratios;
    double worst_spread = 0.0, worst_dilation = 0.0;

    for (const auto& spec : family) {
        std::vector<double> ratios;
        for (int N : cfg.grid_ladder) {
            GridSpec grid = make_grid(cfg.dim, cfg.half_width, N);
            ScalarField u = sample_scalar(spec, grid);
            double lhs, rhs, cstar = 0.0;
            bool vac = false;
            if (holder_mode) {
                lhs = holder_seminorm(u, alpha);
                rhs = gagliardo_seminorm(u, s, p);
            } else {
                EmbeddingRatio er = embedding_ratio(spec, grid, s, p, q);
                lhs = er.lhs;
                rhs = er.rhs;
                cstar = er.cstar;
                vac = er.vacuous;
                rigidity_ok = rigidity_ok && !er.rigidity_violated;
            }
            if (holder_mode && rhs < 1e-12) {
                auto [mn, mx] = std::minmax_element(u.values.begin(), u.values.end());
                vac = (*mx - *mn < 1e-10);
                rigidity_ok = rigidity_ok && vac;
            }
            double ratio = vac ? 0.0 : lhs / rhs;
            if (!vac && !std::isfinite(ratio)) finite_ok = false;

            CaseRecord c;
            c.id = case_id(spec.label(), N);
            c.num("lhs", lhs).num("rhs", rhs).num("ratio", ratio);
            if (!holder_mode) c.num("c_star", cstar);
            c.vacuous = vac;
            c.pass = vac || std::isfinite(ratio);
            rep.cases.push_back(std::move(c));
            note_norm(rep, holder_mode ? "holder_seminorm" : "lq_shifted", lhs, fp, grid);
            note_norm(rep, "gagliardo", rhs, fp, grid);
            if (!vac) ratios.push_back(ratio);
        }
        if (ratios.empty()) continue;
        final_ratios.push_back(ratios.back());
        worst_spread = std::max(worst_spread, spread(ratios));

        // matched dilation at the finest grid
        const int N = cfg.grid_ladder.back();
        double r_base = ratios.back();
        double r_dil;
        if (holder_mode) {
            GridSpec gd = make_grid(cfg.dim, cfg.half_width / 2.0, N);
            ScalarFnSpec dspec = spec;
            dspec.center = spec.center / 2.0;
            dspec.width = spec.width / 2.0;
            if (spec.kind == ScalarFnSpec::Kind::PolyGaussian) dspec.center = 0.0;
            ScalarField ud = sample_scalar(dspec, gd);
            r_dil = holder_seminorm(ud, alpha) / gagliardo_seminorm(ud, s, p);
        } else {
            r_dil = embedding_ratio_dilated(spec, cfg.dim, cfg.half_width, N, 2.0, s, p, q)
                        .ratio;
        }
        double dil_dev = std::abs(r_dil / r_base - 1.0);
        worst_dilation = std::max(worst_dilation, dil_dev);
        CaseRecord c;
        c.id = case_id(spec.label(), N, "dilated:lambda=2");
        c.num("ratio", r_dil).num("deviation", dil_dev);
        c.pass = dil_dev <= cfg.tol_dilation;
        rep.cases.push_back(std::move(c));
    }

    double empirical = final_ratios.empty()
                           ? 0.0
                           : *std::max_element(final_ratios.begin(), final_ratios.end());
    rep.fit("empirical_constant", empirical);
    rep.fit("worst_ladder_spread", worst_spread);
    rep.fit("worst_dilation_deviation", worst_dilation);

    rep.check("ratios_finite", finite_ok, finite_ok ? 1.0 : 0.0, 1.0);
    rep.check("rigidity", rigidity_ok, rigidity_ok ? 1.0 : 0.0, 1.0,
              "zero seminorm only for constants");
    rep.check("dilation_invariance", worst_dilation <= cfg.tol_dilation, worst_dilation,
              cfg.tol_dilation);
    rep.check("ladder_stability", worst_spread <= cfg.tol_stability, worst_spread,
              cfg.tol_stability);
    if (cfg.baseline > 0.0) {
        double dev = std::abs(empirical / cfg.baseline - 1.0);
        rep.check("baseline_regression", dev <= cfg.baseline_slack, dev,
                  cfg.baseline_slack,
                  "committed constant " + format_double(cfg.baseline));
    }
    return rep;
}

}  // namespace

VerificationReport suite_bb_l1(const SuiteConfig& cfg) {
    return embedding_suite(cfg, "bb_l1", cfg.s_values.front(), cfg.p, cfg.q, false);
}

namespace {

void merge_report(VerificationReport& into, VerificationReport&& sub,
                  const std::string& prefix) {
    for (auto& c : sub.cases) {
        c.id = prefix + c.id;
        into.cases.push_back(std::move(c));
    }
    for (auto& f : sub.fits) into.fits.emplace_back(prefix + f.first, f.second);
    for (auto& k : sub.checks) {
        k.name = prefix + k.name;
        into.checks.push_back(std::move(k));
    }
    for (auto& r : sub.norm_rows) into.norm_rows.push_back(std::move(r));
}

}  // namespace

VerificationReport suite_sobolev(const SuiteConfig& cfg) {
    // q is pinned by 1/q = 1/p - s/n
    FracParams fp = FracParams::sobolev(cfg.s_values.front(), cfg.p, cfg.dim);
    if (std::abs(1.0 / fp.q - 1.0 / cfg.q) > 1e-12)
        throw std::invalid_argument("suite_sobolev: q violates 1/q = 1/p - s/n");
    VerificationReport rep = embedding_suite(cfg, "sobolev", fp.s, fp.p, fp.q, false);
    if (cfg.dim == 1) {
        // companion planar regime at reduced resolution, doubled tolerances
        SuiteConfig c2 = cfg;
        c2.dim = 2;
        c2.half_width = 6.0;
        c2.grid_ladder = {32, 48, 64};
        c2.s_values = {0.5};
        c2.p = 2.0;
        c2.tol_dilation = 2.0 * cfg.tol_dilation;
        c2.tol_stability = 2.0 * cfg.tol_stability;
        c2.baseline = cfg.baseline2;
        FracParams fp2 = FracParams::sobolev(0.5, 2.0, 2);
        merge_report(rep, embedding_suite(c2, "sobolev", fp2.s, fp2.p, fp2.q, false),
                     "n2:");
    }
    return rep;
}

VerificationReport suite_holder(const SuiteConfig& cfg) {
    FracParams fp = FracParams::holder(cfg.s_values.front(), cfg.p, cfg.dim);
    SuiteConfig c = cfg;
    c.q = fp.p;
    return embedding_suite(c, "holder", fp.s, fp.p, fp.p, true);
}

// ---------------------------------------------------------------------------
// poincare: cube-restricted ratios, constant independent of the cube
// ---------------------------------------------------------------------------

VerificationReport suite_poincare(const SuiteConfig& cfg) {
    VerificationReport rep;
    rep.suite = "poincare";
    const int N = cfg.grid_ladder.back();
    const double s = cfg.s_values.front(), p = cfg.p, q = cfg.q;
    GridSpec grid = make_grid(1, cfg.half_width, N);
    rep.param("n", 1.0);
    rep.param("L", cfg.half_width);
    rep.param("N", double(N));
    rep.param("s", s);
    rep.param("p", p);
    rep.param("q", q);

    const int center = (N - 1) / 2;
    const double per_unit = (N - 1) / (2.0 * cfg.half_width);  // nodes per unit length
    std::vector<double> cube_halves = {1.0, 2.0, 4.0};

    std::vector<ScalarFnSpec> family = {ScalarFnSpec::gaussian(0.0, 1.0, 1.0),
                                        ScalarFnSpec::gaussian(0.5, 0.8, 1.0),
                                        ScalarFnSpec::bump(0.0, 2.0),
                                        ScalarFnSpec::constant(4.0)};

    double max_ratio = 0.0, worst_dil = 0.0;
    bool no_inf = true;
    for (const auto& spec : family) {
        ScalarField u = sample_scalar(spec, grid);
        for (double a : cube_halves) {
            int half_nodes = static_cast<int>(std::lround(a * per_unit));
            CubeSpec cube;
            cube.lo = {center - half_nodes, 0};
            cube.hi = {center + half_nodes, 0};
            double r = cube_poincare_ratio(u, cube, s, p, q);
            bool vac = (r == 0.0 && spec.kind == ScalarFnSpec::Kind::Constant);
            if (std::isinf(r)) no_inf = false;
            if (std::isfinite(r)) max_ratio = std::max(max_ratio, r);
            CaseRecord c;
            c.id = case_id(spec.label(), N, "cube=[-" + format_double(a) + "," +
                                                format_double(a) + "]");
            c.num("ratio", r);
            c.vacuous = vac;
            c.pass = std::isfinite(r);
            rep.cases.push_back(std::move(c));

            // matched dilation: u(2x) on the half-size grid, same index cube
            if (spec.kind != ScalarFnSpec::Kind::Constant) {
                GridSpec gd = make_grid(1, cfg.half_width / 2.0, N);
                ScalarFnSpec dspec = spec;
                dspec.center = spec.center / 2.0;
                dspec.width = spec.width / 2.0;
                ScalarField ud = sample_scalar(dspec, gd);
                double rd = cube_poincare_ratio(ud, cube, s, p, q);
                double dev = (r == 0.0) ? 0.0 : std::abs(rd / r - 1.0);
                worst_dil = std::max(worst_dil, dev);
                CaseRecord cd;
                cd.id = case_id(spec.label(), N,
                                "matched-dilation:cube=" + format_double(a));
                cd.num("ratio", rd).num("deviation", dev);
                cd.pass = dev <= cfg.tol_dilation;
                rep.cases.push_back(std::move(cd));
            }
        }
    }
    rep.fit("max_cube_ratio", max_ratio);
    rep.fit("worst_dilation_deviation", worst_dil);
    rep.check("no_infinite_ratio", no_inf, no_inf ? 1.0 : 0.0, 1.0,
              "LHS > 0 with RHS = 0 must never happen");
    rep.check("matched_dilation", worst_dil <= cfg.tol_dilation, worst_dil,
              cfg.tol_dilation);
    if (cfg.baseline > 0.0) {
        rep.check("cube_uniformity", max_ratio <= cfg.baseline * 1.1, max_ratio,
                  cfg.baseline * 1.1,
                  "max ratio bounded by committed baseline x 1.1");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// wsp_od: representative norm identity is definitional; test the dual side
// ---------------------------------------------------------------------------

VerificationReport suite_wsp_od(const SuiteConfig& cfg) {
    VerificationReport rep;
    rep.suite = "wsp_od";
    const int N = cfg.grid_ladder.back();
    GridSpec grid = make_grid(1, cfg.half_width, N);
    rep.param("n", 1.0);
    rep.param("L", cfg.half_width);
    rep.param("N", double(N));
    rep.param("gfamily", double(cfg.gfamily_size));

    auto gspecs = make_gfamily(cfg.gfamily_size);
    std::vector<OffDiagonalField> gfields;
    for (const auto& gs : gspecs) gfields.push_back(sample_od(gs, grid));

    std::vector<ScalarFnSpec> family = {ScalarFnSpec::gaussian(0.0, 1.0, 1.0),
                                        ScalarFnSpec::gaussian(0.5, 1.5, 2.0),
                                        ScalarFnSpec::bump(0.0, 3.0)};

    bool bound_ok = true, monotone_ok = true;
    for (const auto& spec : family) {
        ScalarField u = sample_scalar(spec, grid);
        double rep_norm = best_constant_shift(u, 2.0).second;

        std::vector<OffDiagonalField> fam1(gfields.begin(), gfields.begin() + 1);
        std::vector<OffDiagonalField> fam4(gfields.begin(),
                                           gfields.begin() + std::min<std::size_t>(4, gfields.size()));
        double e1 = dual_hminushalf_estimate(u, fam1);
        double e4 = dual_hminushalf_estimate(u, fam4);
        double eFull = dual_hminushalf_estimate(u, gfields);
        monotone_ok = monotone_ok && e1 <= e4 + 1e-15 && e4 <= eFull + 1e-15;
        bool below = eFull <= (1.0 + 1e-6) * rep_norm;
        bound_ok = bound_ok && below;

        CaseRecord c;
        c.id = case_id(spec.label(), N);
        c.num("dual_estimate", eFull)
            .num("representative_norm", rep_norm)
            .num("gap", rep_norm - eFull)
            .num("estimate_family1", e1)
            .num("estimate_family4", e4);
        c.pass = below;
        rep.cases.push_back(std::move(c));
    }

    // zero input
    {
        ScalarField z = zero_scalar(grid);
        double e = dual_hminushalf_estimate(z, gfields);
        CaseRecord c;
        c.id = "zero_field";
        c.num("dual_estimate", e).num("representative_norm", 0.0);
        c.pass = e == 0.0;
        rep.cases.push_back(std::move(c));
        bound_ok = bound_ok && c.pass;
    }

    rep.check("dual_below_representative", bound_ok, bound_ok ? 1.0 : 0.0, 1.0,
              "Cauchy-Schwarz side of the dual characterisation");
    rep.check("family_monotone", monotone_ok, monotone_ok ? 1.0 : 0.0, 1.0);
    return rep;
}

// ---------------------------------------------------------------------------
// sum_space: ||u - c*||_2 <= C * (mollification sum-space upper bound)
// ---------------------------------------------------------------------------

VerificationReport suite_sum_space(const SuiteConfig& cfg) {
    VerificationReport rep;
    rep.suite = "sum_space";
    const int N = cfg.grid_ladder.back();
    GridSpec grid = make_grid(1, cfg.half_width, N);
    const double bound_const = cfg.baseline + 1.0;
    rep.param("n", 1.0);
    rep.param("L", cfg.half_width);
    rep.param("N", double(N));
    rep.param("bound_constant", bound_const);

    std::vector<ScalarFnSpec> family = {
        ScalarFnSpec::gaussian(0.0, 1.0, 0.5), ScalarFnSpec::gaussian(0.0, 1.0, 1.0),
        ScalarFnSpec::gaussian(0.0, 1.0, 2.0), ScalarFnSpec::gaussian(0.7, 1.2, 1.0),
        ScalarFnSpec::bump(0.0, 2.5)};

    bool est_ok = true, feasible_ok = true;
    for (const auto& spec : family) {
        ScalarField u = sample_scalar(spec, grid);
        auto [upper, eps] = sum_space_upper(u, cfg.epsilons);
        double lhs = best_constant_shift(u, 2.0).second;
        double pure_l1 = lp_od_norm(frac_gradient(u, 0.5), 1.0);
        bool est = lhs <= bound_const * upper;
        bool feas = upper <= pure_l1 + 1e-9 && upper <= lhs + 1e-9;
        est_ok = est_ok && est;
        feasible_ok = feasible_ok && feas;
        CaseRecord c;
        c.id = case_id(spec.label(), N);
        c.num("lhs_l2", lhs)
            .num("sum_space_upper", upper)
            .num("chosen_eps", eps)
            .num("pure_l1_term", pure_l1);
        c.pass = est && feas;
        rep.cases.push_back(std::move(c));
    }
    {
        ScalarField z = zero_scalar(grid);
        auto [upper, eps] = sum_space_upper(z, cfg.epsilons);
        CaseRecord c;
        c.id = "zero_field";
        c.num("sum_space_upper", upper).num("chosen_eps", eps);
        c.pass = upper == 0.0;
        rep.cases.push_back(std::move(c));
        est_ok = est_ok && c.pass;
    }
    rep.check("combined_estimate", est_ok, est_ok ? 1.0 : 0.0, 1.0,
              "||u - c*||_2 <= (C_bb + 1) * upper bound");
    rep.check("pure_decompositions_feasible", feasible_ok, feasible_ok ? 1.0 : 0.0, 1.0);
    return rep;
}

// ---------------------------------------------------------------------------
// counterexample: chi integral diverges logarithmically; the d_0 pairing of a
// gaussian stays bounded over the same truncation ladder
// ---------------------------------------------------------------------------

namespace {

// rigorous (and deliberately generous) bound on the pairing mass outside the
// resolved core box [-L,L]^2: every product term carries at least one factor
// of G evaluated beyond radius L, where the family decays monotonically
double contrast_tail_bound(double L, double R, const ScalarFnSpec& u,
                           const OdFnSpec& G) {
    auto sups = [&](const ScalarFnSpec& f, double& sup_all, double& sup_d,
                    double& tail, double& tail_d) {
        sup_all = sup_d = 0.0;
        const int M = 4096;
        double prev = std::abs(f.evaluate(-L, 0.0, 1));
        for (int k = 1; k <= M; ++k) {
            double x = -L + 2.0 * L * k / M;
            double v = std::abs(f.evaluate(x, 0.0, 1));
            sup_all = std::max(sup_all, v);
            sup_d = std::max(sup_d, std::abs(v - prev) / (2.0 * L / M));
            prev = v;
        }
        sup_d *= 2.0;  // sampled-derivative safety factor
        // radially decreasing tails: the suprema beyond L sit at |x| = L
        tail = std::max(std::abs(f.evaluate(L, 0.0, 1)),
                        std::abs(f.evaluate(-L, 0.0, 1)));
        const double dlt = 1e-4;
        tail_d = 0.0;
        for (double x : {L, -L})
            tail_d = std::max(tail_d, std::abs(f.evaluate(x + dlt, 0.0, 1) -
                                               f.evaluate(x - dlt, 0.0, 1)) /
                                          (2.0 * dlt));
        tail_d *= 4.0;
    };
    double su = 0.0, sdu = 0.0, tu = 0.0, tdu = 0.0;
    double sa, sda, ta, tda, sb, sdb, tb, tdb;
    sups(u, su, sdu, tu, tdu);
    sups(G.a, sa, sda, ta, tda);
    sups(G.b, sb, sdb, tb, tdb);
    (void)sdu;
    (void)tu;
    (void)tdu;

    // on the region with max(|x|,|y|) > L:
    //   |G(x,y)| <= ta*sb + tb*sa          (one G-factor is beyond L)
    //   |G(x,y)|/|x-y| <= sup|dG| near the diagonal, G(x,x) = 0
    //   sup|dG| <= ta*sdb + tda*sb + tb*sda + tdb*sa  (again one tail factor)
    double g_far = ta * sb + tb * sa;
    double g_lip = ta * sdb + tda * sb + tb * sda + tdb * sa;
    double u_amp = 2.0 * su;
    double area = (2.0 * R) * (2.0 * R);
    // split |x-y| < 1 (Lipschitz bound) from |x-y| >= 1 (plain quotient)
    return u_amp * area * (g_lip + g_far);
}

}  // namespace

VerificationReport suite_counterexample(const SuiteConfig& cfg) {
    VerificationReport rep;
    rep.suite = "counterexample";
    rep.param("R_ladder_size", double(cfg.R_ladder.size()));

    // chi ladder
    std::vector<double> values, logs;
    bool monotone = true, bound_ok = true;
    double prev = 0.0;
    for (double R : cfg.R_ladder) {
        double v = chi_counterexample(R);
        // the displayed one-sided lower bound, by independent quadrature
        double lower =
            2.0 * integrate_graded(1.0, R, [](double y) {
                return std::log((y + 1.0) / (y - 1.0));
            });
        monotone = monotone && v > prev;
        bound_ok = bound_ok && v >= lower * (1.0 - 1e-9);
        prev = v;
        values.push_back(v);
        logs.push_back(std::log(R));
        CaseRecord c;
        c.id = "chi@R=" + format_double(R);
        c.num("value", v).num("paper_lower_bound", lower);
        c.pass = v >= lower * (1.0 - 1e-9);
        rep.cases.push_back(std::move(c));
    }
    LineFit lf = fit_line(logs, values);
    rep.fit("log_fit_slope", lf.slope);
    rep.fit("log_fit_rel_residual", lf.rel_residual);
    rep.check("strictly_increasing", monotone, monotone ? 1.0 : 0.0, 1.0);
    rep.check("log_slope_positive", lf.slope > 0.0, lf.slope, 0.0);
    rep.check("log_fit_residual", lf.rel_residual < cfg.tol_fit_residual,
              lf.rel_residual, cfg.tol_fit_residual);
    rep.check("paper_lower_bound", bound_ok, bound_ok ? 1.0 : 0.0, 1.0,
              "value(R) >= 2 int_1^R log((y+1)/(y-1)) dy at every R");

    // gaussian contrast: <d_0 u, G> over [-R,R]^2 = resolved core + tail
    // (tail carried as a rigorous bound; it is exponentially negligible)
    {
        const int N = cfg.grid_ladder.back();
        const double L = cfg.half_width;
        GridSpec grid = make_grid(1, L, N);
        ScalarFnSpec uspec = ScalarFnSpec::gaussian(0.3, 1.0, 1.0);
        OdFnSpec gspec = OdFnSpec::separated_pair(ScalarFnSpec::gaussian(-2.0, 0.5, 1.0),
                                                  ScalarFnSpec::gaussian(2.0, 0.8, 1.0));
        ScalarField u = sample_scalar(uspec, grid);
        OffDiagonalField G = sample_od(gspec, grid);
        double core = pair_od(frac_gradient(u, 0.0), G);
        bool stable = true;
        std::vector<double> lo_vals, hi_vals;
        for (double R : cfg.R_ladder) {
            double tb = (R <= L) ? 0.0 : contrast_tail_bound(L, R, uspec, gspec);
            lo_vals.push_back(core - tb);
            hi_vals.push_back(core + tb);
            CaseRecord c;
            c.id = "gaussian_contrast@R=" + format_double(R);
            c.num("core_pairing", core).num("tail_bound", tb);
            c.pass = tb < 0.01 * std::abs(core);
            rep.cases.push_back(std::move(c));
        }
        // worst-case ratio between the last two rungs of the ladder
        std::size_t m = cfg.R_ladder.size();
        double worst = std::abs(hi_vals[m - 1] / lo_vals[m - 2]);
        double best = std::abs(lo_vals[m - 1] / hi_vals[m - 2]);
        double dev = std::max(std::abs(worst - 1.0), std::abs(best - 1.0));
        stable = dev <= 0.01;
        rep.fit("gaussian_contrast_core", core);
        rep.check("gaussian_contrast_stable", stable, dev, 0.01,
                  "d_0 pairing bounded across the truncation ladder");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// decay: div_s of the diagonal-flat family decays superpolynomially
// ---------------------------------------------------------------------------

VerificationReport suite_decay(const SuiteConfig& cfg) {
    VerificationReport rep;
    rep.suite = "decay";
    const int N = cfg.grid_ladder.back();
    const double s = cfg.s_values.front();
    GridSpec grid = make_grid(1, cfg.half_width, N);
    rep.param("n", 1.0);
    rep.param("L", cfg.half_width);
    rep.param("N", double(N));
    rep.param("s", s);

    // rapidly decaying diagonal-flat members only (the Lemma's hypothesis);
    // compact disjoint bumps have identically zero far field -> sentinel pass
    std::vector<OdFnSpec> family = {
        OdFnSpec::disjoint_bumps(ScalarFnSpec::bump(-2.0, 1.0), ScalarFnSpec::bump(2.0, 1.0)),
        OdFnSpec::separated_pair(ScalarFnSpec::gaussian(-2.0, 0.5, 1.0),
                                 ScalarFnSpec::gaussian(2.0, 0.5, 1.0)),
        OdFnSpec::separated_pair(ScalarFnSpec::gaussian(-1.0, 0.7, 1.0),
                                 ScalarFnSpec::gaussian(1.5, 0.6, 0.8))};

    bool all_ok = true;
    for (const auto& gspec : family) {
        OffDiagonalField G = sample_od(gspec, grid);
        ScalarField div = frac_divergence(G, s);
        double expo = decay_exponent(div, cfg.tail_fraction);
        bool sentinel = expo == -kInf;
        bool ok = sentinel || expo <= cfg.decay_threshold;
        all_ok = all_ok && ok;
        CaseRecord c;
        c.id = gspec.label();
        c.num("decay_exponent", expo);
        c.vacuous = sentinel;
        c.pass = ok;
        if (sentinel) c.note = "tail identically zero: decays faster than measurable";
        rep.cases.push_back(std::move(c));
    }
    rep.check("superpolynomial_decay", all_ok, all_ok ? 1.0 : 0.0, 1.0,
              "decay exponent <= " + format_double(cfg.decay_threshold) +
                  " or exactly-zero tail");
    return rep;
}

// ---------------------------------------------------------------------------
// convergence: observed orders from summary-value ladders
// ---------------------------------------------------------------------------

double observed_order(const std::vector<double>& values, double floor) {
    if (values.size() < 3)
        throw std::invalid_argument("observed_order: need at least 3 ladder values");
    double scale = 0.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    const std::size_t m = values.size();
    double d1 = std::abs(values[m - 2] - values[m - 3]);
    double d2 = std::abs(values[m - 1] - values[m - 2]);
    if (d1 <= floor * std::max(1.0, scale) && d2 <= floor * std::max(1.0, scale))
        return kInf;  // exact at nodes
    if (d2 == 0.0) return kInf;
    return std::log2(d1 / d2);
}

VerificationReport convergence_study(const std::string& op, const ScalarFnSpec& uspec,
                                     double s, const std::vector<int>& ladder,
                                     double half_width) {
    if (ladder.size() < 3)
        throw std::invalid_argument("convergence_study: ladder needs >= 3 grids");
    VerificationReport rep;
    rep.suite = "convergence";
    rep.param("op", op);
    rep.param("u", uspec.label());
    rep.param("s", s);

    std::vector<double> summaries;
    for (int N : ladder) {
        GridSpec grid = make_grid(1, half_width, N);
        ScalarField u = sample_scalar(uspec, grid);
        double value = 0.0;
        if (op == "pair_scalar") {
            value = pair_scalar(u, u);
        } else if (op == "frac_laplacian_integral") {
            value = frac_laplacian_integral(u, s).values[(N - 1) / 2];
        } else if (op == "frac_gradient") {
            // value at the fixed physical pair (x, y) = (2.5, 0)
            std::int64_t i =
                static_cast<std::int64_t>(std::lround((2.5 + half_width) / grid.spacing));
            std::int64_t j =
                static_cast<std::int64_t>(std::lround(half_width / grid.spacing));
            value = frac_gradient(u, s).value(i, j);
        } else {
            throw std::invalid_argument("convergence_study: unknown op " + op);
        }
        summaries.push_back(value);
        CaseRecord c;
        c.id = case_id(op, N);
        c.num("summary", value);
        rep.cases.push_back(std::move(c));
    }
    double order = observed_order(summaries);
    rep.fit("observed_order", order);
    return rep;
}

VerificationReport suite_convergence(const SuiteConfig& cfg) {
    VerificationReport rep;
    rep.suite = "convergence";
    rep.param("ladder_size", double(cfg.grid_ladder.size()));

    // wide gaussian keeps the trapezoid endpoint term visible (order 2);
    // superalgebraic cases would sit below the rounding floor
    {
        VerificationReport sub = convergence_study(
            "pair_scalar", ScalarFnSpec::gaussian(0.0, 5.0, 1.0), 0.0, cfg.grid_ladder,
            cfg.half_width);
        double order = sub.fits[0].second;
        rep.fit("pair_scalar_order", order);
        rep.check("pair_scalar_order_2", std::abs(order - 2.0) <= 0.3, order, 2.0,
                  "trapezoid order on a smooth integrand with endpoint slope");
        for (auto& c : sub.cases) rep.cases.push_back(c);
    }
    {
        VerificationReport sub = convergence_study(
            "frac_laplacian_integral", ScalarFnSpec::gaussian(0.0, 1.0, 1.0),
            cfg.s_values.front(), cfg.grid_ladder, cfg.half_width);
        double order = sub.fits[0].second;
        rep.fit("laplacian_order", order);
        rep.check("laplacian_order_positive", order > 0.0, order, 0.0, "recorded");
        for (auto& c : sub.cases) rep.cases.push_back(c);
    }
    {
        VerificationReport sub = convergence_study(
            "frac_gradient", ScalarFnSpec::gaussian(0.0, 1.0, 1.0),
            cfg.s_values.front(), cfg.grid_ladder, cfg.half_width);
        double order = sub.fits[0].second;
        rep.fit("frac_gradient_order", order);
        rep.check("frac_gradient_exact", order == kInf, order, kInf,
                  "pointwise formula is exact at nodes; infinity sentinel");
        for (auto& c : sub.cases) rep.cases.push_back(c);
    }
    return rep;
}

VerificationReport run_suite(const SuiteConfig& cfg) {
    if (cfg.grid_ladder.empty())
        throw std::invalid_argument("run_suite: empty grid ladder");
    for (std::size_t i = 1; i < cfg.grid_ladder.size(); ++i)
        if (cfg.grid_ladder[i] <= cfg.grid_ladder[i - 1])
            throw std::invalid_argument("run_suite: grid ladder must be strictly increasing");
    const std::string& s = cfg.suite;
    if (s == "adjointness") return suite_adjointness(cfg);
    if (s == "laplacian") return suite_laplacian(cfg);
    if (s == "bb_l1") return suite_bb_l1(cfg);
    if (s == "sobolev") return suite_sobolev(cfg);
    if (s == "poincare") return suite_poincare(cfg);
    if (s == "holder") return suite_holder(cfg);
    if (s == "wsp_od") return suite_wsp_od(cfg);
    if (s == "sum_space") return suite_sum_space(cfg);
    if (s == "counterexample") return suite_counterexample(cfg);
    if (s == "decay") return suite_decay(cfg);
    if (s == "convergence") return suite_convergence(cfg);
    throw std::invalid_argument("unknown suite: " + s);
}

}  // namespace odfrac
