/// @file odfrac_main.cpp
/// @brief Command-line front end: operator application on field files or
///        inline specs, norm evaluation, and the verification suites.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "odfrac/field_io.hpp"
#include "odfrac/norms.hpp"
#include "odfrac/operators.hpp"
#include "odfrac/runner.hpp"
#include "odfrac/testlib.hpp"

namespace {

using namespace odfrac;

// "name" or "name:k=v,k=v" spec strings
std::map<std::string, double> parse_kv(const std::string& body) {
    std::map<std::string, double> kv;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("bad spec parameter '" + tok + "'");
        kv[tok.substr(0, eq)] = std::stod(tok.substr(eq + 1));
    }
    return kv;
}

double kv_get(const std::map<std::string, double>& kv, const std::string& k, double dflt) {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second;
}

ScalarFnSpec parse_scalar_spec(const std::string& s) {
    auto colon = s.find(':');
    std::string name = s.substr(0, colon);
    auto kv = colon == std::string::npos ? std::map<std::string, double>{}
                                         : parse_kv(s.substr(colon + 1));
    if (name == "gaussian")
        return ScalarFnSpec::gaussian(kv_get(kv, "center", 0.0), kv_get(kv, "width", 1.0),
                                      kv_get(kv, "amp", 1.0));
    if (name == "poly_gaussian")
        return ScalarFnSpec::poly_gaussian(static_cast<int>(kv_get(kv, "degree", 2)),
                                           kv_get(kv, "width", 1.0));
    if (name == "bump")
        return ScalarFnSpec::bump(kv_get(kv, "center", 0.0), kv_get(kv, "radius", 1.0));
    if (name == "indicator")
        return ScalarFnSpec::indicator(kv_get(kv, "lo", -1.0), kv_get(kv, "hi", 1.0));
    if (name == "constant") return ScalarFnSpec::constant(kv_get(kv, "c", 1.0));
    if (name == "linear") return ScalarFnSpec::linear();
    throw std::runtime_error("unknown scalar spec '" + name + "'");
}

OdFnSpec parse_od_spec(const std::string& s) {
    auto colon = s.find(':');
    std::string name = s.substr(0, colon);
    auto kv = colon == std::string::npos ? std::map<std::string, double>{}
                                         : parse_kv(s.substr(colon + 1));
    if (name == "disjoint_bumps")
        return OdFnSpec::disjoint_bumps(
            ScalarFnSpec::bump(kv_get(kv, "c1", -2.0), kv_get(kv, "r1", 1.0)),
            ScalarFnSpec::bump(kv_get(kv, "c2", 2.0), kv_get(kv, "r2", 1.0)));
    if (name == "separated_pair")
        return OdFnSpec::separated_pair(
            ScalarFnSpec::gaussian(kv_get(kv, "c1", -2.0), kv_get(kv, "s1", 0.5), 1.0),
            ScalarFnSpec::gaussian(kv_get(kv, "c2", 2.0), kv_get(kv, "s2", 0.5), 1.0));
    if (name == "cutoff_gradient")
        return OdFnSpec::cutoff_gradient(
            ScalarFnSpec::gaussian(kv_get(kv, "center", 0.0), kv_get(kv, "width", 1.0),
                                   kv_get(kv, "amp", 1.0)),
            kv_get(kv, "s", 0.5), kv_get(kv, "delta", 0.5));
    throw std::runtime_error("unknown off-diagonal spec '" + name + "'");
}

// field files carry no kind marker; detect by the index arity of the first row
bool csv_is_od(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::string header, row;
    std::getline(is, header);
    int dim = 1;
    {
        int n = 0, N = 0;
        double L = 0;
        if (std::sscanf(header.c_str(), "# grid n=%d L=%lf N=%d", &n, &L, &N) == 3)
            dim = n;
    }
    if (!std::getline(is, row)) throw std::runtime_error("empty field file: " + path);
    int commas = static_cast<int>(std::count(row.begin(), row.end(), ','));
    return commas == 2 * dim;  // scalar rows have `dim` indices, od rows 2*dim
}

std::string default_out(const std::string& name) {
    const char* env = std::getenv("ODFRAC_OUT_DIR");
    std::string dir = env ? env : ".";
    return dir + "/" + name;
}

void save_scalar_atomic(const std::string& path, const ScalarField& f) {
    std::ostringstream os;
    write_scalar_csv(os, f);
    atomic_write(path, os.str());
}

void save_od_atomic(const std::string& path, const OffDiagonalField& f) {
    std::ostringstream os;
    write_od_csv(os, f);
    atomic_write(path, os.str());
}

void summary_scalar(const std::string& tag, const ScalarField& f) {
    double mn = f.values[0], mx = f.values[0];
    for (double v : f.values) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    std::cout << tag << ": min=" << format_double(mn) << " max=" << format_double(mx)
              << " l2=" << format_double(lp_norm(f, 2.0)) << "\n";
}

void summary_od(const std::string& tag, const OffDiagonalField& f) {
    double mn = 0.0, mx = 0.0;
    for (double v : f.upper) {
        mn = std::min({mn, v, -v});
        mx = std::max({mx, v, -v});
    }
    std::cout << tag << ": min=" << format_double(mn) << " max=" << format_double(mx)
              << " l2_od=" << format_double(lp_od_norm(f, 2.0)) << "\n";
}

struct GridArgs {
    int dim = 1;
    double half_width = 10.0;
    int points = 256;
    GridSpec make() const { return make_grid(dim, half_width, points); }
};

void add_grid_flags(CLI::App* cmd, GridArgs& g) {
    cmd->add_option("--dim", g.dim, "spatial dimension (1 or 2)");
    cmd->add_option("-L,--half-width", g.half_width, "domain half-width");
    cmd->add_option("-N,--points", g.points, "points per axis");
}

WarnSink stderr_warn() {
    return [](const std::string& msg) { std::cerr << "warning: " << msg << "\n"; };
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete nonlocal fractional-gradient calculus and verification"};
    app.require_subcommand(1);

    // ---- gradient ----------------------------------------------------------
    auto* grad = app.add_subcommand("gradient", "fractional gradient d_s u");
    std::string grad_spec, grad_input, grad_out;
    double grad_s = 0.5;
    GridArgs grad_grid;
    grad->add_option("--spec", grad_spec, "scalar spec, e.g. gaussian:center=0,width=1");
    grad->add_option("--input", grad_input, "scalar field CSV");
    grad->add_option("--s", grad_s, "order s in [0,1]");
    grad->add_option("--out", grad_out, "output CSV path");
    add_grid_flags(grad, grad_grid);

    // ---- divergence --------------------------------------------------------
    auto* dive = app.add_subcommand("divergence", "fractional divergence div_s G");
    std::string div_spec, div_input, div_out;
    double div_s = 0.5;
    GridArgs div_grid;
    dive->add_option("--spec", div_spec, "off-diagonal spec, e.g. disjoint_bumps");
    dive->add_option("--input", div_input, "off-diagonal field CSV");
    dive->add_option("--s", div_s, "order s in [0,1]");
    dive->add_option("--out", div_out, "output CSV path");
    add_grid_flags(dive, div_grid);

    // ---- laplacian ---------------------------------------------------------
    auto* lap = app.add_subcommand("laplacian", "fractional laplacian div_s d_s u");
    std::string lap_spec, lap_input, lap_out;
    double lap_s = 0.5;
    bool lap_spectral = false;
    int lap_pad = 8;
    GridArgs lap_grid;
    lap->add_option("--spec", lap_spec, "scalar spec");
    lap->add_option("--input", lap_input, "scalar field CSV");
    lap->add_option("--s", lap_s, "order s in (0,1)");
    lap->add_flag("--spectral", lap_spectral, "use the Fourier-multiplier realization");
    lap->add_option("--pad", lap_pad, "spectral padding factor");
    lap->add_option("--out", lap_out, "output CSV path");
    add_grid_flags(lap, lap_grid);

    // ---- mollify -----------------------------------------------------------
    auto* mol = app.add_subcommand("mollify", "convolve with a unit-mass kernel");
    std::string mol_spec, mol_od_spec, mol_input, mol_out, mol_shape = "gaussian";
    double mol_eps = 0.5;
    GridArgs mol_grid;
    mol->add_option("--spec", mol_spec, "scalar spec");
    mol->add_option("--od-spec", mol_od_spec, "off-diagonal spec");
    mol->add_option("--input", mol_input, "field CSV (kind auto-detected)");
    mol->add_option("--epsilon", mol_eps, "kernel scale");
    mol->add_option("--shape", mol_shape, "gaussian | bump");
    mol->add_option("--out", mol_out, "output CSV path");
    add_grid_flags(mol, mol_grid);

    // ---- norms -------------------------------------------------------------
    auto* nrm = app.add_subcommand("norms", "evaluate norm/seminorm rows");
    std::string nrm_spec, nrm_input, nrm_out;
    std::vector<std::string> nrm_list;
    GridArgs nrm_grid;
    nrm->add_option("--spec", nrm_spec, "scalar spec");
    nrm->add_option("--input", nrm_input, "field CSV");
    nrm->add_option("--norm", nrm_list,
                    "norm spec, repeatable: lp:p=2 | gagliardo:s=0.5,p=2 | "
                    "wspq:s=0.5,p=2,q=2 | holder:alpha=0.5 | best_shift:q=2 | "
                    "lp_od:p=2 (od input)")
        ->required();
    nrm->add_option("--out", nrm_out, "also write rows to this CSV path");
    add_grid_flags(nrm, nrm_grid);

    // ---- verify ------------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "run verification suites");
    std::string ver_suite = "all", ver_config, ver_out_dir, ver_formats;
    bool ver_no_stamp = false;
    ver->add_option("suite", ver_suite, "suite name or 'all'");
    ver->add_option("--config", ver_config, "run configuration file");
    ver->add_option("--out-dir", ver_out_dir, "report output directory");
    ver->add_option("--format", ver_formats, "comma list of json,csv");
    ver->add_flag("--no-stamp", ver_no_stamp, "plain report file names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (*grad) {
            ScalarField u = grad_input.empty()
                                ? sample_scalar(parse_scalar_spec(grad_spec), grad_grid.make())
                                : load_scalar_csv(grad_input);
            OffDiagonalField out = frac_gradient(u, grad_s);
            std::string path = grad_out.empty() ? default_out("gradient.csv") : grad_out;
            save_od_atomic(path, out);
            summary_od("gradient", out);
            std::cout << "wrote " << path << "\n";
        } else if (*dive) {
            OffDiagonalField G = div_input.empty()
                                     ? sample_od(parse_od_spec(div_spec), div_grid.make())
                                     : load_od_csv(div_input);
            ScalarField out = frac_divergence(G, div_s);
            std::string path = div_out.empty() ? default_out("divergence.csv") : div_out;
            save_scalar_atomic(path, out);
            summary_scalar("divergence", out);
            std::cout << "wrote " << path << "\n";
        } else if (*lap) {
            ScalarField u = lap_input.empty()
                                ? sample_scalar(parse_scalar_spec(lap_spec), lap_grid.make())
                                : load_scalar_csv(lap_input);
            ScalarField out = lap_spectral
                                  ? frac_laplacian_spectral(u, lap_s, lap_pad, stderr_warn())
                                  : frac_laplacian_integral(u, lap_s);
            std::string path = lap_out.empty() ? default_out("laplacian.csv") : lap_out;
            save_scalar_atomic(path, out);
            summary_scalar("laplacian", out);
            std::cout << "wrote " << path << "\n";
        } else if (*mol) {
            Mollifier m;
            m.epsilon = mol_eps;
            if (mol_shape == "gaussian")
                m.shape = Mollifier::Shape::Gaussian;
            else if (mol_shape == "bump")
                m.shape = Mollifier::Shape::Bump;
            else
                throw std::runtime_error("unknown kernel shape '" + mol_shape + "'");
            bool od = !mol_od_spec.empty() || (!mol_input.empty() && csv_is_od(mol_input));
            std::string path = mol_out.empty() ? default_out("mollify.csv") : mol_out;
            if (od) {
                OffDiagonalField F = mol_input.empty()
                                         ? sample_od(parse_od_spec(mol_od_spec), mol_grid.make())
                                         : load_od_csv(mol_input);
                OffDiagonalField out = mollify_od(F, m, stderr_warn());
                save_od_atomic(path, out);
                summary_od("mollify", out);
            } else {
                ScalarField u = mol_input.empty()
                                    ? sample_scalar(parse_scalar_spec(mol_spec), mol_grid.make())
                                    : load_scalar_csv(mol_input);
                ScalarField out = mollify_scalar(u, m, stderr_warn());
                save_scalar_atomic(path, out);
                summary_scalar("mollify", out);
            }
            std::cout << "wrote " << path << "\n";
        } else if (*nrm) {
            bool od_input = !nrm_input.empty() && csv_is_od(nrm_input);
            ScalarField u{GridSpec{}, {}};
            OffDiagonalField F{GridSpec{}, {}, {}};
            if (od_input) {
                F = load_od_csv(nrm_input);
            } else if (!nrm_input.empty()) {
                u = load_scalar_csv(nrm_input);
            } else {
                u = sample_scalar(parse_scalar_spec(nrm_spec), nrm_grid.make());
            }
            const GridSpec& g = od_input ? F.grid : u.grid;
            std::string rows = "kind,s,p,q,n,N,L,value\n";
            for (const std::string& ns : nrm_list) {
                auto colon = ns.find(':');
                std::string kind = ns.substr(0, colon);
                auto kv = colon == std::string::npos
                              ? std::map<std::string, double>{}
                              : parse_kv(ns.substr(colon + 1));
                NormResult r;
                r.kind = kind;
                r.params.n = g.dim;
                r.points_per_axis = g.points_per_axis;
                r.half_width = g.half_width;
                r.params.s = kv_get(kv, "s", 0.0);
                r.params.p = kv_get(kv, "p", 2.0);
                r.params.q = kv_get(kv, "q", kv_get(kv, "p", 2.0));
                if (kind == "lp") {
                    if (od_input) throw std::runtime_error("lp needs a scalar field");
                    r.value = lp_norm(u, r.params.p);
                } else if (kind == "lp_od") {
                    if (!od_input) throw std::runtime_error("lp_od needs an od field");
                    r.value = lp_od_norm(F, r.params.p);
                } else if (kind == "gagliardo") {
                    r.value = gagliardo_seminorm(u, r.params.s, r.params.p);
                } else if (kind == "wspq") {
                    r.value = wspq_norm(u, r.params.s, r.params.p, r.params.q);
                } else if (kind == "holder") {
                    double alpha = kv_get(kv, "alpha", 0.5);
                    r.params.s = alpha;
                    r.value = holder_seminorm(u, alpha);
                } else if (kind == "best_shift") {
                    r.value = best_constant_shift(u, r.params.q).second;
                } else {
                    throw std::runtime_error("unknown norm kind '" + kind + "'");
                }
                rows += r.csv_row() + "\n";
            }
            std::cout << rows;
            if (!nrm_out.empty()) atomic_write(nrm_out, rows);
        } else if (*ver) {
            RunConfig rc =
                ver_config.empty() ? default_run_config() : parse_run_config(ver_config);
            if (!ver_out_dir.empty()) rc.out_dir = ver_out_dir;
            if (ver_no_stamp) rc.stamped = false;
            if (!ver_formats.empty()) {
                rc.write_json = ver_formats.find("json") != std::string::npos;
                rc.write_csv = ver_formats.find("csv") != std::string::npos;
            }
            auto outcomes = run_verification(rc, {ver_suite});
            bool all = true;
            for (const auto& oc : outcomes) {
                all = all && oc.pass;
                std::cout << "suite " << oc.suite << ": " << (oc.pass ? "PASS" : "FAIL");
                if (!oc.json_path.empty()) std::cout << "  (" << oc.json_path << ")";
                std::cout << "\n";
            }
            return all ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
