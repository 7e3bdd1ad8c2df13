#include "odfrac/runner.hpp"

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace odfrac {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_doubles(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(trim(tok)));
    return out;
}

std::vector<int> parse_ints(const std::string& v) {
    std::vector<int> out;
    for (double d : parse_doubles(v)) out.push_back(static_cast<int>(d));
    return out;
}

void apply_suite_key(SuiteConfig& c, const std::string& key, const std::string& value,
                     int line) {
    try {
        if (key == "n")
            c.dim = std::stoi(value);
        else if (key == "L")
            c.half_width = std::stod(value);
        else if (key == "N" || key == "N_ladder")
            c.grid_ladder = parse_ints(value);
        else if (key == "s" || key == "s_list")
            c.s_values = parse_doubles(value);
        else if (key == "p")
            c.p = std::stod(value);
        else if (key == "q")
            c.q = std::stod(value);
        else if (key == "tail_fraction")
            c.tail_fraction = std::stod(value);
        else if (key == "tol_exact")
            c.tol_exact = std::stod(value);
        else if (key == "tol_dilation")
            c.tol_dilation = std::stod(value);
        else if (key == "tol_stability")
            c.tol_stability = std::stod(value);
        else if (key == "tol_ratio_std")
            c.tol_ratio_std = std::stod(value);
        else if (key == "tol_kappa_u")
            c.tol_kappa_u = std::stod(value);
        else if (key == "tol_kappa_theory")
            c.tol_kappa_theory = std::stod(value);
        else if (key == "tol_fit_residual")
            c.tol_fit_residual = std::stod(value);
        else if (key == "decay_threshold")
            c.decay_threshold = std::stod(value);
        else if (key == "baseline")
            c.baseline = std::stod(value);
        else if (key == "baseline2")
            c.baseline2 = std::stod(value);
        else if (key == "baseline_slack")
            c.baseline_slack = std::stod(value);
        else if (key == "eps_list")
            c.epsilons = parse_doubles(value);
        else if (key == "R_list")
            c.R_ladder = parse_doubles(value);
        else if (key == "pad")
            c.spectral_pad = std::stoi(value);
        else if (key == "gfamily")
            c.gfamily_size = std::stoi(value);
        else if (key == "max_cases")
            c.max_cases = std::stoi(value);
        else if (key == "seed")
            c.seed = static_cast<unsigned>(std::stoul(value));
        else
            throw std::runtime_error("unknown suite key '" + key + "'");
    } catch (const std::invalid_argument&) {
        throw std::runtime_error("config line " + std::to_string(line) +
                                 ": bad value for '" + key + "'");
    }
}

}  // namespace

SuiteConfig RunConfig::suite_config(const std::string& name) const {
    SuiteConfig c = SuiteConfig::defaults(name);
    c.seed = seed;
    for (const auto& [suite, over] : overrides)
        if (suite == name) c = over;
    return c;
}

RunConfig default_run_config() {
    RunConfig rc;
    const char* env = std::getenv("ODFRAC_OUT_DIR");
    rc.out_dir = env ? env : "reports";
    return rc;
}

RunConfig parse_run_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config: " + path);
    RunConfig rc = default_run_config();
    std::string section;  // "" / "global" / suite name
    SuiteConfig cur;
    bool in_suite = false;
    std::string line;
    int ln = 0;
    auto flush = [&] {
        if (in_suite) rc.overrides.emplace_back(cur.suite, cur);
        in_suite = false;
    };
    while (std::getline(is, line)) {
        ++ln;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[' && s.back() == ']') {
            flush();
            std::string name = trim(s.substr(1, s.size() - 2));
            if (name == "global") {
                section = "global";
            } else if (name.rfind("suite ", 0) == 0) {
                section = trim(name.substr(6));
                auto known = suite_names();
                if (std::find(known.begin(), known.end(), section) == known.end())
                    throw std::runtime_error("config line " + std::to_string(ln) +
                                             ": unknown suite '" + section + "'");
                cur = SuiteConfig::defaults(section);
                cur.seed = rc.seed;
                in_suite = true;
            } else {
                throw std::runtime_error("config line " + std::to_string(ln) +
                                         ": unknown section '" + name + "'");
            }
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(ln) +
                                     ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (section == "global") {
            if (key == "out_dir")
                rc.out_dir = value;
            else if (key == "formats") {
                rc.write_json = value.find("json") != std::string::npos;
                rc.write_csv = value.find("csv") != std::string::npos;
            } else if (key == "stamped")
                rc.stamped = (value == "true" || value == "1" || value == "yes");
            else if (key == "seed")
                rc.seed = static_cast<unsigned>(std::stoul(value));
            else if (key == "suites") {
                rc.suites.clear();
                std::stringstream ss(value);
                std::string tok;
                while (std::getline(ss, tok, ',')) rc.suites.push_back(trim(tok));
            } else
                throw std::runtime_error("config line " + std::to_string(ln) +
                                         ": unknown global key '" + key + "'");
        } else if (in_suite) {
            apply_suite_key(cur, key, value, ln);
        } else {
            throw std::runtime_error("config line " + std::to_string(ln) +
                                     ": key outside any section");
        }
    }
    flush();
    return rc;
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open for writing: " + tmp.string());
        os << content;
        if (!os) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::vector<SuiteOutcome> run_verification(const RunConfig& cfg,
                                           const std::vector<std::string>& which) {
    std::vector<std::string> names = which;
    if (names.empty() || (names.size() == 1 && names[0] == "all"))
        names = cfg.suites.empty() ? suite_names() : cfg.suites;

    std::string stamp;
    if (cfg.stamped) {
        std::time_t t = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", std::gmtime(&t));
        stamp = std::string("_") + buf;
    }

    std::vector<SuiteOutcome> outcomes;
    for (const std::string& name : names) {
        SuiteConfig sc = cfg.suite_config(name);
        VerificationReport rep = run_suite(sc);
        SuiteOutcome oc;
        oc.suite = name;
        oc.pass = rep.pass();
        if (cfg.write_json) {
            oc.json_path = cfg.out_dir + "/" + name + stamp + ".json";
            atomic_write(oc.json_path, rep.to_json_string());
        }
        if (cfg.write_csv && !rep.norm_rows.empty()) {
            oc.csv_path = cfg.out_dir + "/" + name + stamp + "_norms.csv";
            atomic_write(oc.csv_path, rep.norms_csv());
        }
        outcomes.push_back(std::move(oc));
    }
    return outcomes;
}

}  // namespace odfrac
