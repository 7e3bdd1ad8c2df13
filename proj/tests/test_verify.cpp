/// @file test_verify.cpp
/// @brief Suite machinery: determinism, vacuous-case flagging, convergence
///        orders, report serialization, config parsing.

#include <doctest.h>

#include <cstdio>
#include <stdexcept>
#include <filesystem>
#include <fstream>
#include <limits>

#include "odfrac/runner.hpp"
#include "odfrac/verify.hpp"

using namespace odfrac;

TEST_CASE("reports: identical configs serialize byte-identically") {
    SuiteConfig cfg = SuiteConfig::defaults("adjointness");
    cfg.grid_ladder = {64};
    std::string a = run_suite(cfg).to_json_string();
    std::string b = run_suite(cfg).to_json_string();
    CHECK(a == b);
    CHECK(a.find("\"suite\": \"adjointness\"") != std::string::npos);
    CHECK(a.find("\"verdict\"") != std::string::npos);
}

TEST_CASE("bb_l1: vacuous constant case is flagged, never silently passed") {
    SuiteConfig cfg = SuiteConfig::defaults("bb_l1");
    cfg.grid_ladder = {64, 128};
    cfg.baseline = 0.0;  // skip the regression at this reduced resolution
    VerificationReport rep = suite_bb_l1(cfg);
    bool found_vacuous = false;
    for (const auto& c : rep.cases)
        if (c.vacuous && c.id.find("constant") != std::string::npos) found_vacuous = true;
    CHECK(found_vacuous);
    CHECK(rep.pass());
}

TEST_CASE("observed_order: Richardson and the exactness sentinel") {
    CHECK(observed_order({1.0, 1.25, 1.3125}) == doctest::Approx(2.0));
    CHECK(observed_order({1.0, 1.0, 1.0}) == std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(observed_order({1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("convergence suite: trapezoid order, exact-gradient sentinel") {
    SuiteConfig cfg = SuiteConfig::defaults("convergence");
    VerificationReport rep = suite_convergence(cfg);
    CHECK(rep.pass());
    double pair_order = 0, grad_order = 0;
    for (const auto& [k, v] : rep.fits) {
        if (k == "pair_scalar_order") pair_order = v;
        if (k == "frac_gradient_order") grad_order = v;
    }
    CHECK(pair_order == doctest::Approx(2.0).epsilon(0.15));
    CHECK(grad_order == std::numeric_limits<double>::infinity());
}

TEST_CASE("decay suite: compact members sentinel, gaussian pairs measured") {
    SuiteConfig cfg = SuiteConfig::defaults("decay");
    cfg.grid_ladder = {512};  // reduced for test speed
    VerificationReport rep = suite_decay(cfg);
    CHECK(rep.pass());
    int sentinels = 0, measured = 0;
    for (const auto& c : rep.cases) {
        if (c.vacuous)
            ++sentinels;
        else {
            ++measured;
            CHECK(c.numbers[0].second <= -4.0);
        }
    }
    CHECK(sentinels == 1);  // the compact disjoint-bump member
    CHECK(measured == 2);
}

TEST_CASE("run_verification: writes reports atomically, deterministic bytes") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "odfrac_test_reports";
    fs::remove_all(dir);
    RunConfig rc = default_run_config();
    rc.out_dir = dir.string();
    rc.stamped = false;
    SuiteConfig small = SuiteConfig::defaults("adjointness");
    small.grid_ladder = {48};
    rc.overrides.emplace_back("adjointness", small);

    auto out1 = run_verification(rc, {"adjointness"});
    REQUIRE(out1.size() == 1);
    CHECK(out1[0].pass);
    std::ifstream f1(out1[0].json_path);
    std::string body1((std::istreambuf_iterator<char>(f1)), {});

    auto out2 = run_verification(rc, {"adjointness"});
    std::ifstream f2(out2[0].json_path);
    std::string body2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(body1 == body2);
    CHECK(!body1.empty());
    fs::remove_all(dir);
}

TEST_CASE("config parsing: sections, overrides, rejection of unknown keys") {
    namespace fs = std::filesystem;
    fs::path p = fs::temp_directory_path() / "odfrac_test.cfg";
    {
        std::ofstream os(p);
        os << "# comment\n[global]\nout_dir = /tmp/odfrac_cfg_out\nstamped = false\n"
           << "seed = 7\n\n[suite bb_l1]\nN_ladder = 64,128\nbaseline = 0\n";
    }
    RunConfig rc = parse_run_config(p.string());
    CHECK(rc.out_dir == "/tmp/odfrac_cfg_out");
    CHECK(rc.stamped == false);
    CHECK(rc.seed == 7);
    SuiteConfig sc = rc.suite_config("bb_l1");
    CHECK(sc.grid_ladder == std::vector<int>{64, 128});
    CHECK(sc.baseline == 0.0);
    // untouched suites keep their defaults
    CHECK(rc.suite_config("laplacian").spectral_pad == 32);

    {
        std::ofstream os(p);
        os << "[suite nosuch]\nN = 8\n";
    }
    CHECK_THROWS_AS(parse_run_config(p.string()), std::runtime_error);
    {
        std::ofstream os(p);
        os << "[suite bb_l1]\nwhatever = 1\n";
    }
    CHECK_THROWS_AS(parse_run_config(p.string()), std::runtime_error);
    fs::remove(p.string());
}

TEST_CASE("laplacian suite: boundary warning escalates to case failure") {
    SuiteConfig cfg = SuiteConfig::defaults("laplacian");
    cfg.half_width = 2.0;  // gaussian far from decayed at the boundary
    cfg.grid_ladder = {64};
    cfg.s_values = {0.5};
    cfg.spectral_pad = 4;
    VerificationReport rep = suite_laplacian(cfg);
    CHECK_FALSE(rep.pass());
    bool escalated = false;
    for (const auto& c : rep.cases)
        if (!c.pass && c.note.find("boundary") != std::string::npos) escalated = true;
    CHECK(escalated);
}

TEST_CASE("grid ladder invariant: must be strictly increasing") {
    SuiteConfig cfg = SuiteConfig::defaults("adjointness");
    cfg.grid_ladder = {128, 128};
    CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);
    cfg.grid_ladder.clear();
    CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);
}

TEST_CASE("suite registry: every name dispatches") {
    for (const std::string& name : suite_names()) {
        SuiteConfig cfg = SuiteConfig::defaults(name);
        CHECK(cfg.suite == name);
    }
    SuiteConfig bad;
    bad.suite = "nonexistent";
    CHECK_THROWS_AS(run_suite(bad), std::invalid_argument);
}

TEST_CASE("json writer: escaping and number formatting") {
    Json obj = Json::object();
    obj.set("a\"b", Json::string("x\ny"));
    obj.set("v", Json::number(0.1));
    obj.set("inf", Json::number(std::numeric_limits<double>::infinity()));
    std::string s = obj.dump();
    CHECK(s.find("\"a\\\"b\"") != std::string::npos);
    CHECK(s.find("\\n") != std::string::npos);
    CHECK(s.find("0.10000000000000001") != std::string::npos);  // 17 digits
    CHECK(s.find("\"inf\"") != std::string::npos);
}
