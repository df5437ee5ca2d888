#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "qev/suites.hpp"

using namespace qev;

namespace {
std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = std::string("/tmp/qev_test_") + name;
    std::ofstream os(path);
    os << text;
    return path;
}
}  // namespace

TEST_CASE("suite registry exposes the documented names") {
    auto names = suite_names();
    for (const char* expected : {"vacuum-static", "lemma21", "rigidity", "gradient",
                                 "nhg-limit", "einstein-5d", "matter", "yamabe", "all"})
        CHECK(std::find(names.begin(), names.end(), expected) != names.end());
}

TEST_CASE("unknown suite and invalid config exit with status 2") {
    SuiteConfig cfg;
    cfg.suite = "bogus";
    CHECK(run_suite(cfg).exit_code == 2);
    cfg.suite = "gradient";
    cfg.grid = 4;
    CHECK(run_suite(cfg).exit_code == 2);
}

TEST_CASE("passing suites exit zero and informational rows never gate") {
    SuiteConfig cfg;
    cfg.suite = "rigidity";
    cfg.grid = 8;
    SuiteResult res = run_suite(cfg);
    CHECK(res.exit_code == 0);
    bool saw_info_fail = false;
    for (const auto& r : res.reports)
        if (r.informational && r.status != "pass") saw_info_fail = true;
    CHECK(saw_info_fail);  // the positive-lambda sphere row reports nonzero
}

TEST_CASE("status pass if and only if residual within tolerance") {
    SuiteConfig cfg;
    cfg.suite = "gradient";
    cfg.grid = 8;
    for (const auto& r : run_suite(cfg).reports) {
        if (r.status == "pass") CHECK(r.residual_max <= r.tolerance);
        if (r.status == "fail") CHECK(r.residual_max > r.tolerance);
    }
}

TEST_CASE("tolerance override flips rows to fail and the exit code to one") {
    SuiteConfig cfg;
    cfg.suite = "gradient";
    cfg.grid = 8;
    cfg.tol_override = 1e-300;
    SuiteResult res = run_suite(cfg);
    CHECK(res.exit_code == 1);
}

TEST_CASE("same config renders byte-identical reports") {
    for (const char* suite : {"gradient", "yamabe"}) {
        SuiteConfig cfg;
        cfg.suite = suite;
        cfg.grid = 8;
        cfg.format = "json";
        SuiteResult a = run_suite(cfg);
        SuiteResult b = run_suite(cfg);
        CHECK(a.rendered == b.rendered);
        CHECK(a.exit_code == b.exit_code);
    }
}

TEST_CASE("exit-status contract over randomized configs") {
    std::mt19937_64 rng(99);
    const std::vector<std::string> suites{"gradient", "rigidity", "lemma21"};
    for (int trial = 0; trial < 6; ++trial) {
        SuiteConfig cfg;
        cfg.suite = suites[rng() % suites.size()];
        cfg.grid = 8 + int(rng() % 3) * 2;
        cfg.format = (rng() % 2) ? "json" : "text";
        SuiteResult res = run_suite(cfg);
        bool any_gate = false, any_err = false;
        for (const auto& r : res.reports) {
            if (r.informational) continue;
            if (r.status == "error" || r.status == "hypotheses-failed") any_err = true;
            if (r.status != "pass") any_gate = true;
        }
        const int expected = any_err ? 2 : (any_gate ? 1 : 0);
        CHECK(res.exit_code == expected);
    }
}

TEST_CASE("user spec files join the vacuum and rigidity suites") {
    const std::string sphere_neg =
        "qespec 1\n"
        "chart {\n  name user_sphere\n  dim 2\n  coord th interval 0 3.14159265358979\n"
        "  coord ph periodic 6.28318530717959\n  signature riemannian\n}\n"
        "fields {\n  g[th,th] = 1\n  g[ph,ph] = sin(th)^2\n  expect lambda = -1\n"
        "  expect m = 2\n}\n";
    std::string path = write_temp("sphere_neg.qespec", sphere_neg);

    SuiteConfig cfg;
    cfg.suite = "rigidity";
    cfg.grid = 8;
    cfg.spec_path = path;
    SuiteResult res = run_suite(cfg);
    CHECK(res.exit_code == 0);  // informational row never gates
    bool saw_user = false;
    for (const auto& r : res.reports)
        if (r.geometry == "user_sphere") {
            saw_user = true;
            CHECK(r.informational);
            CHECK(r.residual_max > 1.0);  // unit sphere is nowhere near the negative branch
        }
    CHECK(saw_user);

    // corrupted file: exit 2 with a parse diagnostic
    std::string bad = write_temp("bad.qespec", "qespec 2\nnot a chart\n");
    cfg.suite = "vacuum-static";
    cfg.spec_path = bad;
    SuiteResult rbad = run_suite(cfg);
    CHECK(rbad.exit_code == 2);
    std::remove(path.c_str());
    std::remove(bad.c_str());
}

TEST_CASE("geometry filter restricts the generated rows") {
    SuiteConfig cfg;
    cfg.suite = "vacuum-static";
    cfg.grid = 8;
    cfg.geometry = "flat_torus";
    SuiteResult res = run_suite(cfg);
    CHECK(!res.reports.empty());
    for (const auto& r : res.reports) CHECK(r.geometry == "flat_torus");
}
