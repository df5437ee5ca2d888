#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qev/nhg.hpp"
#include "qev/specfile.hpp"
#include "qev/suites.hpp"

namespace {

qev::ParamMap parse_params(const std::vector<std::string>& kvs) {
    qev::ParamMap out;
    for (const auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw qev::Error("parameter must be NAME=VALUE, got '" + kv + "'");
        out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    return out;
}

int write_output(const std::string& rendered, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << rendered;
        return 0;
    }
    std::ofstream os(out_path);
    if (!os) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return 2;
    }
    os << rendered;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-Einstein / near-horizon geometry verification suites"};
    app.set_help_flag("--help", "print help and exit");  // frees -h / --h for the step size
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    verify->add_option("suite", suite, "suite name (see --help-suites)")->required();
    qev::SuiteConfig cfg;
    std::vector<std::string> params;
    verify->add_option("--geometry", cfg.geometry, "restrict to one catalog geometry");
    verify->add_option("--param", params, "geometry parameter NAME=VALUE (repeatable)");
    verify->add_option("--grid", cfg.grid, "grid density per dimension (>= 8)");
    verify->add_option("--h", cfg.h, "finite-difference step");
    verify->add_option("--backend", cfg.backend, "analytic | fd")
        ->check(CLI::IsMember({"analytic", "fd"}));
    verify->add_option("--tol", cfg.tol_override, "tolerance override for gating rows");
    verify->add_option("--report", cfg.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    std::string out_path;
    verify->add_option("--out", out_path, "write the report to a file");
    verify->add_option("--spec", cfg.spec_path, "user geometry file (qespec 1)");

    // list / describe
    auto* list = app.add_subcommand("list", "list catalog geometries");
    auto* describe = app.add_subcommand("describe", "describe one catalog geometry");
    std::string describe_name;
    describe->add_option("name", describe_name, "geometry name")->required();

    // limit
    auto* limit = app.add_subcommand("limit", "near-horizon scaling limit of a family");
    std::string family_name;
    std::vector<double> eps;
    std::vector<std::string> limit_params;
    limit->add_option("family", family_name, "catalog name of a lorentzian metric")->required();
    limit->add_option("--eps", eps, "strictly decreasing scale sequence")
        ->required()
        ->delimiter(',');
    limit->add_option("--param", limit_params, "geometry parameter NAME=VALUE");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        if (*list) {
            for (const auto& n : qev::list_geometries()) std::cout << n << "\n";
            return 0;
        }
        if (*describe) {
            std::cout << qev::describe_geometry(describe_name);
            return 0;
        }
        if (*limit) {
            qev::GeometryEntry e = qev::get_geometry(family_name, parse_params(limit_params));
            if (!e.lorentzian()) throw qev::Error("'" + family_name + "' is not lorentzian");
            qev::LorentzianMetricFamily fam = qev::scaling_family(e.g);
            qev::Grid grid(e.chart, qev::default_grid_counts(e.chart, 8));
            qev::NearHorizonLimit lim = qev::near_horizon_limit(fam, eps, grid);
            qev::VerificationReport r = lim.report;
            r.geometry = e.name;
            r.params = e.params;
            std::cout << qev::report_to_text(r) << "\n";
            return r.status == "pass" ? 0 : 1;
        }
        // verify
        cfg.suite = suite;
        cfg.geometry_params = parse_params(params);
        if (out_path.empty()) {
            if (const char* env = std::getenv("QEV_OUT_DIR")) {
                out_path = std::string(env) + "/" + suite + "." +
                           (cfg.format == "json" ? "json" : "txt");
            }
        }
        qev::SuiteResult res = qev::run_suite(cfg);
        if (res.exit_code == 2 && res.reports.empty()) {
            std::cerr << res.rendered;
            return 2;
        }
        if (int rc = write_output(res.rendered, out_path)) return rc;
        return res.exit_code;
    } catch (const qev::ParseError& e) {
        std::cerr << "parse error (line " << e.line << "): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
