#pragma once

#include "qev/geometry.hpp"
#include "qev/report.hpp"

namespace qev {

struct SuiteConfig {
    std::string suite = "all";
    int grid = 24;                    // base density per dimension, >= 8
    double tol_override = 0;          // 0 keeps the backend policy
    std::string backend = "analytic"; // "analytic" | "fd"
    double h = 1e-4;
    std::string format = "text";      // "text" | "json"
    std::string out_path;
    std::string spec_path;            // optional user geometry file
    std::string geometry;             // restrict rows to one geometry
    ParamMap geometry_params;
};

struct SuiteResult {
    std::vector<VerificationReport> reports;
    int exit_code = 0;  // 0 pass, 1 fail, 2 error
    std::string rendered;
};

const std::vector<std::string>& suite_names();

/// Runs the named suite; deterministic row order, deterministic output.
SuiteResult run_suite(const SuiteConfig& config);

}  // namespace qev
