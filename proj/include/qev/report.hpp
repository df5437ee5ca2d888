#pragma once

#include <map>

#include "qev/chart.hpp"

namespace qev {

/// Outcome of one named check on one geometry. status is pass exactly when
/// residual_max <= tolerance; informational rows never gate an exit status.
struct VerificationReport {
    std::string check;
    std::string geometry;
    ParamMap params;
    std::string grid;
    std::string backend;  // "analytic" or "fd"
    double h = 0;
    double residual_max = 0;
    double residual_mean = 0;
    Point max_location;
    double tolerance = 0;
    std::string status;  // pass | fail | hypotheses-failed | error
    bool informational = false;
    std::string anchor;
    std::string message;
    std::map<std::string, double> metrics;

    void finalize() {
        if (status.empty()) status = residual_max <= tolerance ? "pass" : "fail";
    }
    bool gates() const {
        return !informational && status != "pass";
    }
};

std::string report_to_text(const VerificationReport& r);
std::string reports_to_json(const std::string& suite, const std::vector<VerificationReport>& rs);

/// Accumulates |residual| values over a sweep with a deterministic reduction.
struct SweepAccumulator {
    std::vector<double> values;
    std::vector<Point> points;

    void add(const Point& p, double v) {
        values.push_back(v);
        points.push_back(p);
    }
    double max() const;
    double mean() const;
    Point argmax() const;
};

}  // namespace qev
