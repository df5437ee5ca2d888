#include "qev/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace qev {

double SweepAccumulator::max() const {
    double m = 0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double SweepAccumulator::mean() const {
    if (values.empty()) return 0;
    std::vector<double> mags(values.size());
    for (size_t i = 0; i < values.size(); ++i) mags[i] = std::abs(values[i]);
    return pairwise_sum(mags) / static_cast<double>(mags.size());
}

Point SweepAccumulator::argmax() const {
    size_t best = 0;
    double m = -1;
    for (size_t i = 0; i < values.size(); ++i)
        if (std::abs(values[i]) > m) {
            m = std::abs(values[i]);
            best = i;
        }
    return points.empty() ? Point{} : points[best];
}

namespace {
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}
}  // namespace

std::string report_to_text(const VerificationReport& r) {
    std::ostringstream os;
    os << "[" << (r.informational ? "info" : r.status) << "] " << r.check << " @ " << r.geometry;
    if (!r.params.empty()) {
        os << "(";
        bool first = true;
        for (const auto& [k, v] : r.params) {
            os << (first ? "" : ",") << k << "=" << fmt(v);
            first = false;
        }
        os << ")";
    }
    os << "  max=" << fmt(r.residual_max) << " tol=" << fmt(r.tolerance) << " [" << r.backend;
    if (r.backend == "fd") os << " h=" << fmt(r.h);
    os << ", grid " << r.grid << "]";
    if (!r.anchor.empty()) os << " {" << r.anchor << "}";
    if (!r.message.empty()) os << "  " << r.message;
    if (!r.metrics.empty()) {
        os << "  |";
        for (const auto& [k, v] : r.metrics) os << " " << k << "=" << fmt(v);
    }
    return os.str();
}

std::string reports_to_json(const std::string& suite, const std::vector<VerificationReport>& rs) {
    using json = nlohmann::ordered_json;
    json root;
    root["version"] = 1;
    root["suite"] = suite;
    root["reports"] = json::array();
    for (const auto& r : rs) {
        json j;
        j["check"] = r.check;
        j["geometry"] = r.geometry;
        json params = json::object();
        for (const auto& [k, v] : r.params) params[k] = v;
        j["params"] = params;
        j["grid"] = r.grid;
        j["backend"] = r.backend;
        j["h"] = r.h;
        j["residual_max"] = r.residual_max;
        j["residual_mean"] = r.residual_mean;
        j["max_location"] = r.max_location;
        j["tolerance"] = r.tolerance;
        j["status"] = r.status;
        j["informational"] = r.informational;
        j["anchor"] = r.anchor;
        j["message"] = r.message;
        json metrics = json::object();
        for (const auto& [k, v] : r.metrics) metrics[k] = v;
        j["metrics"] = metrics;
        root["reports"].push_back(std::move(j));
    }
    return root.dump(2) + "\n";
}

}  // namespace qev
