#include "bidisc/report.hpp"

#include <cmath>

#include <json.hpp>

namespace bidisc {

namespace {

double clamp_finite(double v) {
    if (std::isnan(v)) return 0.0;
    if (std::isinf(v)) return v > 0 ? 1e308 : -1e308;
    return v;
}

} // namespace

std::string check_report::to_json(bool include_timings) const {
    nlohmann::ordered_json j;
    j["label"] = label;
    j["seed"] = seed;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["metric"] = clamp_finite(c.metric);
        jc["tol"] = clamp_finite(c.tol);
        jc["seconds"] = include_timings ? c.seconds : 0.0;
        arr.push_back(jc);
    }
    j["checks"] = arr;
    j["passed"] = static_cast<int>(checks.size()) - failed();
    j["failed"] = failed();
    for (const auto& [key, vals] : series) j[key] = vals;
    return j.dump(2) + "\n";
}

} // namespace bidisc
