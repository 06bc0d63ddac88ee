#ifndef BIDISC_REPORT_HPP
#define BIDISC_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bidisc {

struct check_result {
    std::string name;
    bool pass = false;
    double metric = 0.0;
    double tol = 0.0;
    double seconds = 0.0;
};

// Structured pass/fail result of a verification run.  Serialization lives in
// report.cpp; by default timings are zeroed so that identical inputs produce
// byte-identical files.
struct check_report {
    std::string label;
    std::uint64_t seed = 0;
    std::vector<check_result> checks;
    // auxiliary numeric series recorded verbatim (schedules, deltas, ...)
    std::map<std::string, std::vector<double>> series;

    check_result& add(const std::string& name, bool pass, double metric, double tol,
                      double seconds = 0.0) {
        checks.push_back({name, pass, metric, tol, seconds});
        return checks.back();
    }
    int failed() const {
        int n = 0;
        for (const auto& c : checks)
            if (!c.pass) ++n;
        return n;
    }
    bool all_pass() const { return failed() == 0; }

    // JSON with fixed key schema; include_timings=false writes seconds as 0.
    std::string to_json(bool include_timings = false) const;
};

} // namespace bidisc

#endif
