#include "dllab/report.hpp"

namespace dllab {

nlohmann::ordered_json to_json(const SuiteReport& r, bool timings) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["pass"] = r.pass();
    auto& checks = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["status"] = c.pass ? "pass" : "fail";
        if (!c.expected.empty()) cj["expected"] = c.expected;
        if (!c.actual.empty()) cj["actual"] = c.actual;
        if (!c.witness.empty()) cj["witness"] = c.witness;
        checks.push_back(std::move(cj));
    }
    j["data"] = r.data;
    if (timings) j["seconds"] = r.seconds;
    return j;
}

}  // namespace dllab
