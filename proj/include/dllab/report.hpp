#ifndef DLLAB_REPORT_HPP
#define DLLAB_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"

namespace dllab {

struct Check {
    std::string name;
    bool pass = false;
    std::string expected, actual, witness;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    nlohmann::ordered_json data = nlohmann::ordered_json::object();
    double seconds = 0;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    Check& add(std::string name, bool pass, std::string expected = "", std::string actual = "", std::string witness = "") {
        checks.push_back(Check{std::move(name), pass, std::move(expected), std::move(actual), std::move(witness)});
        return checks.back();
    }
    void merge(const SuiteReport& o, const std::string& prefix = "") {
        for (auto c : o.checks) {
            c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
        for (auto it = o.data.begin(); it != o.data.end(); ++it) data[prefix + it.key()] = it.value();
        seconds += o.seconds;
    }
};

nlohmann::ordered_json to_json(const SuiteReport& r, bool timings = true);

}  // namespace dllab

#endif
