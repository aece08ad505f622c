#include "qpb/report.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>

namespace qpb {

std::string status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skip: return "skip";
    }
    return "?";
}

bool SuiteReport::pass() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::Fail; });
}

void SuiteReport::sort() {
    std::stable_sort(checks.begin(), checks.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
}

void SuiteReport::merge(const SuiteReport& other) {
    for (auto c : other.checks) {
        c.id = other.suite + "/" + c.id;
        checks.push_back(std::move(c));
    }
}

std::string SuiteReport::json(bool timing) const {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["suite"] = suite;
    j["params"] = {{"n", n}, {"k", k}, {"degree", degree}, {"seed", seed}, {"theta", theta}};
    j["checks"] = nlohmann::ordered_json::array();
    for (auto& c : checks) {
        nlohmann::ordered_json e;
        e["id"] = c.id;
        e["statement"] = c.statement;
        e["status"] = status_name(c.status);
        e["witness"] = c.witness;
        e["cases"] = c.cases;
        if (!c.info.empty()) e["info"] = c.info;
        if (timing) e["elapsed"] = c.elapsed;
        j["checks"].push_back(e);
    }
    j["overall"] = pass() ? "pass" : "fail";
    return j.dump(2);
}

std::string SuiteReport::text(bool timing) const {
    std::string out = "suite " + suite + "  n=" + std::to_string(n) + (k ? " k=" + std::to_string(k) : "") +
                      " degree=" + std::to_string(degree) + " seed=" + std::to_string(seed) + "\n";
    for (auto& c : checks) {
        std::string line = "  [" + status_name(c.status) + "] " + c.id + "  " + c.statement;
        if (c.cases) line += "  (" + std::to_string(c.cases) + " cases)";
        for (auto& [k2, v] : c.info) line += "  " + k2 + "=" + v;
        if (timing) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "  %.2fs", c.elapsed);
            line += buf;
        }
        out += line + "\n";
        if (!c.witness.empty()) out += "      " + c.witness + "\n";
    }
    out += std::string("overall: ") + (pass() ? "pass" : "fail") + "\n";
    return out;
}

}  // namespace qpb
