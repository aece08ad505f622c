#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qpb {

enum class Status { Pass, Fail, Skip };
std::string status_name(Status s);

struct CheckResult {
    std::string id;
    std::string statement;
    Status status = Status::Pass;
    std::string witness;  // failing expression, or why a check was skipped
    std::size_t cases = 0;
    std::map<std::string, std::string> info;
    double elapsed = 0;
};

struct SuiteReport {
    std::string suite;
    int n = 2;
    int k = 0;  // 0: every chart
    int degree = 0;
    std::uint64_t seed = 0;
    std::string theta;
    std::vector<CheckResult> checks;

    // pass iff every non-skip check passes
    bool pass() const;
    void sort();
    void merge(const SuiteReport& other);  // ids prefixed by other.suite
    // Single JSON object; elapsed only when timing is set.
    std::string json(bool timing = false) const;
    std::string text(bool timing = false) const;
};

}  // namespace qpb
