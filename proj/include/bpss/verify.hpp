#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bpss {

struct SuiteResult {
    std::string suite;
    long checks = 0;
    long failures = 0;
    std::string first_failure;
    std::vector<std::string> notes;
    bool passed() const { return checks > 0 && failures == 0; }
};

struct VerifyOptions {
    int n = 0;         // 0: the suite's default range
    int m = -1;        // -1: the suite's default range
    int cutoff = 48;
    uint64_t seed = 1;
    int samples = 500;  // random targets per cell
    int threads = 0;
};

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const VerifyOptions& opt);

}  // namespace bpss
