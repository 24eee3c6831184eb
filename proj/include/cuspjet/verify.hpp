#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cuspjet {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Names of all verification suites, in reporting order. The first ten are
/// the acceptance criteria; the rest are module-level property suites.
std::vector<std::string> verify_suite_names();
std::vector<std::string> acceptance_suite_names();

/// Run one suite; the seed drives all randomized sampling inside it.
SuiteResult run_verify_suite(const std::string& name, std::uint64_t seed);

} // namespace cuspjet
