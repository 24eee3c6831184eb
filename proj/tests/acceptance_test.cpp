// Acceptance gate: runs every acceptance suite at its pinned tolerance and
// prints one pass/fail line per criterion. Exit code 0 only when all pass.

#include "cuspjet/verify.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

int main(int argc, char** argv)
{
    std::uint64_t seed = 20240817u;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--seed") == 0) seed = std::strtoull(argv[i + 1], nullptr, 10);

    auto names = cuspjet::acceptance_suite_names();
    bool all_ok = true;
    int index = 1;
    double total = 0.0;
    for (const auto& name : names) {
        auto res = cuspjet::run_verify_suite(name, seed);
        std::printf("[%s] criterion %2d %-24s (%.2fs) %s\n", res.passed ? "PASS" : "FAIL",
                    index++, res.name.c_str(), res.seconds, res.detail.c_str());
        std::fflush(stdout);
        all_ok = all_ok && res.passed;
        total += res.seconds;
    }
    std::printf("%s: %zu criteria in %.2fs\n", all_ok ? "ACCEPTED" : "REJECTED", names.size(),
                total);
    return all_ok ? 0 : 1;
}
