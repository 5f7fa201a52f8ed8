// Acceptance suite runner: executes every criterion at its pinned tolerance
// (exact arithmetic - zero tolerance) and prints one pass/fail line each.

#include <cstdio>

#include "gzb/selftest.hpp"

int main() {
    gzb::harness::SelftestOptions opts;
    auto results = gzb::harness::run_acceptance(opts);
    for (const auto& r : results)
        std::printf("%s  [%d] %s (%s, %.2fs)\n", r.pass ? "PASS" : "FAIL", r.index, r.name.c_str(),
                    r.detail.c_str(), r.seconds);
    bool ok = gzb::harness::all_passed(results) && results.size() == 10;
    std::printf("%s\n", ok ? "acceptance: all criteria passed" : "acceptance: FAILURES present");
    return ok ? 0 : 1;
}
