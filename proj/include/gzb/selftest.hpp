#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

// The acceptance suite: ten criteria, each a deterministic check at a pinned
// tolerance (exact arithmetic throughout - tolerances are zero). Runnable
// from the CLI (selftest) and from the acceptance test binary.

namespace gzb::harness {

struct CriterionResult {
    int index;
    std::string name;
    bool pass;
    std::string detail;  // failure witness or summary counts
    double seconds;
};

struct SelftestOptions {
    std::vector<int> only;        // criterion indices to run; empty = all
    bool corrupt_fixture = false; // flip one Hilbert symbol to prove the suite catches it
    std::uint64_t seed = 0x00c0ffee5eedULL;
    int threads = 0;              // 0 = hardware
};

std::vector<CriterionResult> run_acceptance(const SelftestOptions& opts = {});

bool all_passed(const std::vector<CriterionResult>& rs);
nlohmann::ordered_json acceptance_report_json(const std::vector<CriterionResult>& rs);

}  // namespace gzb::harness
