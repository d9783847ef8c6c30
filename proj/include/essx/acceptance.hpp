#pragma once

#include "essx/runner.hpp"

#include <iosfwd>

namespace essx {
namespace acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double ms = 0.0;
};

struct SuiteResult {
    std::vector<CriterionResult> criteria;
    bool all_pass = true;
    nlohmann::json to_json() const;  // deterministic: no timing
};

// Runs every criterion, printing one pass/fail line per criterion to out
// (timings appear in the human lines only). Returns the collected results.
SuiteResult run_all(std::uint64_t seed, const Int& r_cap, const std::string& corpus_dir,
                    std::ostream& out);

}  // namespace acceptance
}  // namespace essx
