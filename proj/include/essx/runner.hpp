#pragma once

#include "essx/document.hpp"

#include <vector>

namespace essx {

struct RunOptions {
    std::optional<long long> range_lo, range_hi;
    std::optional<Int> ideal;
    std::optional<Int> r_cap;
    std::optional<std::uint64_t> seed;
    bool verbose = false;
};

struct RunResult {
    int status = 2;  // 0 = verdict true/success, 1 = verdict false/witness not found, 2 = input error
    nlohmann::json report;
    std::string human;
};

// Dispatches a verb onto the library. Input errors are mapped to status 2
// with diagnostics in the report; the function itself does not throw.
RunResult run_command(const std::string& verb, const Document& doc, const RunOptions& opts);

const std::vector<std::string>& known_verbs();

}  // namespace essx
