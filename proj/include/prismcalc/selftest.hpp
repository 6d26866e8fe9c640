#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace prismcalc {

struct SelftestOptions {
    std::uint64_t seed = 1;
    std::int64_t count = 50;
    std::string strata = "abc";
    bool parallel = true;
    std::int64_t precision = 12;
    std::int64_t degree = 6;
};

struct SelftestResult {
    std::int64_t passed = 0;
    std::int64_t failed = 0;
    std::vector<std::string> case_lines;
    std::string first_counterexample;  // config text reproducing the first failure
};

/// Seeded oracle-equivalence suites over generated crystals. Case index i
/// derives its own generator state from (seed, i), so parallel and serial
/// runs produce identical output.
SelftestResult run_selftest(const SelftestOptions& options);

} // namespace prismcalc
