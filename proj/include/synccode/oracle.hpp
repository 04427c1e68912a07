#pragma once

#include <cstdint>

#include "synccode/solver.hpp"

namespace synccode {

/// Caps on the exhaustive enumeration. The candidate count for (d, k) is
/// C(d+k, k) * 2^k; instances above either cap are refused.
struct OracleBudget {
    int max_length = 14;
    std::uint64_t max_enumerations = 16'000'000;
};

/// Exhaustive ground truth: try every placement of k control bits among
/// d+k positions and every value assignment, in deterministic order
/// (positions lexicographic, values as a binary numeral with the first
/// control bit most significant). No symmetry breaking, on purpose: an
/// Unsat from the solver against a Sat from the oracle is release-blocking.
SolveResult oracle_exists(const Params& params, const OracleBudget& budget = {});

/// Minimum-k sweep backed by oracle_exists; Unknown when the budget refuses
/// an instance before the sweep is decided.
MinKResult oracle_min_k(int d, int n, const OracleBudget& budget = {});

}  // namespace synccode
