#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "synccode/code.hpp"

namespace synccode {

/// Worst-case number of error-free bits needed to identify the phase.
/// Empty means no window length up to the code length suffices (soft code).
using Reliability = std::optional<int>;

/// First column at which two rotations of a code disagree on control bits.
struct MismatchWitness {
    int i;
    int j;
    std::optional<int> column;  // empty: rotations i and j never mismatch
};

/// First index m in [0, L) where rotations i and j carry differing control
/// bits, i.e. both code[i+m] and code[j+m] are control symbols and differ.
MismatchWitness first_mismatch(const Code& code, int i, int j);

/// Definition: every pair of distinct rotations must mismatch within the
/// first n symbols. Requires 1 <= n <= code.length().
bool is_sync_code(const Code& code, int n);

/// Minimal n for which is_sync_code holds, or empty if none exists.
Reliability reliability(const Code& code);

/// Existence bound: a (d,k,n)-synchronization code needs k <= 2^n - d.
/// Saturates at int64 max for n >= 63.
std::int64_t lemma1_bound(int d, int n);

}  // namespace synccode
