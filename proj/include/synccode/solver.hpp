#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "synccode/code.hpp"

namespace synccode {

struct SolverOptions {
    /// Per decision-instance wall-clock budget; 18000 s mirrors the published
    /// experiment protocol. Set smaller for desk-scale sweeps.
    double timeout_seconds = 18000.0;
    bool symmetry_breaking = true;
    std::uint64_t node_limit = 0;  // 0 = unlimited
    std::uint64_t seed = 0;        // reserved; the default search is deterministic
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t propagations = 0;
    std::uint64_t conflicts = 0;
    double seconds = 0.0;
};

/// Outcome of one (d, k, n) decision instance.
struct SolveResult {
    enum class Status { Sat, Unsat, Timeout };

    Status status;
    std::optional<Code> code;  // present iff Sat; always re-verified
    SearchStats stats;

    bool sat() const { return status == Status::Sat; }
    bool unsat() const { return status == Status::Unsat; }
    bool timeout() const { return status == Status::Timeout; }
};

/// Outcome of a minimum-k sweep at fixed (d, n).
struct MinKResult {
    enum class Status { Finite, Infinite, Unknown };

    Status status;
    int k = -1;                // valid iff Finite
    std::optional<Code> code;  // valid iff Finite
    int last_k_decided = -1;   // valid iff Unknown: largest k with a definite verdict

    bool finite() const { return status == Status::Finite; }
    bool infinite() const { return status == Status::Infinite; }
    bool unknown() const { return status == Status::Unknown; }
};

/// Decide whether a (d, k, n)-synchronization code exists.
///
/// Depth-first search over the code's cells with pair-coverage propagation:
/// every pair of distinct phases must be separated by a differing control-bit
/// pair inside the first phase's n-window. A pair with no remaining candidate
/// forces a backtrack; a pair with exactly one forces that candidate.
/// Sat results are re-verified against the definition before returning.
SolveResult find_code(const Params& params, const SolverOptions& opts = {});

/// Sweep k = 0, 1, 2, ... at fixed (d, n) until the first satisfiable k.
/// Returns Infinite once every k up to the Lemma bound 2^n - d is refuted,
/// Unknown if a decision instance times out first. Instances with d + k < n
/// are decided at window min(n, d + k); windows longer than the code add no
/// distinguishing power on a periodic stream.
MinKResult min_k(int d, int n, const SolverOptions& opts = {});

}  // namespace synccode
