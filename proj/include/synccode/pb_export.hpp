#pragma once

#include <string>
#include <string_view>

#include "synccode/code.hpp"

namespace synccode {

/// Deterministic 1-based numbering of the pseudo-Boolean model variables.
///
/// K_i      : cell i is a control bit               -> 1 + i
/// V_i      : value of cell i (0 at data cells)     -> L + 1 + i
/// Y[i][g]  : cells i and i+g (mod L) are differing
///            control bits, 1 <= g < L              -> 2L + 1 + i*(L-1) + (g-1)
///
/// Cardinality-counter auxiliaries used by the CNF encoding are numbered
/// after base_vars(). The map is reconstructible from the header comments
/// of any emitted document.
struct VariableMap {
    int d = 0;
    int k = 0;
    int n = 0;
    bool symmetry = false;

    int length() const { return d + k; }
    int k_var(int i) const { return 1 + i; }
    int v_var(int i) const { return length() + 1 + i; }
    int y_var(int i, int g) const { return 2 * length() + 1 + i * (length() - 1) + (g - 1); }
    int base_vars() const { return 2 * length() + length() * (length() - 1); }

    static VariableMap for_params(const Params& params, bool symmetry);

    /// Recover the map from an emitted OPB or CNF document's comment header.
    /// Throws std::runtime_error if the header is missing or malformed.
    static VariableMap parse_header(std::string_view document);
};

/// Pseudo-Boolean decision instance in OPB competition syntax. Byte-identical
/// output for identical inputs. The symmetry block (first two cells fixed to
/// control bits 0, 1 and at most floor(k/2) ones) is only meaningful for
/// k >= 2 and is omitted otherwise.
std::string emit_opb(const Params& params, bool symmetry);

/// Equisatisfiable DIMACS CNF: clause-shaped constraints carry over directly,
/// the two cardinality constraints use a sequential-counter encoding.
std::string emit_cnf(const Params& params, bool symmetry);

/// Reconstruct the code from a solver's output: "v" value lines holding
/// DIMACS literals or OPB x-names. The code is re-verified before being
/// returned; any inconsistency (truncated assignment, wrong control-bit
/// count, failed verification) throws std::runtime_error.
Code import_solution(std::string_view document, const VariableMap& map);

}  // namespace synccode
