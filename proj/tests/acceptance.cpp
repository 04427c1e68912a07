// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Budgets and expected values are pinned in code; a red line means
// the build does not meet its contract.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "support/mini_dpll.hpp"
#include "support/opb_eval.hpp"
#include "support/pb_project.hpp"
#include "synccode/catalog.hpp"
#include "synccode/codec.hpp"
#include "synccode/oracle.hpp"
#include "synccode/pb_export.hpp"
#include "synccode/solver.hpp"
#include "synccode/verifier.hpp"

using namespace synccode;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double s() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

int failures = 0;

void report(int id, bool pass, double seconds, const std::string& detail) {
    std::printf("[%d] %s (%7.2fs)  %s\n", id, pass ? "PASS" : "FAIL", seconds, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string seed_path() { return std::string(SYNCCODE_DATA_DIR) + "/catalog_seed.txt"; }

// --- 1: published 18-symbol code ---
void criterion1() {
    Timer t;
    const Code c = Code::parse("____00011____01011");
    const bool ok = is_sync_code(c, 9) && !is_sync_code(c, 8) && reliability(c) == Reliability{9};
    const double secs = t.s();
    report(1, ok && secs < 1.0, secs,
           "published code verifies as (8,10,9) and reliability is exactly 9, not 8");
}

// --- 2: twelve catalogued schemes ---
void criterion2() {
    Timer t;
    bool ok = false;
    std::string detail = "seed catalog: 12 rows load, 7 verify at their stated n, 5 are soft";
    try {
        const auto entries = load_catalog_file(seed_path());  // load re-verifies each row
        int soft = 0, reliable = 0;
        for (const auto& e : entries) (e.n ? reliable : soft)++;
        ok = entries.size() == 12 && reliable == 7 && soft == 5;
    } catch (const std::exception& e) {
        detail = std::string("seed catalog failed to load: ") + e.what();
    }
    const double secs = t.s();
    report(2, ok && secs < 1.0, secs, detail);
}

// --- 3: minimum-k grid for d = 2..4 ---
void criterion3() {
    Timer t;
    struct Cell {
        int d, n, expect;  // expect -1 = INF
    };
    const std::vector<Cell> cells = {
        {2, 2, -1}, {2, 3, -1}, {2, 4, 6},  {2, 5, 3},  {2, 6, 3},  {2, 7, 3},  {2, 8, 3},
        {2, 9, 3},  {2, 10, 3}, {2, 11, 3}, {2, 12, 3}, {2, 13, 3}, {3, 5, 12}, {3, 6, 6},
        {3, 7, 4},  {3, 8, 4},  {3, 9, 4},  {3, 10, 4}, {3, 11, 4}, {3, 12, 4}, {3, 13, 4},
        {4, 2, -1}, {4, 3, -1}, {4, 4, -1}, {4, 5, -1}, {4, 6, 8},  {4, 7, 7},  {4, 8, 4}};
    bool ok = true;
    std::string bad;
    for (const auto& cell : cells) {
        Timer cell_timer;
        SolverOptions opts;
        opts.timeout_seconds = 300.0;
        const auto r = min_k(cell.d, cell.n, opts);
        const double cell_secs = cell_timer.s();
        const bool cell_ok =
            cell_secs < 300.0 && ((cell.expect < 0 && r.infinite()) ||
                                  (cell.expect >= 0 && r.finite() && r.k == cell.expect));
        if (!cell_ok) {
            ok = false;
            bad += " (d=" + std::to_string(cell.d) + ",n=" + std::to_string(cell.n) + ")";
        }
    }
    report(3, ok, t.s(),
           ok ? "table sweep d=2..4 matches all 28 published cells within 300 s each"
              : "table sweep mismatch at:" + bad);
}

// --- 4: d = n = 8 milestone ---
void criterion4() {
    Timer t;
    SolverOptions opts;
    opts.timeout_seconds = 1800.0;
    const auto sat = find_code(Params(8, 15, 8), opts);
    const auto unsat = find_code(Params(8, 14, 8), opts);
    std::string detail;
    bool ok = true;
    if (sat.sat() && unsat.unsat()) {
        detail = "native engine: (8,15,8) Sat and (8,14,8) Unsat within budget";
    } else {
        ok = false;
        detail =
            "native engine missed the verdicts within 30 min; route the emitted CNF through an "
            "external CDCL solver (synccode export/import) to settle them";
    }
    report(4, ok, t.s(), detail);
}

// --- 5: solver/oracle agreement for d + k <= 12 ---
void criterion5() {
    Timer t;
    bool ok = true;
    std::string bad;
    long instances = 0;
    for (int L = 2; L <= 12 && ok; ++L) {
        for (int d = 1; d <= L && ok; ++d) {
            const int k = L - d;
            for (int n = 1; n <= L && ok; ++n) {
                const Params p(d, k, n);
                const bool expected = oracle_exists(p).sat();
                for (const bool sym : {true, false}) {
                    SolverOptions opts;
                    opts.symmetry_breaking = sym;
                    const auto r = find_code(p, opts);
                    ++instances;
                    if (r.timeout() || r.sat() != expected) {
                        ok = false;
                        bad = " first disagreement at d=" + std::to_string(d) +
                              " k=" + std::to_string(k) + " n=" + std::to_string(n) +
                              (sym ? " (breaking on)" : " (breaking off)");
                        break;
                    }
                }
            }
        }
    }
    const double secs = t.s();
    report(5, ok && secs < 1800.0, secs,
           "solver verdict = oracle verdict on " + std::to_string(instances) +
               " instances, breaking on and off" + bad);
}

// --- 6: emitted PB constraints accept exactly the oracle's codes ---
void criterion6() {
    Timer t;
    bool ok = true;
    std::string bad;
    long checked = 0;
    for (int L = 2; L <= 10 && ok; ++L) {
        for (int d = 1; d <= L && ok; ++d) {
            const int k = L - d;
            const auto candidates = pbtest::all_candidates(d, k);
            for (int n = 1; n <= L && ok; ++n) {
                const Params p(d, k, n);
                const auto inst = opbtest::parse_opb(emit_opb(p, false));
                const auto map = VariableMap::for_params(p, false);
                for (const auto& code : candidates) {
                    const bool pb = opbtest::satisfies_all(inst, pbtest::pb_assignment(code, map));
                    const bool oracle = is_sync_code(code, n);
                    ++checked;
                    if (pb != oracle) {
                        ok = false;
                        bad = " first mismatch: " + code.str() + " at n=" + std::to_string(n);
                        break;
                    }
                }
            }
        }
    }
    report(6, ok, t.s(),
           "PB solution set equals the oracle set on " + std::to_string(checked) +
               " candidate evaluations (d+k <= 10)" + bad);
}

// --- 7: codec round trips and tightness ---
void criterion7() {
    Timer t;
    bool ok = true;
    std::string detail;
    try {
        const auto entries = load_catalog_file(seed_path());
        std::vector<Code> reliable;
        for (const auto& e : entries)
            if (e.n) reliable.push_back(e.code);

        std::mt19937 rng(2026);
        std::uniform_int_distribution<int> block_count(1, 6);
        std::uniform_int_distribution<int> bit(0, 1);
        for (int trial = 0; trial < 10000 && ok; ++trial) {
            const Code& c = reliable[static_cast<std::size_t>(trial) % reliable.size()];
            BitBuffer data;
            const int bits = block_count(rng) * c.data_bits();
            for (int i = 0; i < bits; ++i) data.push_back(bit(rng));
            if (!(decode(encode(data, c), c, 0) == data)) {
                ok = false;
                detail = " round-trip failed for " + c.str();
            }
        }

        // exhaustive worst case: max bits consumed over all phases and all
        // window payloads must equal the reliability exactly
        for (const auto& e : entries) {
            if (!e.n || e.code.length() > 20 || !ok) continue;
            const Code& c = e.code;
            const int L = c.length();
            const int n = *e.n;
            int worst = 0;
            for (int phase = 0; phase < L && ok; ++phase) {
                std::vector<int> data_cols;
                for (int m = 0; m < n; ++m)
                    if (c.at(mod_reduce(phase + m, L)) == Symbol::Wild) data_cols.push_back(m);
                for (std::uint64_t fill = 0; fill < (std::uint64_t{1} << data_cols.size());
                     ++fill) {
                    PhaseSet ps(c);
                    int consumed = 0;
                    while (ps.count() > 1 && consumed < n) {
                        const Symbol s = c.at(mod_reduce(phase + consumed, L));
                        int b;
                        if (s == Symbol::Wild) {
                            const auto it =
                                std::find(data_cols.begin(), data_cols.end(), consumed);
                            b = static_cast<int>((fill >> (it - data_cols.begin())) & 1);
                        } else {
                            b = s == Symbol::One;
                        }
                        ps.observe(b);
                        ++consumed;
                    }
                    if (ps.unique_phase() != phase) {
                        ok = false;
                        detail = " phase recovery failed for " + c.str();
                        break;
                    }
                    worst = std::max(worst, consumed);
                }
            }
            if (ok && worst != n) {
                ok = false;
                detail = " worst-case bits for " + c.str() + " is " + std::to_string(worst) +
                         ", reliability says " + std::to_string(n);
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string(" exception: ") + e.what();
    }
    const double secs = t.s();
    report(7, ok && secs < 120.0, secs,
           "10000 randomized round-trips and exhaustive phase-recovery tightness (L <= 20)" +
               detail);
}

// --- 8: symmetry closure over the catalog ---
void criterion8() {
    Timer t;
    bool ok = true;
    std::string detail = "rotations, complement and reversal of every catalogued code keep its n";
    try {
        const auto entries = load_catalog_file(seed_path());
        for (const auto& e : entries) {
            for (int i = 0; i < e.code.length() && ok; ++i)
                ok = reliability(rotate(e.code, i)) == e.n;
            ok = ok && reliability(complement(e.code)) == e.n &&
                 reliability(reversed(e.code)) == e.n;
            if (!ok) {
                detail = " closure violated for " + e.code.str();
                break;
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string(" exception: ") + e.what();
    }
    const double secs = t.s();
    report(8, ok && secs < 10.0, secs, detail);
}

// --- 9: large-block instances are export-only at desk scale ---
void criterion9() {
    Timer t;
    bool ok = true;
    std::string detail;
    try {
        for (const auto [d, k, n] : {std::tuple{16, 11, 16}, {32, 14, 32}}) {
            const Params p(d, k, n);
            const int L = p.length();
            const auto inst = opbtest::parse_opb(emit_opb(p, true));  // lints every line
            const int want_vars = 2 * L + L * (L - 1);
            const int want_cons = 1 + 4 * L * (L - 1) + L * (L - 1) / 2 + L + 5;
            if (inst.declared_vars != want_vars || inst.declared_constraints != want_cons) {
                ok = false;
                detail = " OPB counts off for d=" + std::to_string(d);
                break;
            }
            const auto cnf = cnftest::parse_dimacs(emit_cnf(p, true));  // lints every clause
            if (cnf.num_vars < want_vars) {
                ok = false;
                detail = " CNF variable count below the base model for d=" + std::to_string(d);
                break;
            }
        }

        // import path: a machine-found 27-symbol witness, re-verified here,
        // presented as external solver output
        if (ok) {
            const Code witness = Code::parse("01_0__1_0__01_0__1_1____0__");
            if (witness.data_bits() != 16 || witness.control_bits() != 11 ||
                !is_sync_code(witness, 16)) {
                ok = false;
                detail = " stored (16,11,16) witness failed verification";
            } else {
                const auto map = VariableMap::for_params(Params(16, 11, 16), true);
                const auto a = pbtest::pb_assignment(witness, map);
                std::string doc = "s SATISFIABLE\nv";
                for (int v = 1; v <= map.base_vars(); ++v)
                    doc += (a[static_cast<std::size_t>(v)] ? " x" : " -x") + std::to_string(v);
                doc += "\n";
                ok = import_solution(doc, map) == witness;
                if (!ok) detail = " import of the (16,11,16) witness failed";
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string(" exception: ") + e.what();
    }
    report(9, ok, t.s(),
           std::string("well-formed OPB/CNF for (16,11,16) and (32,14,32); witness import "
                       "verified. Full d=n=16/32/64 searches and the multi-day external-solver "
                       "comparisons are not reproduced at desk scale") +
               detail);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures;
}
