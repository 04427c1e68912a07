#include "synccode/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "synccode/verifier.hpp"

namespace synccode {

namespace {

// Cell domain bits. A cell of the code is Wild, Zero or One; search state is
// the set of still-possible symbols per cell.
constexpr std::uint8_t DOM_W = 1;
constexpr std::uint8_t DOM_Z = 2;
constexpr std::uint8_t DOM_O = 4;
constexpr std::uint8_t DOM_CONTROL = DOM_Z | DOM_O;
constexpr std::uint8_t DOM_ALL = DOM_W | DOM_Z | DOM_O;

inline bool dom_singleton(std::uint8_t m) { return (m & (m - 1)) == 0; }

// A candidate can still become a differing control-bit pair.
inline bool slot_can_differ(std::uint8_t da, std::uint8_t db) {
    return ((da & DOM_Z) && (db & DOM_O)) || ((da & DOM_O) && (db & DOM_Z));
}

// Both cells decided as control bits with different values.
inline bool slot_is_covered(std::uint8_t da, std::uint8_t db) {
    return (da == DOM_Z && db == DOM_O) || (da == DOM_O && db == DOM_Z);
}

struct PairInfo {
    int viable;       // candidates that can still become a differing pair
    bool covered;     // some candidate is decided as a differing pair
    int slot_begin;   // index of the first candidate slot
    int slot_count;
};

struct PairLogEntry {
    std::int32_t pair;
    std::int32_t viable;
    bool covered;
};

struct CellLogEntry {
    std::int32_t cell;
    std::uint8_t old_dom;
};

class Engine {
  public:
    Engine(const Params& p, const SolverOptions& o)
        : L_(p.length()), d_(p.d), k_(p.k), n_(p.n), opts_(o) {}

    SolveResult run() {
        start_ = std::chrono::steady_clock::now();

        if (L_ == 1) {
            // Single phase: the definition is vacuous, the all-wildcard code works.
            Code trivial(std::vector<Symbol>{Symbol::Wild});
            return finish_sat(trivial);
        }
        if (k_ < 2) return finish(SolveResult::Status::Unsat);  // a mismatch needs two control bits

        build();

        if (opts_.symmetry_breaking) {
            // Rotate/complement/reverse any solution so it starts with control
            // bits 0, 1 and has no more ones than zeros.
            if (!set_dom(0, DOM_Z) || !set_dom(1, DOM_O))
                return finish(SolveResult::Status::Unsat);
        }
        if (!propagate()) return finish(SolveResult::Status::Unsat);

        return search();
    }

  private:
    // --- instance ---
    int L_, d_, k_, n_;
    SolverOptions opts_;
    int max_ones_ = 0;

    // --- state ---
    std::vector<std::uint8_t> dom_;
    std::vector<PairInfo> pairs_;
    std::vector<std::int32_t> slot_a_, slot_b_, slot_pair_;
    std::vector<std::uint8_t> slot_viable_;
    std::vector<std::vector<std::int32_t>> cell_slots_;

    int def_control_ = 0;  // cells that can no longer be Wild
    int def_wild_ = 0;     // cells fixed to Wild
    int ones_fixed_ = 0;   // cells fixed to One

    std::vector<std::int32_t> queue_;
    std::size_t qhead_ = 0;
    std::vector<std::uint8_t> in_queue_;

    std::vector<CellLogEntry> cell_log_;
    std::vector<std::int32_t> slot_log_;
    std::vector<PairLogEntry> pair_log_;

    struct Frame {
        std::size_t cell_mark, slot_mark, pair_mark;
        std::int32_t cell;
        std::uint8_t values[3];
        int num_values;
        int next;
    };
    std::vector<Frame> stack_;

    SearchStats stats_;
    std::chrono::steady_clock::time_point start_;

    // --- setup ---
    void build() {
        dom_.assign(L_, DOM_ALL);
        in_queue_.assign(L_, 0);
        cell_slots_.assign(L_, {});
        max_ones_ = opts_.symmetry_breaking ? k_ / 2 : k_;

        pairs_.reserve(static_cast<std::size_t>(L_) * (L_ - 1) / 2);
        for (int i = 0; i < L_; ++i) {
            for (int j = i + 1; j < L_; ++j) {
                PairInfo pi;
                pi.viable = n_;
                pi.covered = false;
                pi.slot_begin = static_cast<int>(slot_a_.size());
                pi.slot_count = n_;
                const int pair_id = static_cast<int>(pairs_.size());
                for (int m = 0; m < n_; ++m) {
                    const int a = mod_reduce(i + m, L_);
                    const int b = mod_reduce(j + m, L_);
                    const int s = static_cast<int>(slot_a_.size());
                    slot_a_.push_back(a);
                    slot_b_.push_back(b);
                    slot_pair_.push_back(pair_id);
                    cell_slots_[a].push_back(s);
                    cell_slots_[b].push_back(s);
                }
                pairs_.push_back(pi);
            }
        }
        slot_viable_.assign(slot_a_.size(), 1);
    }

    // --- propagation ---
    bool set_dom(int c, std::uint8_t mask) {
        const std::uint8_t od = dom_[c];
        const std::uint8_t nd = od & mask;
        if (nd == od) return true;
        if (nd == 0) return false;
        cell_log_.push_back({c, od});
        dom_[c] = nd;
        ++stats_.propagations;
        if ((od & DOM_W) && !(nd & DOM_W) && ++def_control_ > k_) return false;
        if (od != DOM_W && nd == DOM_W && ++def_wild_ > d_) return false;
        if (od != DOM_O && nd == DOM_O && ++ones_fixed_ > max_ones_) return false;
        if (!in_queue_[c]) {
            in_queue_[c] = 1;
            queue_.push_back(c);
        }
        return true;
    }

    bool force_unit(int pair_id) {
        const PairInfo& pi = pairs_[pair_id];
        for (int s = pi.slot_begin; s < pi.slot_begin + pi.slot_count; ++s) {
            if (!slot_viable_[s]) continue;
            const int a = slot_a_[s], b = slot_b_[s];
            // Last remaining candidate: both cells are control bits and differ.
            if (!set_dom(a, DOM_CONTROL) || !set_dom(b, DOM_CONTROL)) return false;
            if (dom_[a] == DOM_Z) return set_dom(b, DOM_O);
            if (dom_[a] == DOM_O) return set_dom(b, DOM_Z);
            if (dom_[b] == DOM_Z) return set_dom(a, DOM_O);
            if (dom_[b] == DOM_O) return set_dom(a, DOM_Z);
            return true;
        }
        return false;  // no viable candidate after all
    }

    bool update_cell(int c) {
        for (const int s : cell_slots_[c]) {
            if (!slot_viable_[s]) continue;
            const int pair_id = slot_pair_[s];
            PairInfo& pi = pairs_[pair_id];
            if (pi.covered) continue;
            const std::uint8_t da = dom_[slot_a_[s]];
            const std::uint8_t db = dom_[slot_b_[s]];
            if (slot_can_differ(da, db)) {
                if (slot_is_covered(da, db)) {
                    pair_log_.push_back({pair_id, pi.viable, pi.covered});
                    pi.covered = true;
                }
                continue;
            }
            slot_viable_[s] = 0;
            slot_log_.push_back(s);
            pair_log_.push_back({pair_id, pi.viable, pi.covered});
            if (--pi.viable == 0) return false;
            if (pi.viable == 1 && !force_unit(pair_id)) return false;
        }
        return true;
    }

    // Exactly k control cells and d wild cells; at most max_ones_ ones.
    bool cardinality_closure(bool& changed) {
        if (def_control_ == k_) {
            for (int c = 0; c < L_; ++c) {
                if ((dom_[c] & DOM_W) && dom_[c] != DOM_W) {
                    if (!set_dom(c, DOM_W)) return false;
                    changed = true;
                }
            }
        }
        if (def_wild_ == d_) {
            for (int c = 0; c < L_; ++c) {
                if ((dom_[c] & DOM_W) && dom_[c] != DOM_W) {
                    if (!set_dom(c, DOM_CONTROL)) return false;
                    changed = true;
                }
            }
        }
        if (ones_fixed_ == max_ones_) {
            for (int c = 0; c < L_; ++c) {
                if ((dom_[c] & DOM_O) && dom_[c] != DOM_O) {
                    if (!set_dom(c, static_cast<std::uint8_t>(~DOM_O))) return false;
                    changed = true;
                }
            }
        }
        return true;
    }

    bool propagate() {
        for (;;) {
            while (qhead_ < queue_.size()) {
                const int c = queue_[qhead_++];
                in_queue_[c] = 0;
                if (!update_cell(c)) return false;
            }
            bool changed = false;
            if (!cardinality_closure(changed)) return false;
            if (!changed && qhead_ == queue_.size()) return true;
        }
    }

    void clear_queue() {
        for (const int c : queue_) in_queue_[c] = 0;
        queue_.clear();
        qhead_ = 0;
    }

    void undo_to(std::size_t cell_mark, std::size_t slot_mark, std::size_t pair_mark) {
        while (cell_log_.size() > cell_mark) {
            const auto [c, od] = cell_log_.back();
            cell_log_.pop_back();
            const std::uint8_t nd = dom_[c];
            if ((od & DOM_W) && !(nd & DOM_W)) --def_control_;
            if (od != DOM_W && nd == DOM_W) --def_wild_;
            if (od != DOM_O && nd == DOM_O) --ones_fixed_;
            dom_[c] = od;
        }
        while (slot_log_.size() > slot_mark) {
            slot_viable_[slot_log_.back()] = 1;
            slot_log_.pop_back();
        }
        while (pair_log_.size() > pair_mark) {
            const auto e = pair_log_.back();
            pair_log_.pop_back();
            pairs_[e.pair].viable = e.viable;
            pairs_[e.pair].covered = e.covered;
        }
        clear_queue();
    }

    // --- branching ---
    // Fail-first: the open pair with the fewest remaining candidates, ties
    // broken by pair order (lexicographic in (i, j)), then window order.
    int choose_cell() {
        int best_pair = -1;
        int best_viable = std::numeric_limits<int>::max();
        for (std::size_t q = 0; q < pairs_.size(); ++q) {
            const PairInfo& pi = pairs_[q];
            if (pi.covered) continue;
            if (pi.viable < best_viable) {
                best_viable = pi.viable;
                best_pair = static_cast<int>(q);
                if (best_viable == 1) break;
            }
        }
        if (best_pair >= 0) {
            const PairInfo& pi = pairs_[best_pair];
            for (int s = pi.slot_begin; s < pi.slot_begin + pi.slot_count; ++s) {
                if (!slot_viable_[s]) continue;
                if (!dom_singleton(dom_[slot_a_[s]])) return slot_a_[s];
                if (!dom_singleton(dom_[slot_b_[s]])) return slot_b_[s];
            }
            throw std::logic_error("solver: open pair with no branchable candidate");
        }
        for (int c = 0; c < L_; ++c)
            if (!dom_singleton(dom_[c])) return c;
        return -1;  // full assignment
    }

    // --- search ---
    SolveResult search() {
        bool conflict = false;
        for (;;) {
            if (conflict) {
                ++stats_.conflicts;
                conflict = false;
                for (;;) {
                    if (stack_.empty()) return finish(SolveResult::Status::Unsat);
                    Frame& f = stack_.back();
                    undo_to(f.cell_mark, f.slot_mark, f.pair_mark);
                    if (f.next < f.num_values) {
                        const std::uint8_t mask = f.values[f.next++];
                        if (!apply_decision(f.cell, mask)) conflict = true;
                        break;
                    }
                    stack_.pop_back();
                }
                if (auto stop = check_limits()) return *stop;
                continue;
            }
            const int cell = choose_cell();
            if (cell < 0) return finish_sat(extract_code());
            Frame f;
            f.cell_mark = cell_log_.size();
            f.slot_mark = slot_log_.size();
            f.pair_mark = pair_log_.size();
            f.cell = cell;
            f.num_values = 0;
            f.next = 0;
            for (const std::uint8_t v : {DOM_Z, DOM_O, DOM_W})
                if (dom_[cell] & v) f.values[f.num_values++] = v;
            stack_.push_back(f);
            if (!apply_decision(cell, stack_.back().values[stack_.back().next++]))
                conflict = true;
            if (auto stop = check_limits()) return *stop;
        }
    }

    bool apply_decision(int cell, std::uint8_t mask) {
        ++stats_.nodes;
        return set_dom(cell, mask) && propagate();
    }

    std::optional<SolveResult> check_limits() {
        if (opts_.node_limit && stats_.nodes >= opts_.node_limit)
            return finish(SolveResult::Status::Timeout);
        if ((stats_.nodes & 0x3ff) == 0 && elapsed() > opts_.timeout_seconds)
            return finish(SolveResult::Status::Timeout);
        return std::nullopt;
    }

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    Code extract_code() const {
        std::vector<Symbol> syms(static_cast<std::size_t>(L_));
        for (int c = 0; c < L_; ++c) {
            switch (dom_[c]) {
                case DOM_W: syms[c] = Symbol::Wild; break;
                case DOM_Z: syms[c] = Symbol::Zero; break;
                case DOM_O: syms[c] = Symbol::One; break;
                default: throw std::logic_error("solver: unassigned cell at solution");
            }
        }
        return Code(std::move(syms));
    }

    SolveResult finish(SolveResult::Status st) {
        stats_.seconds = elapsed();
        return {st, std::nullopt, stats_};
    }

    SolveResult finish_sat(const Code& code) {
        stats_.seconds = elapsed();
        if (code.data_bits() != d_ || code.control_bits() != k_ || !is_sync_code(code, n_))
            throw std::logic_error("solver: produced code failed re-verification: " + code.str());
        return {SolveResult::Status::Sat, code, stats_};
    }
};

}  // namespace

SolveResult find_code(const Params& params, const SolverOptions& opts) {
    Engine engine(params, opts);
    return engine.run();
}

MinKResult min_k(int d, int n, const SolverOptions& opts) {
    if (d < 1 || n < 1) throw std::invalid_argument("min_k: need d >= 1, n >= 1");
    const std::int64_t bound = lemma1_bound(d, n);
    for (std::int64_t k = 0; k <= bound; ++k) {
        // Windows longer than the code are equivalent to the full-length window.
        const int nn = static_cast<int>(std::min<std::int64_t>(n, d + k));
        const auto r = find_code(Params(d, static_cast<int>(k), nn), opts);
        if (r.sat()) {
            MinKResult out{MinKResult::Status::Finite};
            out.k = static_cast<int>(k);
            out.code = r.code;
            return out;
        }
        if (r.timeout()) {
            MinKResult out{MinKResult::Status::Unknown};
            out.last_k_decided = static_cast<int>(k) - 1;
            return out;
        }
    }
    return MinKResult{MinKResult::Status::Infinite};
}

}  // namespace synccode
