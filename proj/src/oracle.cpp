#include "synccode/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <vector>

#include "synccode/verifier.hpp"

namespace synccode {

namespace {

// C(L, k) * 2^k, saturating.
std::uint64_t candidate_count(int L, int k) {
    long double c = 1.0L;
    for (int i = 1; i <= k; ++i) c = c * (L - k + i) / i;
    for (int i = 0; i < k; ++i) c *= 2.0L;
    if (c > 1e18L) return static_cast<std::uint64_t>(2e18);
    return static_cast<std::uint64_t>(c + 0.5L);
}

bool next_combination(std::vector<int>& pos, int L) {
    const int k = static_cast<int>(pos.size());
    for (int i = k - 1; i >= 0; --i) {
        if (pos[i] < L - k + i) {
            ++pos[i];
            for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

SolveResult oracle_exists(const Params& params, const OracleBudget& budget) {
    const int L = params.length();
    const int k = params.k;
    if (L > budget.max_length)
        throw std::invalid_argument("oracle_exists: d + k exceeds the oracle's max_length");

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    SearchStats stats;
    if (candidate_count(L, k) > budget.max_enumerations) {
        stats.seconds = elapsed();
        return {SolveResult::Status::Timeout, std::nullopt, stats};
    }

    std::vector<int> pos(k);
    for (int i = 0; i < k; ++i) pos[i] = i;
    std::vector<Symbol> syms(static_cast<std::size_t>(L));

    do {
        const std::uint64_t values = std::uint64_t{1} << k;
        for (std::uint64_t v = 0; v < values; ++v) {
            ++stats.nodes;
            std::fill(syms.begin(), syms.end(), Symbol::Wild);
            for (int i = 0; i < k; ++i)
                syms[pos[i]] = ((v >> (k - 1 - i)) & 1) ? Symbol::One : Symbol::Zero;
            Code code(syms);
            if (is_sync_code(code, params.n)) {
                stats.seconds = elapsed();
                return {SolveResult::Status::Sat, code, stats};
            }
        }
    } while (next_combination(pos, L));

    stats.seconds = elapsed();
    return {SolveResult::Status::Unsat, std::nullopt, stats};
}

MinKResult oracle_min_k(int d, int n, const OracleBudget& budget) {
    if (d < 1 || n < 1) throw std::invalid_argument("oracle_min_k: need d >= 1, n >= 1");
    const std::int64_t bound = lemma1_bound(d, n);
    for (std::int64_t k = 0; k <= bound; ++k) {
        const int L = d + static_cast<int>(k);
        const int nn = static_cast<int>(std::min<std::int64_t>(n, L));
        if (L > budget.max_length || candidate_count(L, static_cast<int>(k)) > budget.max_enumerations) {
            MinKResult out{MinKResult::Status::Unknown};
            out.last_k_decided = static_cast<int>(k) - 1;
            return out;
        }
        const auto r = oracle_exists(Params(d, static_cast<int>(k), nn), budget);
        if (r.sat()) {
            MinKResult out{MinKResult::Status::Finite};
            out.k = static_cast<int>(k);
            out.code = r.code;
            return out;
        }
    }
    return MinKResult{MinKResult::Status::Infinite};
}

}  // namespace synccode
