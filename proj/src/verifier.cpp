#include "synccode/verifier.hpp"

#include <limits>
#include <stdexcept>

namespace synccode {

MismatchWitness first_mismatch(const Code& code, int i, int j) {
    const int L = code.length();
    if (i < 0 || i >= L || j < 0 || j >= L)
        throw std::invalid_argument("first_mismatch: phase out of range");
    // Positions repeat with period L, so a pair that agrees on the first L
    // columns agrees everywhere.
    for (int m = 0; m < L; ++m) {
        const Symbol a = code.at(mod_reduce(i + m, L));
        const Symbol b = code.at(mod_reduce(j + m, L));
        if (is_control(a) && is_control(b) && a != b) return {i, j, m};
    }
    return {i, j, std::nullopt};
}

bool is_sync_code(const Code& code, int n) {
    const int L = code.length();
    if (n < 1 || n > L)
        throw std::invalid_argument("is_sync_code: n must satisfy 1 <= n <= length");
    if (L >= 2 && code.control_bits() < 2) return false;  // a mismatch needs two control bits
    for (int i = 0; i < L; ++i) {
        for (int j = i + 1; j < L; ++j) {
            const auto w = first_mismatch(code, i, j);
            if (!w.column || *w.column >= n) return false;
        }
    }
    return true;
}

Reliability reliability(const Code& code) {
    const int L = code.length();
    if (L == 1) return 1;  // single phase, nothing to distinguish
    if (code.control_bits() < 2) return std::nullopt;
    int worst = -1;
    for (int i = 0; i < L; ++i) {
        for (int j = i + 1; j < L; ++j) {
            const auto w = first_mismatch(code, i, j);
            if (!w.column) return std::nullopt;
            if (*w.column > worst) worst = *w.column;
        }
    }
    return worst + 1;
}

std::int64_t lemma1_bound(int d, int n) {
    if (d < 1 || n < 1) throw std::invalid_argument("lemma1_bound: need d >= 1, n >= 1");
    if (n >= 63) return std::numeric_limits<std::int64_t>::max();
    return (std::int64_t{1} << n) - d;
}

}  // namespace synccode
