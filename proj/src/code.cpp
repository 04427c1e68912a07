#include "synccode/code.hpp"

#include <algorithm>
#include <stdexcept>

namespace synccode {

std::optional<Symbol> symbol_from_char(char c) {
    switch (c) {
        case '0': return Symbol::Zero;
        case '1': return Symbol::One;
        case '_': return Symbol::Wild;
        default: return std::nullopt;
    }
}

bool matches_seq(std::span<const Symbol> a, std::span<const Symbol> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("matches_seq: sequences differ in length");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!matches(a[i], b[i])) return false;
    return true;
}

int mod_reduce(long long x, int modulus) {
    long long r = x % modulus;
    if (r < 0) r += modulus;
    return static_cast<int>(r);
}

ModIndex::ModIndex(int v, int m) : value(0), modulus(m) {
    if (m < 1) throw std::invalid_argument("ModIndex: modulus must be positive");
    value = mod_reduce(v, m);
}

ModIndex ModIndex::plus(long long delta) const {
    return ModIndex(mod_reduce(value + delta, modulus), modulus);
}

ModIndex ModIndex::minus(long long delta) const {
    return ModIndex(mod_reduce(value - delta, modulus), modulus);
}

Code::Code(std::vector<Symbol> symbols) : symbols_(std::move(symbols)), wild_count_(0) {
    if (symbols_.empty()) throw std::invalid_argument("Code: must have length >= 1");
    wild_count_ = static_cast<int>(
        std::count(symbols_.begin(), symbols_.end(), Symbol::Wild));
}

Code Code::parse(std::string_view text) {
    std::vector<Symbol> syms;
    syms.reserve(text.size());
    for (char c : text) {
        auto s = symbol_from_char(c);
        if (!s)
            throw std::invalid_argument(std::string("Code::parse: invalid symbol '") + c +
                                        "' (expected 0, 1 or _)");
        syms.push_back(*s);
    }
    return Code(std::move(syms));
}

std::string Code::str() const {
    std::string out;
    out.reserve(symbols_.size());
    for (Symbol s : symbols_) out.push_back(to_char(s));
    return out;
}

Code rotate(const Code& code, long long i) {
    const int L = code.length();
    const int shift = mod_reduce(i, L);
    std::vector<Symbol> out(static_cast<std::size_t>(L));
    for (int p = 0; p < L; ++p)
        out[static_cast<std::size_t>(p)] = code.at(mod_reduce(p + shift, L));
    return Code(std::move(out));
}

Code complement(const Code& code) {
    std::vector<Symbol> out = code.symbols();
    for (Symbol& s : out) {
        if (s == Symbol::Zero)
            s = Symbol::One;
        else if (s == Symbol::One)
            s = Symbol::Zero;
    }
    return Code(std::move(out));
}

Code reversed(const Code& code) {
    std::vector<Symbol> out = code.symbols();
    std::reverse(out.begin(), out.end());
    return Code(std::move(out));
}

Params::Params(int d_, int k_, int n_) : d(d_), k(k_), n(n_) {
    if (d < 1) throw std::invalid_argument("Params: d must be >= 1");
    if (k < 0) throw std::invalid_argument("Params: k must be >= 0");
    if (n < 1 || n > d + k)
        throw std::invalid_argument("Params: n must satisfy 1 <= n <= d + k");
}

}  // namespace synccode
