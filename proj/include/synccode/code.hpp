#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace synccode {

/// Alphabet of a synchronization code. Zero and One are control bits
/// inserted by the code; Wild marks a slot filled by a payload bit.
enum class Symbol : std::uint8_t { Zero = 0, One = 1, Wild = 2 };

constexpr bool is_control(Symbol s) { return s != Symbol::Wild; }

constexpr char to_char(Symbol s) {
    switch (s) {
        case Symbol::Zero: return '0';
        case Symbol::One: return '1';
        default: return '_';
    }
}

std::optional<Symbol> symbol_from_char(char c);

/// Two symbols match if they are identical or at least one is a wildcard.
constexpr bool matches(Symbol a, Symbol b) {
    return a == b || a == Symbol::Wild || b == Symbol::Wild;
}

/// Element-wise match of two equal-length symbol sequences.
/// Throws std::invalid_argument on a length mismatch.
bool matches_seq(std::span<const Symbol> a, std::span<const Symbol> b);

/// Index arithmetic modulo a code length: values always stay in [0, modulus).
struct ModIndex {
    int value;
    int modulus;

    ModIndex(int v, int m);

    ModIndex plus(long long delta) const;   // value + delta (mod modulus)
    ModIndex minus(long long delta) const;  // value - delta (mod modulus)

    friend bool operator==(const ModIndex&, const ModIndex&) = default;
};

/// Reduce any integer into [0, modulus).
int mod_reduce(long long x, int modulus);

/// A cyclic sequence over {0, 1, _}. Immutable after construction.
class Code {
  public:
    explicit Code(std::vector<Symbol> symbols);

    /// Parse from the text form, e.g. "____00011____01011".
    static Code parse(std::string_view text);

    std::string str() const;

    int length() const { return static_cast<int>(symbols_.size()); }
    int data_bits() const { return wild_count_; }                     // d
    int control_bits() const { return length() - wild_count_; }       // k

    Symbol at(int i) const { return symbols_[static_cast<std::size_t>(i)]; }
    const std::vector<Symbol>& symbols() const { return symbols_; }

    friend bool operator==(const Code&, const Code&) = default;

  private:
    std::vector<Symbol> symbols_;
    int wild_count_;
};

/// Cyclic left rotation by i positions (i may be any integer).
Code rotate(const Code& code, long long i);

/// Swap Zero and One at every control position; wildcards unchanged.
Code complement(const Code& code);

/// Reverse the symbol order.
Code reversed(const Code& code);

/// A (d, k, n) parameter triple: d data bits and k control bits per block,
/// phase recoverable after at most n error-free bits.
struct Params {
    int d;
    int k;
    int n;

    /// Validates d >= 1, k >= 0, 1 <= n <= d + k; throws std::invalid_argument.
    Params(int d, int k, int n);

    int length() const { return d + k; }
};

}  // namespace synccode
