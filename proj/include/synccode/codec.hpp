#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "synccode/code.hpp"

namespace synccode {

/// A detected control-bit violation or impossible phase set in a stream.
class CorruptStreamError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A sequence of bits with MSB-first byte packing.
class BitBuffer {
  public:
    BitBuffer() = default;

    static BitBuffer from_bytes(std::span<const std::uint8_t> bytes);
    static BitBuffer from_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_count);
    /// Parse a string of '0'/'1' characters.
    static BitBuffer from_string(std::string_view text);

    /// Pack MSB-first; the last byte is zero-padded when size() % 8 != 0.
    std::vector<std::uint8_t> to_bytes() const;
    std::string to_string() const;

    void push_back(int bit) { bits_.push_back(static_cast<std::uint8_t>(bit & 1)); }
    int operator[](std::size_t i) const { return bits_[i]; }
    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    friend bool operator==(const BitBuffer&, const BitBuffer&) = default;

  private:
    std::vector<std::uint8_t> bits_;
};

/// The set of still-possible phases while reading a stream from an unknown
/// offset. Observing a bit eliminates every phase whose code symbol at the
/// corresponding position is a differing control bit. Never grows.
class PhaseSet {
  public:
    explicit PhaseSet(const Code& code);

    void observe(int bit);

    int count() const { return count_; }
    bool empty() const { return count_ == 0; }
    bool contains(int phase) const { return possible_[static_cast<std::size_t>(phase)] != 0; }
    /// The identified phase once the set is a singleton.
    std::optional<int> unique_phase() const;
    int bits_consumed() const { return consumed_; }

  private:
    std::vector<Symbol> symbols_;
    std::vector<std::uint8_t> possible_;
    int count_;
    int consumed_ = 0;
};

struct SyncResult {
    int phase;          // phase of the bit at start_offset
    int bits_consumed;  // always <= reliability(code)
};

struct DecodeStats {
    std::size_t leading_bits_skipped = 0;  // partial block before the first boundary
    std::size_t blocks = 0;
    std::size_t trailing_bits_ignored = 0;
};

/// Substitute successive payload bits into the code's wildcard slots,
/// block by block. Requires data.size() to be a multiple of d.
BitBuffer encode(const BitBuffer& data, const Code& code);

/// Identify the phase of the bit at start_offset by phase elimination.
/// Requires a code with finite reliability and an error-free stream.
SyncResult synchronize(const BitBuffer& stream, const Code& code, std::size_t start_offset);

/// Recover payload bits starting at the first block boundary at or after
/// start_offset; the partial leading block is discarded. Every control bit
/// encountered is checked and a mismatch raises CorruptStreamError.
BitBuffer decode(const BitBuffer& stream, const Code& code, std::size_t start_offset,
                 DecodeStats* stats = nullptr);

}  // namespace synccode
