#include "synccode/codec.hpp"

#include "synccode/verifier.hpp"

namespace synccode {

BitBuffer BitBuffer::from_bytes(std::span<const std::uint8_t> bytes) {
    return from_bytes(bytes, bytes.size() * 8);
}

BitBuffer BitBuffer::from_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_count) {
    if (bit_count > bytes.size() * 8)
        throw std::invalid_argument("BitBuffer::from_bytes: bit_count exceeds input");
    BitBuffer out;
    out.bits_.reserve(bit_count);
    for (std::size_t i = 0; i < bit_count; ++i)
        out.bits_.push_back((bytes[i / 8] >> (7 - i % 8)) & 1);
    return out;
}

BitBuffer BitBuffer::from_string(std::string_view text) {
    BitBuffer out;
    out.bits_.reserve(text.size());
    for (const char c : text) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("BitBuffer::from_string: expected only '0' and '1'");
        out.bits_.push_back(c == '1');
    }
    return out;
}

std::vector<std::uint8_t> BitBuffer::to_bytes() const {
    std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(1u << (7 - i % 8));
    return out;
}

std::string BitBuffer::to_string() const {
    std::string out;
    out.reserve(bits_.size());
    for (const auto b : bits_) out.push_back(b ? '1' : '0');
    return out;
}

PhaseSet::PhaseSet(const Code& code)
    : symbols_(code.symbols()),
      possible_(code.symbols().size(), 1),
      count_(code.length()) {}

void PhaseSet::observe(int bit) {
    const int L = static_cast<int>(symbols_.size());
    const Symbol seen = bit ? Symbol::One : Symbol::Zero;
    for (int phase = 0; phase < L; ++phase) {
        if (!possible_[static_cast<std::size_t>(phase)]) continue;
        const Symbol s = symbols_[static_cast<std::size_t>(mod_reduce(phase + consumed_, L))];
        if (is_control(s) && s != seen) {
            possible_[static_cast<std::size_t>(phase)] = 0;
            --count_;
        }
    }
    ++consumed_;
}

std::optional<int> PhaseSet::unique_phase() const {
    if (count_ != 1) return std::nullopt;
    for (std::size_t p = 0; p < possible_.size(); ++p)
        if (possible_[p]) return static_cast<int>(p);
    return std::nullopt;
}

BitBuffer encode(const BitBuffer& data, const Code& code) {
    const int d = code.data_bits();
    if (data.size() % static_cast<std::size_t>(d) != 0)
        throw std::invalid_argument("encode: data length must be a multiple of d=" +
                                    std::to_string(d));
    BitBuffer out;
    std::size_t next = 0;
    const std::size_t blocks = data.size() / static_cast<std::size_t>(d);
    for (std::size_t b = 0; b < blocks; ++b) {
        for (int p = 0; p < code.length(); ++p) {
            const Symbol s = code.at(p);
            if (s == Symbol::Wild)
                out.push_back(data[next++]);
            else
                out.push_back(s == Symbol::One);
        }
    }
    return out;
}

SyncResult synchronize(const BitBuffer& stream, const Code& code, std::size_t start_offset) {
    const auto rel = reliability(code);
    if (!rel)
        throw std::invalid_argument("synchronize: code " + code.str() +
                                    " has no finite reliability");
    if (start_offset > stream.size())
        throw std::invalid_argument("synchronize: start_offset beyond end of stream");

    PhaseSet ps(code);
    while (ps.count() > 1) {
        if (ps.bits_consumed() >= *rel)
            throw std::logic_error(
                "synchronize: phase not identified within the reliability window");
        const std::size_t pos = start_offset + static_cast<std::size_t>(ps.bits_consumed());
        if (pos >= stream.size())
            throw std::invalid_argument("synchronize: stream too short to identify the phase");
        ps.observe(stream[pos]);
        if (ps.empty())
            throw CorruptStreamError("synchronize: no phase is consistent with the stream");
    }
    return {*ps.unique_phase(), ps.bits_consumed()};
}

BitBuffer decode(const BitBuffer& stream, const Code& code, std::size_t start_offset,
                 DecodeStats* stats) {
    const auto sync = synchronize(stream, code, start_offset);
    const int L = code.length();
    const std::size_t boundary =
        start_offset + static_cast<std::size_t>(mod_reduce(L - sync.phase, L));

    // Bits consumed during synchronization are consistent with the surviving
    // phase by construction; check any remaining bits up to the boundary.
    for (std::size_t pos = start_offset + static_cast<std::size_t>(sync.bits_consumed);
         pos < boundary && pos < stream.size(); ++pos) {
        const int phase = mod_reduce(sync.phase + static_cast<long long>(pos - start_offset), L);
        const Symbol s = code.at(phase);
        if (is_control(s) && (s == Symbol::One) != (stream[pos] != 0))
            throw CorruptStreamError("decode: control bit mismatch at stream offset " +
                                     std::to_string(pos));
    }

    if (boundary + static_cast<std::size_t>(L) > stream.size())
        throw std::invalid_argument("decode: stream too short for one full block");

    BitBuffer out;
    const std::size_t blocks = (stream.size() - boundary) / static_cast<std::size_t>(L);
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t base = boundary + b * static_cast<std::size_t>(L);
        for (int p = 0; p < L; ++p) {
            const int bit = stream[base + static_cast<std::size_t>(p)];
            const Symbol s = code.at(p);
            if (s == Symbol::Wild) {
                out.push_back(bit);
            } else if ((s == Symbol::One) != (bit != 0)) {
                throw CorruptStreamError("decode: control bit mismatch at stream offset " +
                                         std::to_string(base + static_cast<std::size_t>(p)));
            }
        }
    }
    if (stats) {
        stats->leading_bits_skipped = boundary - start_offset;
        stats->blocks = blocks;
        stats->trailing_bits_ignored = stream.size() - boundary - blocks * static_cast<std::size_t>(L);
    }
    return out;
}

}  // namespace synccode
