/*
 * Copyright 2026 The NeuroPod Simulator Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// two_of_seven.hpp - 2-of-7 transition-signalled link codec
//
// Every symbol toggles exactly two of seven wires. Sixteen code words carry
// a nibble, one more marks end-of-packet. An address event travels as four
// nibbles, least significant first, followed by EOP.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "neuropod/aer/aer_event.hpp"

namespace neuropod::aer {

inline constexpr std::uint8_t kLineMask = 0x7F;
inline constexpr int kDataSymbolsPerFrame = 4;

/// A 7-bit transition mask with exactly two bits set.
class TwoOfSevenSymbol
{
public:
    /// Throws InvalidSymbolError unless `mask` is 7-bit with popcount 2.
    static TwoOfSevenSymbol from_mask(std::uint8_t mask);

    [[nodiscard]] std::uint8_t mask() const { return mask_; }
    auto operator<=>(const TwoOfSevenSymbol &) const = default;

private:
    explicit TwoOfSevenSymbol(std::uint8_t mask) : mask_(mask) {}
    std::uint8_t mask_;
};

/// Result of looking up a symbol: a nibble or the end-of-packet marker.
struct SymbolValue
{
    bool end_of_packet = false;
    std::uint8_t nibble = 0;

    bool operator==(const SymbolValue &) const = default;
};

/// Nibble <-> code-word table. The standard table lists the 21 bit pairs of
/// C(7,2) lexicographically, reserves {5,6} for EOP and takes the first 16
/// remaining pairs for nibbles 0..15.
class CodeTable
{
public:
    static const CodeTable &standard();
    /// Throws ConfigError unless all 17 masks are distinct 2-of-7 words.
    static CodeTable from_masks(const std::array<std::uint8_t, 16> &data, std::uint8_t eop);

    [[nodiscard]] TwoOfSevenSymbol encode(unsigned nibble) const;
    /// InvalidSymbolError for popcount != 2, ProtocolError for unused words.
    [[nodiscard]] SymbolValue decode(std::uint8_t mask) const;
    [[nodiscard]] TwoOfSevenSymbol eop() const { return TwoOfSevenSymbol::from_mask(eop_); }
    [[nodiscard]] const std::array<std::uint8_t, 16> &data_masks() const { return data_; }

private:
    CodeTable(const std::array<std::uint8_t, 16> &data, std::uint8_t eop);

    std::array<std::uint8_t, 16> data_{};
    std::uint8_t eop_ = 0;
    std::array<std::int8_t, 128> reverse_{}; // -1 unused, -2 EOP, else nibble
};

TwoOfSevenSymbol nibble_to_symbol(unsigned v, const CodeTable &table = CodeTable::standard());
SymbolValue symbol_to_nibble(std::uint8_t mask, const CodeTable &table = CodeTable::standard());

/// Raw masks so malformed frames can be represented and rejected on decode.
struct LinkFrame
{
    std::vector<std::uint8_t> symbols; // data symbols
    std::uint8_t terminator = 0;       // EOP mask

    bool operator==(const LinkFrame &) const = default;
};

LinkFrame encode_event(AerEvent e, const CodeTable &table = CodeTable::standard());
/// FramingError on a data-symbol count other than 4 or a non-EOP terminator.
AerEvent decode_frame(const LinkFrame &f, const CodeTable &table = CodeTable::standard());

/// Line states: first the initial state, then one per transmitted symbol.
std::vector<std::uint8_t> line_encode(std::span<const LinkFrame> frames,
        std::uint8_t initial_line_state);
/// LineStallError on a zero transition, InvalidSymbolError on a transition
/// whose popcount is not 2, FramingError on a trailing unterminated frame.
std::vector<LinkFrame> line_decode(std::span<const std::uint8_t> states,
        const CodeTable &table = CodeTable::standard());

/// "03 05 03 03 EOP"
std::string format_frame_hex(const LinkFrame &f);
LinkFrame parse_frame_hex(std::string_view line);

} // namespace neuropod::aer
