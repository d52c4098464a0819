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

#include "neuropod/aer/two_of_seven.hpp"

#include <bit>
#include <cstdio>
#include <sstream>

#include "neuropod/error.hpp"

namespace neuropod::aer {
namespace {

constexpr std::int8_t kUnused = -1;
constexpr std::int8_t kEop = -2;

bool is_code_word(std::uint8_t mask)
{
    return (mask & ~kLineMask) == 0 && std::popcount(mask) == 2;
}

std::string hex2(std::uint8_t v)
{
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", v);
    return buf;
}

} // namespace

TwoOfSevenSymbol TwoOfSevenSymbol::from_mask(std::uint8_t mask)
{
    if (!is_code_word(mask))
    {
        throw InvalidSymbolError("mask 0x" + hex2(mask) + " is not a 2-of-7 code word");
    }
    return TwoOfSevenSymbol(mask);
}

CodeTable::CodeTable(const std::array<std::uint8_t, 16> &data, std::uint8_t eop)
    : data_(data), eop_(eop)
{
    reverse_.fill(kUnused);
    for (std::size_t v = 0; v < data_.size(); ++v)
    {
        reverse_[data_[v]] = static_cast<std::int8_t>(v);
    }
    reverse_[eop_] = kEop;
}

const CodeTable &CodeTable::standard()
{
    static const CodeTable table = [] {
        std::array<std::uint8_t, 16> data{};
        std::size_t n = 0;
        for (int i = 0; i < 7; ++i)
        {
            for (int j = i + 1; j < 7; ++j)
            {
                if (i == 5 && j == 6)
                {
                    continue;
                }
                if (n < data.size())
                {
                    data[n++] = static_cast<std::uint8_t>((1u << i) | (1u << j));
                }
            }
        }
        return CodeTable(data, static_cast<std::uint8_t>((1u << 5) | (1u << 6)));
    }();
    return table;
}

CodeTable CodeTable::from_masks(const std::array<std::uint8_t, 16> &data, std::uint8_t eop)
{
    std::array<bool, 128> used{};
    auto claim = [&](std::uint8_t m) {
        if (!is_code_word(m))
        {
            throw ConfigError("code table entry 0x" + hex2(m) + " is not a 2-of-7 word");
        }
        if (used[m])
        {
            throw ConfigError("code table entry 0x" + hex2(m) + " appears twice");
        }
        used[m] = true;
    };
    for (const auto m : data)
    {
        claim(m);
    }
    claim(eop);
    return CodeTable(data, eop);
}

TwoOfSevenSymbol CodeTable::encode(unsigned nibble) const
{
    if (nibble > 15)
    {
        throw InputError("nibble value " + std::to_string(nibble) + " exceeds 15");
    }
    return TwoOfSevenSymbol::from_mask(data_[nibble]);
}

SymbolValue CodeTable::decode(std::uint8_t mask) const
{
    if (!is_code_word(mask))
    {
        throw InvalidSymbolError("mask 0x" + hex2(mask) + " is not a 2-of-7 code word");
    }
    const auto r = reverse_[mask];
    if (r == kEop)
    {
        return SymbolValue{true, 0};
    }
    if (r == kUnused)
    {
        throw ProtocolError("2-of-7 word 0x" + hex2(mask) + " is not in the code table");
    }
    return SymbolValue{false, static_cast<std::uint8_t>(r)};
}

TwoOfSevenSymbol nibble_to_symbol(unsigned v, const CodeTable &table)
{
    return table.encode(v);
}

SymbolValue symbol_to_nibble(std::uint8_t mask, const CodeTable &table)
{
    return table.decode(mask);
}

LinkFrame encode_event(AerEvent e, const CodeTable &table)
{
    LinkFrame f;
    f.symbols.reserve(kDataSymbolsPerFrame);
    for (int i = 0; i < kDataSymbolsPerFrame; ++i)
    {
        f.symbols.push_back(table.encode((e.addr >> (4 * i)) & 0xFu).mask());
    }
    f.terminator = table.eop().mask();
    return f;
}

AerEvent decode_frame(const LinkFrame &f, const CodeTable &table)
{
    if (!table.decode(f.terminator).end_of_packet)
    {
        throw FramingError("frame terminator is not end-of-packet");
    }
    if (f.symbols.size() != kDataSymbolsPerFrame)
    {
        throw FramingError("frame carries " + std::to_string(f.symbols.size()) +
                " data symbols, expected 4");
    }
    std::uint16_t addr = 0;
    for (std::size_t i = 0; i < f.symbols.size(); ++i)
    {
        const auto v = table.decode(f.symbols[i]);
        if (v.end_of_packet)
        {
            throw FramingError("end-of-packet inside frame data");
        }
        addr = static_cast<std::uint16_t>(addr | (v.nibble << (4 * i)));
    }
    return AerEvent{addr};
}

std::vector<std::uint8_t> line_encode(std::span<const LinkFrame> frames,
        std::uint8_t initial_line_state)
{
    std::vector<std::uint8_t> states;
    std::uint8_t s = initial_line_state & kLineMask;
    states.push_back(s);
    auto emit = [&](std::uint8_t mask) {
        // Validates popcount so no encoder path can put a bad transition on the wires.
        s = static_cast<std::uint8_t>(s ^ TwoOfSevenSymbol::from_mask(mask).mask());
        states.push_back(s);
    };
    for (const auto &f : frames)
    {
        for (const auto m : f.symbols)
        {
            emit(m);
        }
        emit(f.terminator);
    }
    return states;
}

std::vector<LinkFrame> line_decode(std::span<const std::uint8_t> states, const CodeTable &table)
{
    std::vector<LinkFrame> frames;
    LinkFrame current;
    const std::uint8_t eop = table.eop().mask();
    for (std::size_t i = 1; i < states.size(); ++i)
    {
        if ((states[i] & ~kLineMask) != 0 || (states[i - 1] & ~kLineMask) != 0)
        {
            throw InvalidSymbolError("line state wider than 7 bits");
        }
        const auto transition = static_cast<std::uint8_t>(states[i] ^ states[i - 1]);
        if (transition == 0)
        {
            throw LineStallError("no transition between line states " + std::to_string(i - 1) +
                    " and " + std::to_string(i));
        }
        if (std::popcount(transition) != 2)
        {
            throw InvalidSymbolError("line transition 0x" + hex2(transition) + " toggles " +
                    std::to_string(std::popcount(transition)) + " wires");
        }
        if (transition == eop)
        {
            current.terminator = transition;
            frames.push_back(std::move(current));
            current = LinkFrame{};
        }
        else
        {
            current.symbols.push_back(transition);
        }
    }
    if (!current.symbols.empty())
    {
        throw FramingError("line ends inside an unterminated frame");
    }
    return frames;
}

std::string format_frame_hex(const LinkFrame &f)
{
    std::string out;
    for (const auto m : f.symbols)
    {
        out += hex2(m);
        out += ' ';
    }
    out += "EOP";
    return out;
}

LinkFrame parse_frame_hex(std::string_view line)
{
    LinkFrame f;
    std::istringstream in{std::string(line)};
    std::string tok;
    bool terminated = false;
    while (in >> tok)
    {
        if (terminated)
        {
            throw FramingError("tokens after EOP in frame dump");
        }
        if (tok == "EOP")
        {
            terminated = true;
            f.terminator = CodeTable::standard().eop().mask();
            continue;
        }
        if (tok.size() != 2)
        {
            throw InputError("frame dump symbols are two hex digits: '" + tok + "'");
        }
        unsigned v = 0;
        std::istringstream hex(tok);
        if (!(hex >> std::hex >> v) || v > 0xFF)
        {
            throw InputError("bad hex symbol '" + tok + "'");
        }
        f.symbols.push_back(static_cast<std::uint8_t>(v));
    }
    if (!terminated)
    {
        throw FramingError("frame dump lacks the EOP terminator");
    }
    return f;
}

} // namespace neuropod::aer
