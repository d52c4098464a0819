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

#include "neuropod/aer/link.hpp"

#include "neuropod/error.hpp"

namespace neuropod::aer {

LinkHealth &LinkHealth::operator+=(const LinkHealth &o)
{
    events_sent += o.events_sent;
    events_delivered += o.events_delivered;
    tx_stall += o.tx_stall;
    rx_stall += o.rx_stall;
    framing_errors += o.framing_errors;
    symbol_errors += o.symbol_errors;
    return *this;
}

nlohmann::json LinkHealth::to_json() const
{
    return {
        {"events_sent", events_sent},
        {"events_delivered", events_delivered},
        {"tx_stall", tx_stall},
        {"rx_stall", rx_stall},
        {"framing_errors", framing_errors},
        {"symbol_errors", symbol_errors},
    };
}

AerSpinnLink::AerSpinnLink(std::string name, const CodeTable &table, LinkFaults faults)
    : name_(std::move(name)), table_(&table), faults_(faults)
{
    if (faults_.flip_every_n_frames < 0 || faults_.flip_bit < 0 || faults_.flip_bit > 6)
    {
        throw ConfigError("link fault settings out of range");
    }
}

void AerSpinnLink::reset()
{
    upstream_ = {};
    downstream_ = {};
    line_state_ = 0;
    frame_count_ = 0;
    health_ = {};
}

std::optional<AerEvent> AerSpinnLink::transfer(AerEvent e)
{
    ++health_.events_sent;

    AerEvent accepted;
    try
    {
        accepted = handshake_transfer(upstream_, e);
    }
    catch (const ProtocolError &)
    {
        ++health_.tx_stall;
        upstream_ = {};
        return std::nullopt;
    }

    const LinkFrame frame = encode_event(accepted, *table_);
    auto states = line_encode(std::span(&frame, 1), line_state_);
    // Transmitter and receiver agree on the final wire state after every
    // frame; a corrupted frame is dropped, not re-synchronised bit by bit.
    line_state_ = states.back();

    ++frame_count_;
    if (faults_.flip_every_n_frames > 0 &&
            frame_count_ % static_cast<std::uint64_t>(faults_.flip_every_n_frames) == 0)
    {
        states[1] = static_cast<std::uint8_t>(states[1] ^ (1u << faults_.flip_bit));
    }

    AerEvent received;
    try
    {
        const auto frames = line_decode(states, *table_);
        if (frames.size() != 1)
        {
            throw FramingError("expected exactly one frame per event");
        }
        received = decode_frame(frames.front(), *table_);
    }
    catch (const LineStallError &)
    {
        ++health_.rx_stall;
        return std::nullopt;
    }
    catch (const FramingError &)
    {
        ++health_.framing_errors;
        return std::nullopt;
    }
    catch (const ProtocolError &)
    {
        ++health_.symbol_errors;
        return std::nullopt;
    }

    try
    {
        received = handshake_transfer(downstream_, received);
    }
    catch (const ProtocolError &)
    {
        ++health_.rx_stall;
        downstream_ = {};
        return std::nullopt;
    }
    ++health_.events_delivered;
    return received;
}

} // namespace neuropod::aer
