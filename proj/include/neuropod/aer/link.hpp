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

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "neuropod/aer/handshake.hpp"
#include "neuropod/aer/two_of_seven.hpp"

namespace neuropod::aer {

/// Link status counters exposed in reports and live snapshots.
struct LinkHealth
{
    std::uint64_t events_sent = 0;
    std::uint64_t events_delivered = 0;
    std::uint64_t tx_stall = 0;
    std::uint64_t rx_stall = 0;
    std::uint64_t framing_errors = 0;
    std::uint64_t symbol_errors = 0;

    LinkHealth &operator+=(const LinkHealth &o);
    [[nodiscard]] bool healthy() const
    {
        return tx_stall == 0 && rx_stall == 0 && framing_errors == 0 && symbol_errors == 0;
    }
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Deterministic wire corruption for robustness experiments.
struct LinkFaults
{
    int flip_every_n_frames = 0; // 0 disables
    int flip_bit = 0;            // wire 0..6 flipped in the first data state
};

/// One direction of the AER <-> 2-of-7 bridge: AER handshake in, 2-of-7
/// wires across, AER handshake out on the far side.
class AerSpinnLink
{
public:
    explicit AerSpinnLink(std::string name, const CodeTable &table = CodeTable::standard(),
            LinkFaults faults = {});

    /// Carries one event across; nullopt when the receiver rejected the frame.
    std::optional<AerEvent> transfer(AerEvent e);

    [[nodiscard]] const LinkHealth &health() const { return health_; }
    [[nodiscard]] std::uint8_t line_state() const { return line_state_; }
    [[nodiscard]] const std::string &name() const { return name_; }
    void reset();

private:
    std::string name_;
    const CodeTable *table_;
    LinkFaults faults_;
    HandshakeChannel upstream_;
    HandshakeChannel downstream_;
    std::uint8_t line_state_ = 0;
    std::uint64_t frame_count_ = 0;
    LinkHealth health_;
};

} // namespace neuropod::aer
