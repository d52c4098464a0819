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

#include <bitset>
#include <cstdint>
#include <optional>

#include <json.hpp>

#include "neuropod/aer/aer_event.hpp"
#include "neuropod/cpg/analysis.hpp"

namespace neuropod::controller {

using cpg::MotorAction;

inline constexpr int kDecodedAddresses = 2 * cpg::kServoCount; // 0..23

struct DecodedCommand
{
    int servo = 0;
    MotorAction action = MotorAction::Fw;

    bool operator==(const DecodedCommand &) const = default;
};

/// Addresses 0..11 are FW, 12..23 BW, servo order CFR, FFR, CMR, ... FBL.
/// Throws OutOfRangeError for addr > 23.
DecodedCommand decode_event(aer::AerEvent e);
aer::AerEvent encode_command(DecodedCommand c);

/// fw lines in bits 0..11, bw lines in bits 12..23; one vector per tick.
using EnableVector = std::bitset<kDecodedAddresses>;

/// Stateful decoder front end: accumulates one tick's lines and counts drops.
class PatternDecoder
{
public:
    /// Returns the command, or nullopt (and counts a drop) when out of range.
    std::optional<DecodedCommand> accept(aer::AerEvent e);
    /// Lines asserted since the previous take(); clears them.
    EnableVector take();

    [[nodiscard]] std::uint64_t decoded() const { return decoded_; }
    [[nodiscard]] std::uint64_t dropped() const { return dropped_; }
    void reset();
    [[nodiscard]] nlohmann::json to_json() const;

private:
    EnableVector pending_;
    std::uint64_t decoded_ = 0;
    std::uint64_t dropped_ = 0;
};

} // namespace neuropod::controller
