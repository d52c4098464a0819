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

#include <optional>
#include <string_view>

#include "neuropod/aer/aer_event.hpp"

namespace neuropod::aer {

// 4-phase REQ/ACK: Idle -(req+)-> Requested -(ack+)-> Acked -(req-)-> Released -(ack-)-> Idle
enum class HandshakePhase
{
    Idle,
    Requested,
    Acked,
    Released,
};

enum class HandshakeAction
{
    SenderRequest,   // raise REQ with data
    ReceiverAck,     // raise ACK, latch data
    SenderRelease,   // drop REQ
    ReceiverRelease, // drop ACK
};

std::string_view phase_name(HandshakePhase p);
std::string_view action_name(HandshakeAction a);

struct HandshakeChannel
{
    bool req = false;
    bool ack = false;
    HandshakePhase phase = HandshakePhase::Idle;
    std::optional<AerEvent> data; // valid only in Requested / Acked
};

struct HandshakeStep
{
    HandshakeChannel channel;
    std::optional<AerEvent> delivered; // set on the ack edge
};

/// ProtocolError on an action that is illegal in the current phase.
/// `payload` is required for SenderRequest and ignored otherwise.
HandshakeStep handshake_step(const HandshakeChannel &ch, HandshakeAction action,
        std::optional<AerEvent> payload = std::nullopt);

/// Runs one full 4-phase cycle and returns the delivered event.
AerEvent handshake_transfer(HandshakeChannel &ch, AerEvent e);

} // namespace neuropod::aer
