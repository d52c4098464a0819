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

#include "neuropod/aer/handshake.hpp"

#include <string>

#include "neuropod/error.hpp"

namespace neuropod::aer {

std::string_view phase_name(HandshakePhase p)
{
    switch (p)
    {
    case HandshakePhase::Idle:
        return "idle";
    case HandshakePhase::Requested:
        return "requested";
    case HandshakePhase::Acked:
        return "acked";
    case HandshakePhase::Released:
        return "released";
    }
    return "?";
}

std::string_view action_name(HandshakeAction a)
{
    switch (a)
    {
    case HandshakeAction::SenderRequest:
        return "sender-request";
    case HandshakeAction::ReceiverAck:
        return "receiver-ack";
    case HandshakeAction::SenderRelease:
        return "sender-release";
    case HandshakeAction::ReceiverRelease:
        return "receiver-release";
    }
    return "?";
}

HandshakeStep handshake_step(const HandshakeChannel &ch, HandshakeAction action,
        std::optional<AerEvent> payload)
{
    auto violation = [&] {
        return ProtocolError(std::string(action_name(action)) + " is illegal in phase " +
                std::string(phase_name(ch.phase)));
    };

    HandshakeStep out{ch, std::nullopt};
    auto &next = out.channel;
    switch (action)
    {
    case HandshakeAction::SenderRequest:
        if (ch.phase != HandshakePhase::Idle)
        {
            throw violation();
        }
        if (!payload)
        {
            throw ProtocolError("sender-request without data");
        }
        next.req = true;
        next.data = payload;
        next.phase = HandshakePhase::Requested;
        break;
    case HandshakeAction::ReceiverAck:
        if (ch.phase != HandshakePhase::Requested)
        {
            throw violation();
        }
        next.ack = true;
        next.phase = HandshakePhase::Acked;
        out.delivered = ch.data;
        break;
    case HandshakeAction::SenderRelease:
        if (ch.phase != HandshakePhase::Acked)
        {
            throw violation();
        }
        next.req = false;
        next.data.reset();
        next.phase = HandshakePhase::Released;
        break;
    case HandshakeAction::ReceiverRelease:
        if (ch.phase != HandshakePhase::Released)
        {
            throw violation();
        }
        next.ack = false;
        next.phase = HandshakePhase::Idle;
        break;
    }
    return out;
}

AerEvent handshake_transfer(HandshakeChannel &ch, AerEvent e)
{
    auto s = handshake_step(ch, HandshakeAction::SenderRequest, e);
    s = handshake_step(s.channel, HandshakeAction::ReceiverAck);
    const AerEvent delivered = *s.delivered;
    s = handshake_step(s.channel, HandshakeAction::SenderRelease);
    s = handshake_step(s.channel, HandshakeAction::ReceiverRelease);
    ch = s.channel;
    return delivered;
}

} // namespace neuropod::aer
