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
#include "neuropod/controller/decoder.hpp"

#include <string>

#include "neuropod/error.hpp"

namespace neuropod::controller {

DecodedCommand decode_event(aer::AerEvent e)
{
    if (e.addr >= kDecodedAddresses)
    {
        throw OutOfRangeError("AER address " + std::to_string(e.addr) + " is not a servo command");
    }
    if (e.addr < cpg::kServoCount)
    {
        return {e.addr, MotorAction::Fw};
    }
    return {e.addr - cpg::kServoCount, MotorAction::Bw};
}

aer::AerEvent encode_command(DecodedCommand c)
{
    if (c.servo < 0 || c.servo >= cpg::kServoCount)
    {
        throw OutOfRangeError("servo " + std::to_string(c.servo) + " out of range");
    }
    return {cpg::motor_address(c.servo, c.action)};
}

std::optional<DecodedCommand> PatternDecoder::accept(aer::AerEvent e)
{
    if (e.addr >= kDecodedAddresses)
    {
        ++dropped_;
        return std::nullopt;
    }
    const auto cmd = decode_event(e);
    pending_.set(e.addr);
    ++decoded_;
    return cmd;
}

EnableVector PatternDecoder::take()
{
    const EnableVector out = pending_;
    pending_.reset();
    return out;
}

void PatternDecoder::reset()
{
    *this = PatternDecoder{};
}

nlohmann::json PatternDecoder::to_json() const
{
    return {{"decoded", decoded_}, {"dropped", dropped_}};
}

} // namespace neuropod::controller
