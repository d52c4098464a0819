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

#include <compare>
#include <cstdint>
#include <vector>

#include "neuropod/tick.hpp"

namespace neuropod::aer {

/// 16-bit address event.
struct AerEvent
{
    std::uint16_t addr = 0;

    auto operator<=>(const AerEvent &) const = default;
};

/// An address event stamped with the tick it was emitted on.
struct TimedAer
{
    Tick tick = 0;
    std::uint16_t addr = 0;

    auto operator<=>(const TimedAer &) const = default;
};

using AerLog = std::vector<TimedAer>;

} // namespace neuropod::aer
