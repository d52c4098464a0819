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

namespace neuropod::controller {

/// Gait selector: a 2-bit up/down counter that saturates at 0 and 2.
struct SelectorCounter
{
    std::uint8_t value = 0;
    bool new_mode = false; // true only on the step that changed value

    bool operator==(const SelectorCounter &) const = default;
};

/// up and down together is a no-op.
SelectorCounter selector_step(SelectorCounter c, bool up, bool down);

/// Direct load used by the set_gait convenience command. Always pulses
/// new_mode so that the selected gait is (re)sent downstream.
SelectorCounter selector_load(SelectorCounter c, std::uint8_t value);

} // namespace neuropod::controller
