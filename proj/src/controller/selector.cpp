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
#include "neuropod/controller/selector.hpp"

namespace neuropod::controller {

SelectorCounter selector_step(SelectorCounter c, bool up, bool down)
{
    const std::uint8_t before = c.value;
    if (up && !down && c.value < 2)
    {
        ++c.value;
    }
    else if (down && !up && c.value > 0)
    {
        --c.value;
    }
    c.new_mode = c.value != before;
    return c;
}

SelectorCounter selector_load(SelectorCounter c, std::uint8_t value)
{
    c.value = value > 2 ? std::uint8_t{2} : value;
    c.new_mode = true;
    return c;
}

} // namespace neuropod::controller
