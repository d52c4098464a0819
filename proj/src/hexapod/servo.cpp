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
#include "neuropod/hexapod/servo.hpp"

#include <algorithm>
#include <cmath>

namespace neuropod::hexapod {

ServoState servo_step(ServoState s, double dt_s)
{
    if (!(dt_s > 0.0))
    {
        return s;
    }
    const double target = std::clamp(s.target, s.min_angle, s.max_angle);
    const double reach = s.speed_limit * dt_s;
    const double diff = target - s.angle;
    // The epsilon absorbs rounding in reach so that 60 deg at 0.12 s lands.
    if (std::fabs(diff) <= reach + 1e-9)
    {
        s.angle = target;
    }
    else
    {
        s.angle += diff > 0 ? reach : -reach;
    }
    s.angle = std::clamp(s.angle, s.min_angle, s.max_angle);
    return s;
}

} // namespace neuropod::hexapod
