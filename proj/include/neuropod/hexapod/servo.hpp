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

namespace neuropod::hexapod {

/// 0.12 s per 60 degrees.
inline constexpr double kServoSpeedDegPerSec = 500.0;

struct ServoState
{
    double angle = 0.0;  // deg
    double target = 0.0; // deg
    double speed_limit = kServoSpeedDegPerSec;
    double min_angle = -90.0;
    double max_angle = 90.0;

    bool operator==(const ServoState &) const = default;
};

/// Slews toward the target by at most speed_limit * dt_s, landing on it
/// exactly once it is within reach. dt_s must be > 0.
ServoState servo_step(ServoState s, double dt_s);

} // namespace neuropod::hexapod
