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

#include <array>
#include <cstdint>

#include <json.hpp>

#include "neuropod/controller/pwm.hpp"
#include "neuropod/hexapod/kinematics.hpp"
#include "neuropod/hexapod/servo.hpp"
#include "neuropod/hexapod/stability.hpp"
#include "neuropod/tick.hpp"

namespace neuropod::hexapod {

inline constexpr int kServoCount = cpg::kServoCount;
inline constexpr int kLegCount = cpg::kLegCount;

struct HexapodWorld
{
    LegGeometry geometry;
    std::array<ServoState, kServoCount> servos{};
    Vec2 body{};                             // cm, world frame, heading +x
    std::array<bool, kLegCount> contacts{};
    StabilityReport stability;
    double t_wall_ms = 0.0;
    Tick t_sim_ms = 0;
    std::uint64_t pwm_warnings = 0; // widths not matching a calibrated position
};

/// All servos at home, every foot down.
HexapodWorld make_world(const LegGeometry &geometry = {});

/// Servo targets from the PWM bank, in decode-table servo order.
void apply_pwm_targets(HexapodWorld &world, const controller::PwmBank &bank);

/// Feet of the current pose in the body frame.
std::array<Vec3, kLegCount> foot_positions(const HexapodWorld &world);

/// Sets targets, slews servos by dt_s, refreshes contacts and stability and
/// advances the body by the mean retraction of the feet in contact.
/// Returns the body advance (cm).
double step_world(HexapodWorld &world, const controller::PwmBank &bank, double dt_s);

nlohmann::json pose_to_json(const HexapodWorld &world);

} // namespace neuropod::hexapod
