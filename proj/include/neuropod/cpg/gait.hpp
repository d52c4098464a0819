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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace neuropod::cpg {

enum class GaitId : std::uint8_t
{
    Walk = 0,
    Trot = 1,
    Run = 2,
};

inline constexpr std::array<GaitId, 3> kAllGaits = {GaitId::Walk, GaitId::Trot, GaitId::Run};

constexpr int index_of(GaitId g) { return static_cast<int>(g); }
std::string_view gait_name(GaitId g);
/// Accepts "walk"/"trot"/"run" or "0"/"1"/"2".
std::optional<GaitId> parse_gait(std::string_view text);
std::optional<GaitId> gait_from_index(int value);

// Legs, numbered as in the servo table: right side front to back, then left.
enum class Leg : std::uint8_t
{
    FR = 0,
    MR = 1,
    BR = 2,
    FL = 3,
    ML = 4,
    BL = 5,
};

inline constexpr int kLegCount = 6;
inline constexpr int kServoCount = 12;

enum class Joint : std::uint8_t
{
    Coxa = 0,
    Femur = 1,
};

/// Servo index in FPGA decode order: CFR, FFR, CMR, FMR, ..., CBL, FBL.
constexpr int servo_index(int leg, Joint joint) { return 2 * leg + static_cast<int>(joint); }
constexpr int leg_of_servo(int servo) { return servo / 2; }
constexpr Joint joint_of_servo(int servo) { return static_cast<Joint>(servo % 2); }
std::string_view leg_name(int leg);
/// "CFR", "FFR", ... as used by the decode table.
std::string_view servo_name(int servo);

struct SwingGroup
{
    std::vector<int> legs;
    double phase = 0.0; // fraction of the period in [0, 1)
};

/// Expected leg-phase pattern of one gait.
struct GaitSignature
{
    int period = 0; // ticks
    std::vector<SwingGroup> swing_groups;

    /// Throws ConfigError on overlapping/missing legs, bad phases, or period < group count.
    void validate() const;
    [[nodiscard]] std::array<double, kLegCount> phase_of_leg() const;
    /// Phase of each leg rounded to whole ticks in [0, period).
    [[nodiscard]] std::array<int, kLegCount> tick_offset_of_leg() const;
    /// First leg of the group with phase 0 (or the lowest phase).
    [[nodiscard]] int reference_leg() const;
};

/// Tripod run (8), tetrapod trot (9), wave walk (12).
GaitSignature default_signature(GaitId g);
std::array<GaitSignature, 3> default_signatures();

} // namespace neuropod::cpg
