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
// kinematics.hpp - leg geometry and 2-DOF forward kinematics
//
// Body frame: x forward, y to the left, z up, origin at the body centre.
// Coxa angles are positive when the foot swings forward, femur angles are
// positive when the leg lifts. At femur 0 the femur hangs straight down, so
// the foot sits coxa_len (horizontally) from its mount.

#pragma once

#include <array>

#include <json.hpp>

#include "neuropod/controller/pwm.hpp"
#include "neuropod/cpg/gait.hpp"

namespace neuropod::hexapod {

struct Vec2
{
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Vec2 &) const = default;
};

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Calibrated angles of one joint type for the three PWM positions.
struct JointCalibration
{
    double fw_deg = 0.0;
    double bw_deg = 0.0;
    double home_deg = 0.0;
    double min_deg = -90.0;
    double max_deg = 90.0;

    [[nodiscard]] double angle_for(controller::PwmPosition p) const;
    void validate(const char *joint) const;
};

struct LegGeometry
{
    double coxa_len = 3.9;   // cm
    double femur_len = 4.5;  // cm
    double body_depth = 9.0; // cm, along x
    double body_width = 8.9; // cm, along y
    JointCalibration coxa{20.0, -20.0, 0.0, -45.0, 45.0};
    JointCalibration femur{25.0, 0.0, 0.0, -10.0, 60.0};
    double stance_threshold_deg = 5.0; // contact while femur <= bw + this
    double servo_speed_deg_s = 500.0;

    void validate() const;
    /// Mount of each leg (FR, MR, BR, FL, ML, BL) on the body rim.
    [[nodiscard]] Vec2 mount(int leg) const;
    [[nodiscard]] double stance_angle() const { return femur.bw_deg; }
    [[nodiscard]] bool in_contact(double femur_deg) const
    {
        return femur_deg <= stance_angle() + stance_threshold_deg;
    }
};

void update_geometry_from_json(LegGeometry &g, const nlohmann::json &j);
nlohmann::json geometry_to_json(const LegGeometry &g);

/// Foot position in the body frame.
Vec3 leg_fk(double coxa_deg, double femur_deg, int leg, const LegGeometry &g);

/// Position whose configured width is nearest; ties go to home, then fw.
controller::PwmPosition nearest_position(const controller::PwmChannel &ch, bool *exact = nullptr);

} // namespace neuropod::hexapod
