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
#include "neuropod/hexapod/world.hpp"

#include <algorithm>
#include <cmath>

namespace neuropod::hexapod {
namespace {

void refresh_stability(HexapodWorld &w, const std::array<Vec3, kLegCount> &feet)
{
    std::vector<Vec2> support;
    for (int leg = 0; leg < kLegCount; ++leg)
    {
        if (w.contacts[static_cast<std::size_t>(leg)])
        {
            support.push_back({feet[static_cast<std::size_t>(leg)].x,
                    feet[static_cast<std::size_t>(leg)].y});
        }
    }
    w.stability = stability_of(support);
}

void refresh_contacts(HexapodWorld &w)
{
    for (int leg = 0; leg < kLegCount; ++leg)
    {
        const auto &femur = w.servos[static_cast<std::size_t>(
                cpg::servo_index(leg, cpg::Joint::Femur))];
        w.contacts[static_cast<std::size_t>(leg)] = w.geometry.in_contact(femur.angle);
    }
}

const JointCalibration &calibration(const LegGeometry &g, int servo)
{
    return cpg::joint_of_servo(servo) == cpg::Joint::Coxa ? g.coxa : g.femur;
}

} // namespace

HexapodWorld make_world(const LegGeometry &geometry)
{
    geometry.validate();
    HexapodWorld w;
    w.geometry = geometry;
    for (int s = 0; s < kServoCount; ++s)
    {
        const auto &cal = calibration(geometry, s);
        auto &servo = w.servos[static_cast<std::size_t>(s)];
        servo.angle = cal.home_deg;
        servo.target = cal.home_deg;
        servo.speed_limit = geometry.servo_speed_deg_s;
        servo.min_angle = cal.min_deg;
        servo.max_angle = cal.max_deg;
    }
    refresh_contacts(w);
    refresh_stability(w, foot_positions(w));
    return w;
}

void apply_pwm_targets(HexapodWorld &world, const controller::PwmBank &bank)
{
    for (int s = 0; s < kServoCount; ++s)
    {
        bool exact = true;
        const auto pos = nearest_position(bank[static_cast<std::size_t>(s)], &exact);
        if (!exact)
        {
            ++world.pwm_warnings;
        }
        world.servos[static_cast<std::size_t>(s)].target =
                calibration(world.geometry, s).angle_for(pos);
    }
}

std::array<Vec3, kLegCount> foot_positions(const HexapodWorld &world)
{
    std::array<Vec3, kLegCount> out;
    for (int leg = 0; leg < kLegCount; ++leg)
    {
        out[static_cast<std::size_t>(leg)] = leg_fk(
                world.servos[static_cast<std::size_t>(cpg::servo_index(leg, cpg::Joint::Coxa))].angle,
                world.servos[static_cast<std::size_t>(cpg::servo_index(leg, cpg::Joint::Femur))].angle,
                leg, world.geometry);
    }
    return out;
}

double step_world(HexapodWorld &world, const controller::PwmBank &bank, double dt_s)
{
    if (!(dt_s > 0.0))
    {
        return 0.0;
    }
    apply_pwm_targets(world, bank);
    const auto before = foot_positions(world);
    const auto contact_before = world.contacts;
    for (auto &s : world.servos)
    {
        s = servo_step(s, dt_s);
    }
    refresh_contacts(world);
    const auto after = foot_positions(world);

    // Crawl kinematics: feet that stayed planted push the body forward by
    // however far they moved back; forward drag of a planted foot is slip.
    double sum = 0.0;
    int planted = 0;
    for (int leg = 0; leg < kLegCount; ++leg)
    {
        const auto i = static_cast<std::size_t>(leg);
        if (contact_before[i] && world.contacts[i])
        {
            sum += std::max(0.0, before[i].x - after[i].x);
            ++planted;
        }
    }
    const double advance = planted > 0 ? sum / planted : 0.0;
    world.body.x += advance;
    world.t_wall_ms += dt_s * 1000.0;
    refresh_stability(world, after);
    return advance;
}

nlohmann::json pose_to_json(const HexapodWorld &world)
{
    nlohmann::json angles = nlohmann::json::array();
    for (const auto &s : world.servos)
    {
        angles.push_back(s.angle);
    }
    nlohmann::json polygon = nlohmann::json::array();
    for (const auto &p : world.stability.support_polygon)
    {
        polygon.push_back({p.x, p.y});
    }
    return {
        {"t_sim_ms", world.t_sim_ms},
        {"t_wall_ms", world.t_wall_ms},
        {"body_xy", {world.body.x, world.body.y}},
        {"servo_angles", angles},
        {"contacts", world.contacts},
        {"stability_margin", world.stability.margin ? nlohmann::json(*world.stability.margin)
                                                    : nlohmann::json(nullptr)},
        {"support_polygon", polygon},
    };
}

} // namespace neuropod::hexapod
