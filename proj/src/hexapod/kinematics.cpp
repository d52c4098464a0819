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
#include "neuropod/hexapod/kinematics.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "neuropod/error.hpp"

namespace neuropod::hexapod {
namespace {

double rad(double deg) { return deg * std::numbers::pi / 180.0; }

template <typename T>
void read_if(const nlohmann::json &j, const char *key, T &out)
{
    if (!j.contains(key))
    {
        return;
    }
    try
    {
        out = j.at(key).get<T>();
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError(std::string("bad value for hexapod.") + key + ": " + e.what());
    }
}

void read_joint(const nlohmann::json &j, const char *key, JointCalibration &c)
{
    if (!j.contains(key))
    {
        return;
    }
    const auto &s = j.at(key);
    read_if(s, "fw_deg", c.fw_deg);
    read_if(s, "bw_deg", c.bw_deg);
    read_if(s, "home_deg", c.home_deg);
    read_if(s, "min_deg", c.min_deg);
    read_if(s, "max_deg", c.max_deg);
}

nlohmann::json joint_to_json(const JointCalibration &c)
{
    return {{"fw_deg", c.fw_deg}, {"bw_deg", c.bw_deg}, {"home_deg", c.home_deg},
            {"min_deg", c.min_deg}, {"max_deg", c.max_deg}};
}

} // namespace

double JointCalibration::angle_for(controller::PwmPosition p) const
{
    switch (p)
    {
    case controller::PwmPosition::Fw:
        return fw_deg;
    case controller::PwmPosition::Bw:
        return bw_deg;
    case controller::PwmPosition::Home:
        break;
    }
    return home_deg;
}

void JointCalibration::validate(const char *joint) const
{
    if (!(min_deg < max_deg))
    {
        throw ConfigError(std::string(joint) + " limits are empty");
    }
    for (const double a : {fw_deg, bw_deg, home_deg})
    {
        if (a < min_deg || a > max_deg)
        {
            throw ConfigError(std::string(joint) + " calibration angle outside its limits");
        }
    }
}

void LegGeometry::validate() const
{
    if (!(coxa_len > 0) || !(femur_len > 0) || !(body_depth > 0) || !(body_width > 0))
    {
        throw ConfigError("leg and body lengths must be positive");
    }
    if (!(servo_speed_deg_s > 0) || stance_threshold_deg < 0)
    {
        throw ConfigError("servo speed must be positive and stance threshold >= 0");
    }
    coxa.validate("coxa");
    femur.validate("femur");
    if (in_contact(femur.fw_deg))
    {
        throw ConfigError("femur fw angle does not lift the foot past the stance threshold");
    }
}

Vec2 LegGeometry::mount(int leg) const
{
    static constexpr std::array<int, 3> kRow = {1, 0, -1}; // front, middle, back
    const bool left = leg >= 3;
    return {kRow[static_cast<std::size_t>(leg % 3)] * body_depth / 2.0,
            (left ? 1.0 : -1.0) * body_width / 2.0};
}

void update_geometry_from_json(LegGeometry &g, const nlohmann::json &j)
{
    if (!j.is_object())
    {
        throw ConfigError("hexapod section must be an object");
    }
    read_if(j, "coxa_len", g.coxa_len);
    read_if(j, "femur_len", g.femur_len);
    read_if(j, "body_depth", g.body_depth);
    read_if(j, "body_width", g.body_width);
    read_joint(j, "coxa", g.coxa);
    read_joint(j, "femur", g.femur);
    read_if(j, "stance_threshold_deg", g.stance_threshold_deg);
    read_if(j, "servo_speed_deg_s", g.servo_speed_deg_s);
    g.validate();
}

nlohmann::json geometry_to_json(const LegGeometry &g)
{
    return {
        {"coxa_len", g.coxa_len},
        {"femur_len", g.femur_len},
        {"body_depth", g.body_depth},
        {"body_width", g.body_width},
        {"coxa", joint_to_json(g.coxa)},
        {"femur", joint_to_json(g.femur)},
        {"stance_threshold_deg", g.stance_threshold_deg},
        {"servo_speed_deg_s", g.servo_speed_deg_s},
    };
}

Vec3 leg_fk(double coxa_deg, double femur_deg, int leg, const LegGeometry &g)
{
    const Vec2 m = g.mount(leg);
    const double reach = g.coxa_len + g.femur_len * std::sin(rad(femur_deg));
    const double side = leg >= 3 ? 1.0 : -1.0;
    return {m.x + reach * std::sin(rad(coxa_deg)), m.y + side * reach * std::cos(rad(coxa_deg)),
            -g.femur_len * std::cos(rad(femur_deg))};
}

controller::PwmPosition nearest_position(const controller::PwmChannel &ch, bool *exact)
{
    using controller::PwmPosition;
    const int w = ch.latched_width_us;
    const std::array<std::pair<PwmPosition, int>, 3> options = {{
        {PwmPosition::Home, ch.widths.home_us},
        {PwmPosition::Fw, ch.widths.fw_us},
        {PwmPosition::Bw, ch.widths.bw_us},
    }};
    PwmPosition best = PwmPosition::Home;
    int best_dist = -1;
    for (const auto &[pos, width] : options)
    {
        const int d = std::abs(width - w);
        if (best_dist < 0 || d < best_dist)
        {
            best = pos;
            best_dist = d;
        }
    }
    if (exact != nullptr)
    {
        *exact = best_dist == 0;
    }
    return best;
}

} // namespace neuropod::hexapod
