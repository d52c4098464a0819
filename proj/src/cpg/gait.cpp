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

#include "neuropod/cpg/gait.hpp"

#include <algorithm>
#include <cmath>

#include "neuropod/error.hpp"

namespace neuropod::cpg {

std::string_view gait_name(GaitId g)
{
    switch (g)
    {
    case GaitId::Walk:
        return "walk";
    case GaitId::Trot:
        return "trot";
    case GaitId::Run:
        return "run";
    }
    return "?";
}

std::optional<GaitId> gait_from_index(int value)
{
    if (value < 0 || value > 2)
    {
        return std::nullopt;
    }
    return static_cast<GaitId>(value);
}

std::optional<GaitId> parse_gait(std::string_view text)
{
    for (const auto g : kAllGaits)
    {
        if (text == gait_name(g))
        {
            return g;
        }
    }
    if (text.size() == 1 && text[0] >= '0' && text[0] <= '2')
    {
        return gait_from_index(text[0] - '0');
    }
    return std::nullopt;
}

std::string_view leg_name(int leg)
{
    static constexpr std::array<std::string_view, kLegCount> names = {
        "FR", "MR", "BR", "FL", "ML", "BL"};
    if (leg < 0 || leg >= kLegCount)
    {
        return "?";
    }
    return names[static_cast<std::size_t>(leg)];
}

std::string_view servo_name(int servo)
{
    static constexpr std::array<std::string_view, kServoCount> names = {
        "CFR", "FFR", "CMR", "FMR", "CBR", "FBR", "CFL", "FFL", "CML", "FML", "CBL", "FBL"};
    if (servo < 0 || servo >= kServoCount)
    {
        return "?";
    }
    return names[static_cast<std::size_t>(servo)];
}

void GaitSignature::validate() const
{
    if (swing_groups.empty())
    {
        throw ConfigError("gait signature needs at least one swing group");
    }
    if (period < static_cast<int>(swing_groups.size()))
    {
        throw ConfigError("gait period " + std::to_string(period) +
                " is smaller than its " + std::to_string(swing_groups.size()) + " swing groups");
    }
    std::array<bool, kLegCount> seen{};
    std::vector<int> offsets;
    for (const auto &group : swing_groups)
    {
        if (group.legs.empty())
        {
            throw ConfigError("empty swing group");
        }
        if (!(group.phase >= 0.0 && group.phase < 1.0))
        {
            throw ConfigError("swing group phase must be in [0, 1)");
        }
        for (const auto leg : group.legs)
        {
            if (leg < 0 || leg >= kLegCount)
            {
                throw ConfigError("leg id out of range in swing group");
            }
            if (seen[static_cast<std::size_t>(leg)])
            {
                throw ConfigError("leg " + std::string(leg_name(leg)) + " is in two swing groups");
            }
            seen[static_cast<std::size_t>(leg)] = true;
        }
        const int offset = static_cast<int>(std::floor(group.phase * period + 0.5)) % period;
        if (std::find(offsets.begin(), offsets.end(), offset) != offsets.end())
        {
            throw ConfigError("two swing groups share the same phase tick");
        }
        offsets.push_back(offset);
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    {
        throw ConfigError("every leg must belong to a swing group");
    }
}

std::array<double, kLegCount> GaitSignature::phase_of_leg() const
{
    std::array<double, kLegCount> phases{};
    for (const auto &group : swing_groups)
    {
        for (const auto leg : group.legs)
        {
            phases[static_cast<std::size_t>(leg)] = group.phase;
        }
    }
    return phases;
}

std::array<int, kLegCount> GaitSignature::tick_offset_of_leg() const
{
    std::array<int, kLegCount> offsets{};
    const auto phases = phase_of_leg();
    for (std::size_t leg = 0; leg < offsets.size(); ++leg)
    {
        offsets[leg] = static_cast<int>(std::floor(phases[leg] * period + 0.5)) % period;
    }
    return offsets;
}

int GaitSignature::reference_leg() const
{
    const auto it = std::min_element(swing_groups.begin(), swing_groups.end(),
            [](const SwingGroup &a, const SwingGroup &b) { return a.phase < b.phase; });
    return *std::min_element(it->legs.begin(), it->legs.end());
}

GaitSignature default_signature(GaitId g)
{
    constexpr int FR = 0, MR = 1, BR = 2, FL = 3, ML = 4, BL = 5;
    switch (g)
    {
    case GaitId::Run:
        return GaitSignature{8, {{{FR, ML, BR}, 0.0}, {{MR, FL, BL}, 0.5}}};
    case GaitId::Trot:
        return GaitSignature{9, {{{FR, ML}, 0.0}, {{MR, BL}, 1.0 / 3.0}, {{BR, FL}, 2.0 / 3.0}}};
    case GaitId::Walk:
        return GaitSignature{12,
                {{{BR}, 0.0}, {{MR}, 1.0 / 6.0}, {{FR}, 2.0 / 6.0}, {{BL}, 3.0 / 6.0},
                        {{ML}, 4.0 / 6.0}, {{FL}, 5.0 / 6.0}}};
    }
    throw ConfigError("unknown gait");
}

std::array<GaitSignature, 3> default_signatures()
{
    return {default_signature(GaitId::Walk), default_signature(GaitId::Trot),
            default_signature(GaitId::Run)};
}

} // namespace neuropod::cpg
