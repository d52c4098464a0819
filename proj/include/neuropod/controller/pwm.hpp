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
#include <string_view>

#include <json.hpp>

#include "neuropod/controller/decoder.hpp"

namespace neuropod::controller {

enum class PwmPosition : std::uint8_t
{
    Home = 0,
    Fw = 1,
    Bw = 2,
};

std::string_view position_name(PwmPosition p);

struct PwmWidths
{
    int fw_us = 1000;
    int bw_us = 2000;
    int home_us = 1500;

    void validate(int period_us) const;
    bool operator==(const PwmWidths &) const = default;
};

inline constexpr int kPwmPeriodUs = 20000;

struct PwmChannel
{
    PwmWidths widths;
    int period_us = kPwmPeriodUs;
    PwmPosition current = PwmPosition::Home;
    int latched_width_us = 1500;

    bool operator==(const PwmChannel &) const = default;
};

PwmChannel make_channel(const PwmWidths &widths = {});

/// fw loads width_fw, bw loads width_bw, fw wins if both; neither holds.
PwmChannel pwm_command(PwmChannel ch, bool fw, bool bw);
/// High iff t < latched width. Throws InputError outside [0, period).
bool pwm_level(const PwmChannel &ch, int t_in_period_us);
double duty_cycle(const PwmChannel &ch);
/// Home position, as on release of the global reset.
PwmChannel reset_release(PwmChannel ch);

using PwmBank = std::array<PwmChannel, cpg::kServoCount>;

PwmBank make_bank(const PwmWidths &widths = {});
/// Applies one tick's enable vector to every channel.
void apply_enables(PwmBank &bank, const EnableVector &lines);
void reset_release(PwmBank &bank);

nlohmann::json channel_to_json(const PwmChannel &ch);
nlohmann::json bank_to_json(const PwmBank &bank);

} // namespace neuropod::controller
