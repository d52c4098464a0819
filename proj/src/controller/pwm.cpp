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
#include "neuropod/controller/pwm.hpp"

#include <string>

#include "neuropod/error.hpp"

namespace neuropod::controller {

std::string_view position_name(PwmPosition p)
{
    switch (p)
    {
    case PwmPosition::Home:
        return "home";
    case PwmPosition::Fw:
        return "fw";
    case PwmPosition::Bw:
        return "bw";
    }
    return "?";
}

void PwmWidths::validate(int period_us) const
{
    for (const int w : {fw_us, bw_us, home_us})
    {
        if (w <= 0 || w >= period_us)
        {
            throw ConfigError("pulse width " + std::to_string(w) + " us outside (0, period)");
        }
    }
}

PwmChannel make_channel(const PwmWidths &widths)
{
    widths.validate(kPwmPeriodUs);
    PwmChannel ch;
    ch.widths = widths;
    return reset_release(ch);
}

PwmChannel pwm_command(PwmChannel ch, bool fw, bool bw)
{
    if (fw)
    {
        ch.current = PwmPosition::Fw;
        ch.latched_width_us = ch.widths.fw_us;
    }
    else if (bw)
    {
        ch.current = PwmPosition::Bw;
        ch.latched_width_us = ch.widths.bw_us;
    }
    return ch;
}

bool pwm_level(const PwmChannel &ch, int t_in_period_us)
{
    if (t_in_period_us < 0 || t_in_period_us >= ch.period_us)
    {
        throw InputError("time " + std::to_string(t_in_period_us) + " us outside the PWM period");
    }
    return t_in_period_us < ch.latched_width_us;
}

double duty_cycle(const PwmChannel &ch)
{
    return static_cast<double>(ch.latched_width_us) / static_cast<double>(ch.period_us);
}

PwmChannel reset_release(PwmChannel ch)
{
    ch.current = PwmPosition::Home;
    ch.latched_width_us = ch.widths.home_us;
    return ch;
}

PwmBank make_bank(const PwmWidths &widths)
{
    PwmBank bank;
    bank.fill(make_channel(widths));
    return bank;
}

void apply_enables(PwmBank &bank, const EnableVector &lines)
{
    for (int s = 0; s < cpg::kServoCount; ++s)
    {
        auto &ch = bank[static_cast<std::size_t>(s)];
        ch = pwm_command(ch, lines.test(static_cast<std::size_t>(s)),
                lines.test(static_cast<std::size_t>(s + cpg::kServoCount)));
    }
}

void reset_release(PwmBank &bank)
{
    for (auto &ch : bank)
    {
        ch = reset_release(ch);
    }
}

nlohmann::json channel_to_json(const PwmChannel &ch)
{
    return {
        {"position", position_name(ch.current)},
        {"width_us", ch.latched_width_us},
        {"fw_us", ch.widths.fw_us},
        {"bw_us", ch.widths.bw_us},
        {"home_us", ch.widths.home_us},
        {"period_us", ch.period_us},
    };
}

nlohmann::json bank_to_json(const PwmBank &bank)
{
    nlohmann::json out = nlohmann::json::array();
    for (int s = 0; s < cpg::kServoCount; ++s)
    {
        auto j = channel_to_json(bank[static_cast<std::size_t>(s)]);
        j["servo"] = cpg::servo_name(s);
        out.push_back(std::move(j));
    }
    return out;
}

} // namespace neuropod::controller
