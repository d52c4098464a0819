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

#include "neuropod/cpg/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace neuropod::cpg {
namespace {

Tick mod(Tick a, Tick p)
{
    const Tick r = a % p;
    return r < 0 ? r + p : r;
}

Tick circular_distance(Tick a, Tick b, Tick p)
{
    const Tick d = mod(a - b, p);
    return std::min(d, p - d);
}

std::span<const MotorEvent> slice(std::span<const MotorEvent> events, TickRange w)
{
    auto lo = std::lower_bound(events.begin(), events.end(), w.begin,
            [](const MotorEvent &e, Tick t) { return e.tick < t; });
    auto hi = std::lower_bound(lo, events.end(), w.end,
            [](const MotorEvent &e, Tick t) { return e.tick < t; });
    return {lo, hi};
}

} // namespace

MotorStream motor_events(std::span<const snn::SpikeEvent> train, const CpgNetworkLayout &layout)
{
    MotorStream out;
    for (const auto &s : train)
    {
        const int servo = layout.servo_of(s.neuron);
        if (servo < 0)
        {
            continue;
        }
        out.events.push_back({s.tick, servo, MotorAction::Fw});
        out.events.push_back({s.tick + 1, servo, MotorAction::Bw});
    }
    std::sort(out.events.begin(), out.events.end(), [](const MotorEvent &a, const MotorEvent &b) {
        const auto ka = motor_address(a.servo, a.action);
        const auto kb = motor_address(b.servo, b.action);
        return a.tick != b.tick ? a.tick < b.tick : ka < kb;
    });
    out.aer.reserve(out.events.size());
    for (const auto &e : out.events)
    {
        out.aer.push_back({e.tick, motor_address(e.servo, e.action)});
    }
    return out;
}

std::array<std::vector<Tick>, kLegCount> coxa_fw_ticks(std::span<const MotorEvent> events,
        TickRange window)
{
    std::array<std::vector<Tick>, kLegCount> out;
    for (const auto &e : slice(events, window))
    {
        if (e.action == MotorAction::Fw && joint_of_servo(e.servo) == Joint::Coxa)
        {
            out[static_cast<std::size_t>(leg_of_servo(e.servo))].push_back(e.tick);
        }
    }
    return out;
}

std::optional<int> signature_error(std::span<const MotorEvent> events, TickRange window,
        const GaitSignature &sig)
{
    const Tick p = sig.period;
    if (p <= 0 || window.length() < 2 * p)
    {
        return std::nullopt;
    }
    const auto legs = coxa_fw_ticks(events, window);
    for (const auto &ticks : legs)
    {
        if (ticks.size() < 2)
        {
            return std::nullopt;
        }
        if (ticks.front() - window.begin > p || (window.end - 1) - ticks.back() > p)
        {
            return std::nullopt;
        }
        for (std::size_t i = 1; i < ticks.size(); ++i)
        {
            const Tick gap = ticks[i] - ticks[i - 1];
            if (gap < p - 1 || gap > p + 1)
            {
                return std::nullopt;
            }
        }
    }

    const auto offsets = sig.tick_offset_of_leg();
    const int ref = sig.reference_leg();
    const Tick t_ref = legs[static_cast<std::size_t>(ref)].front();
    Tick worst = 0;
    for (int leg = 0; leg < kLegCount; ++leg)
    {
        const Tick expected = offsets[static_cast<std::size_t>(leg)] -
                offsets[static_cast<std::size_t>(ref)];
        for (const Tick t : legs[static_cast<std::size_t>(leg)])
        {
            worst = std::max(worst, circular_distance(t - t_ref, expected, p));
        }
    }
    return static_cast<int>(worst);
}

std::optional<GaitId> classify_window(std::span<const MotorEvent> events, TickRange window,
        const std::array<GaitSignature, 3> &sigs)
{
    std::optional<GaitId> best;
    int best_err = 2;
    for (const auto g : kAllGaits)
    {
        const auto err = signature_error(events, window, sigs[static_cast<std::size_t>(index_of(g))]);
        if (err && *err <= 1 && *err < best_err)
        {
            best = g;
            best_err = *err;
        }
    }
    return best;
}

int default_window(const std::array<GaitSignature, 3> &sigs)
{
    int p = 0;
    for (const auto &s : sigs)
    {
        p = std::max(p, s.period);
    }
    return 2 * p;
}

ConvergenceResult convergence_delay(std::span<const MotorEvent> events, Tick t_change,
        GaitId target, Tick horizon_end, const std::array<GaitSignature, 3> &sigs, int window)
{
    ConvergenceResult out;
    out.target = target;
    out.t_change = t_change;
    const Tick w = window > 0 ? window : default_window(sigs);
    const Tick last_start = horizon_end - w;
    if (last_start < t_change)
    {
        out.saturated = true;
        return out;
    }
    for (Tick s = last_start; s >= t_change; --s)
    {
        if (classify_window(events, {s, s + w}, sigs) != target)
        {
            if (s == last_start)
            {
                out.saturated = true;
                return out;
            }
            out.delay = s + 1 - t_change;
            return out;
        }
    }
    out.delay = 0;
    return out;
}

PeriodResult pattern_period(std::span<const MotorEvent> events, int servo, TickRange window)
{
    std::vector<Tick> ticks;
    for (const auto &e : slice(events, window))
    {
        if (e.servo == servo && e.action == MotorAction::Fw)
        {
            ticks.push_back(e.tick);
        }
    }
    PeriodResult out;
    out.event_count = static_cast<int>(ticks.size());
    if (ticks.size() < 3)
    {
        return out;
    }
    std::vector<Tick> gaps;
    for (std::size_t i = 1; i < ticks.size(); ++i)
    {
        gaps.push_back(ticks[i] - ticks[i - 1]);
    }
    std::sort(gaps.begin(), gaps.end());
    const std::size_t n = gaps.size();
    out.period = n % 2 == 1 ? static_cast<double>(gaps[n / 2])
                            : 0.5 * static_cast<double>(gaps[n / 2 - 1] + gaps[n / 2]);
    return out;
}

std::optional<std::array<int, kLegCount>> measure_leg_offsets(std::span<const MotorEvent> events,
        TickRange window, const GaitSignature &sig)
{
    const auto legs = coxa_fw_ticks(events, window);
    for (const auto &ticks : legs)
    {
        if (ticks.empty())
        {
            return std::nullopt;
        }
    }
    const int ref = sig.reference_leg();
    const Tick t_ref = legs[static_cast<std::size_t>(ref)].front();
    std::array<int, kLegCount> out{};
    for (int leg = 0; leg < kLegCount; ++leg)
    {
        out[static_cast<std::size_t>(leg)] = static_cast<int>(
                mod(legs[static_cast<std::size_t>(leg)].front() - t_ref, sig.period));
    }
    return out;
}

std::vector<Tick> exclusivity_violations(std::span<const snn::SpikeEvent> train,
        const CpgNetworkLayout &layout, TickRange range)
{
    std::map<Tick, std::set<int>> per_tick;
    for (const auto &s : train)
    {
        if (!range.contains(s.tick))
        {
            continue;
        }
        const int g = layout.pacemaker_gait(s.neuron);
        if (g >= 0)
        {
            per_tick[s.tick].insert(g);
        }
    }
    std::vector<Tick> out;
    for (const auto &[t, gaits] : per_tick)
    {
        if (gaits.size() > 1)
        {
            out.push_back(t);
        }
    }
    return out;
}

std::vector<GaitId> active_scpgs(std::span<const snn::SpikeEvent> train,
        const CpgNetworkLayout &layout, TickRange range)
{
    std::set<int> seen;
    for (const auto &s : train)
    {
        if (range.contains(s.tick))
        {
            const int g = layout.pacemaker_gait(s.neuron);
            if (g >= 0)
            {
                seen.insert(g);
            }
        }
    }
    std::vector<GaitId> out;
    for (const int g : seen)
    {
        out.push_back(*gait_from_index(g));
    }
    return out;
}

PairingReport check_flexion_pairing(std::span<const aer::TimedAer> log)
{
    PairingReport out;
    std::multiset<std::pair<Tick, int>> expected_bw;
    std::multiset<std::pair<Tick, int>> seen_bw;
    for (const auto &e : log)
    {
        if (e.addr < kServoCount)
        {
            ++out.fw;
            expected_bw.insert({e.tick + 1, e.addr + kServoCount});
        }
        else if (e.addr < 2 * kServoCount)
        {
            ++out.bw;
            seen_bw.insert({e.tick, e.addr});
        }
    }
    for (const auto &key : seen_bw)
    {
        auto it = expected_bw.find(key);
        if (it == expected_bw.end())
        {
            ++out.unpaired_bw;
        }
        else
        {
            expected_bw.erase(it);
        }
    }
    out.unpaired_fw = expected_bw.size();
    return out;
}

} // namespace neuropod::cpg
