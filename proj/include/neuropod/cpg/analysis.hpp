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

// analysis.hpp - motor event extraction and gait measurements
//
// Everything here is a pure function over event lists. Tick ranges are
// half-open [begin, end).

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "neuropod/aer/aer_event.hpp"
#include "neuropod/cpg/cpg_network.hpp"
#include "neuropod/cpg/gait.hpp"

namespace neuropod::cpg {

enum class MotorAction : std::uint8_t
{
    Fw = 0,
    Bw = 1,
};

struct MotorEvent
{
    Tick tick = 0;
    int servo = 0;
    MotorAction action = MotorAction::Fw;

    auto operator<=>(const MotorEvent &) const = default;
};

/// AER address of a motor command: servo for FW, servo + 12 for BW.
constexpr std::uint16_t motor_address(int servo, MotorAction a)
{
    return static_cast<std::uint16_t>(servo + (a == MotorAction::Bw ? kServoCount : 0));
}

struct MotorStream
{
    std::vector<MotorEvent> events; // sorted by (tick, address)
    aer::AerLog aer;                // same events as addresses
};

/// A motor spike for servo k at t becomes FW k @ t and BW k+12 @ t+1.
/// Spikes of non-motor neurons are skipped.
MotorStream motor_events(std::span<const snn::SpikeEvent> train, const CpgNetworkLayout &layout);

struct TickRange
{
    Tick begin = 0;
    Tick end = 0;

    [[nodiscard]] Tick length() const { return end - begin; }
    [[nodiscard]] bool contains(Tick t) const { return t >= begin && t < end; }
};

/// Per-leg coxa FW ticks inside the window.
std::array<std::vector<Tick>, kLegCount> coxa_fw_ticks(std::span<const MotorEvent> events,
        TickRange window);

/// Worst per-leg phase error (ticks) of the window against `sig`; nullopt if
/// the window does not hold a steady pattern with that period.
std::optional<int> signature_error(std::span<const MotorEvent> events, TickRange window,
        const GaitSignature &sig);

/// The gait whose signature matches with per-leg error <= 1 tick, if any.
std::optional<GaitId> classify_window(std::span<const MotorEvent> events, TickRange window,
        const std::array<GaitSignature, 3> &sigs = default_signatures());

/// Default sliding-window length: two periods of the slowest gait.
int default_window(const std::array<GaitSignature, 3> &sigs);

struct ConvergenceResult
{
    GaitId target = GaitId::Walk;
    Tick t_change = 0;
    Tick delay = 0;         // valid unless saturated
    bool saturated = false; // never settled before the horizon
};

/// Smallest d such that every window of length `window` starting at or after
/// t_change + d (and ending by horizon_end) classifies as `target`.
ConvergenceResult convergence_delay(std::span<const MotorEvent> events, Tick t_change,
        GaitId target, Tick horizon_end,
        const std::array<GaitSignature, 3> &sigs = default_signatures(), int window = 0);

struct PeriodResult
{
    std::optional<double> period; // nullopt: fewer than 3 FW events
    int event_count = 0;
};

/// Median interval between FW events of one servo.
PeriodResult pattern_period(std::span<const MotorEvent> events, int servo, TickRange window);

/// Coxa FW tick offset of each leg relative to the reference leg of `sig`,
/// reduced mod the period; nullopt when a leg has no event in the window.
std::optional<std::array<int, kLegCount>> measure_leg_offsets(std::span<const MotorEvent> events,
        TickRange window, const GaitSignature &sig);

/// Ticks in the range on which pacemakers of more than one sCPG fired.
std::vector<Tick> exclusivity_violations(std::span<const snn::SpikeEvent> train,
        const CpgNetworkLayout &layout, TickRange range);

/// Gaits whose pacemakers fired at least once in the range.
std::vector<GaitId> active_scpgs(std::span<const snn::SpikeEvent> train,
        const CpgNetworkLayout &layout, TickRange range);

struct PairingReport
{
    std::size_t fw = 0;
    std::size_t bw = 0;
    std::size_t unpaired_fw = 0;
    std::size_t unpaired_bw = 0;

    [[nodiscard]] bool exact() const { return unpaired_fw == 0 && unpaired_bw == 0 && fw == bw; }
};

/// Matches every FW address k @ t with a BW address k+12 @ t+1.
PairingReport check_flexion_pairing(std::span<const aer::TimedAer> log);

} // namespace neuropod::cpg
