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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "neuropod/aer/link.hpp"
#include "neuropod/cpg/analysis.hpp"
#include "neuropod/scenario/config.hpp"

namespace neuropod::scenario {

/// Gait-change delay reported by the original robot (walk to trot).
inline constexpr double kReferenceGaitChangeMs = 23.0;
/// Forward speed reported for the run gait at time_scale_factor 100.
inline constexpr double kReferenceRunSpeedCmPerS = 1.66;
/// Wall-clock cycle of the run sCPG at time_scale_factor 100.
inline constexpr double kReferenceRunCycleMs = 800.0;

/// One stretch of constant commanded gait.
struct SegmentReport
{
    cpg::GaitId gait = cpg::GaitId::Walk;
    Tick t_start = 0;
    Tick t_end = 0;
    cpg::ConvergenceResult convergence;
    std::optional<cpg::GaitId> steady_classification;
    std::optional<int> phase_error; // worst per-leg error over the steady part
    std::array<std::optional<double>, cpg::kServoCount> period{}; // ticks
    std::optional<std::array<int, cpg::kLegCount>> leg_offsets;
    std::size_t exclusivity_violations = 0;
    std::optional<double> stability_min;
    std::optional<double> stability_mean;
    std::optional<double> speed_cm_s;
    std::optional<double> stride_cm; // body advance per gait cycle
};

struct Report
{
    std::string name;
    Tick duration_ms = 0;
    double time_scale_factor = 100.0;
    std::vector<SegmentReport> segments;
    std::optional<Tick> resting_to_moving; // first stimulus -> first motor event
    std::size_t motor_spikes = 0;
    std::size_t decoded_fw = 0;
    std::size_t decoded_bw = 0;
    std::size_t decoder_dropped = 0;
    cpg::PairingReport pairing;
    aer::LinkHealth uplink;
    aer::LinkHealth downlink;
    std::uint64_t pwm_warnings = 0;
    double body_distance_cm = 0.0;
    nlohmann::json latency;

    [[nodiscard]] bool conserved() const
    {
        return motor_spikes == decoded_fw && decoded_fw == decoded_bw;
    }
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Everything a run produced, for callers that want more than the report.
struct RunArtifacts
{
    Report report;
    snn::SpikeTrain spikes;
    aer::AerLog motor_aer;
    std::vector<cpg::MotorEvent> motor_events;
    std::vector<std::string> pose_lines;
    std::vector<std::string> link_hex_lines;
};

/// Runs the whole pipeline; writes the outputs named in the scenario and
/// relative paths resolve against out_dir.
RunArtifacts run_scenario(const Scenario &s, const std::filesystem::path &out_dir = {});

/// Canonical text of the report (sorted keys, 2-space indent, trailing newline).
std::string report_text(const Report &r);

} // namespace neuropod::scenario
