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
// config.hpp - scenario files
//
// A scenario is one JSON document:
//   {
//     "name": "gait-change",
//     "duration_ms": 6000,
//     "time_scale_factor": 100,
//     "schedule": [ {"tick": 0, "gait": "walk"}, {"tick": 2000, "button": "up"} ],
//     "config":  { "cpg": {...}, "hexapod": {...}, "pwm": {...}, "link": {...}, "world": {...} },
//     "outputs": { "raster_csv": "raster.csv", "pose_jsonl": "pose.jsonl", ... }
//   }
// Every section and key is optional except duration_ms.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "neuropod/aer/link.hpp"
#include "neuropod/controller/pwm.hpp"
#include "neuropod/cpg/cpg_network.hpp"
#include "neuropod/hexapod/kinematics.hpp"

namespace neuropod::scenario {

struct SystemConfig
{
    cpg::CpgConfig cpg;
    hexapod::LegGeometry geometry;
    controller::PwmWidths pwm;
    aer::LinkFaults uplink_faults;   // controller -> network
    aer::LinkFaults downlink_faults; // network -> controller
    double world_substep_ms = 10.0;  // wall-clock servo integration step

    void validate() const;
};

void update_system_config_from_json(SystemConfig &cfg, const nlohmann::json &j);
nlohmann::json system_config_to_json(const SystemConfig &cfg);

enum class CommandKind : std::uint8_t
{
    SetGait,
    ButtonUp,
    ButtonDown,
    Reset,
};

struct ScheduleEntry
{
    Tick tick = 0;
    CommandKind kind = CommandKind::SetGait;
    cpg::GaitId gait = cpg::GaitId::Walk; // SetGait only
};

struct OutputPaths
{
    std::optional<std::filesystem::path> raster_csv; // motor AER events, tick,addr
    std::optional<std::filesystem::path> spikes_csv; // all spikes, tick,neuron_id
    std::optional<std::filesystem::path> pose_jsonl;
    std::optional<std::filesystem::path> report_json;
    std::optional<std::filesystem::path> link_hex; // first frames of the downlink
    int pose_every_ticks = 1;
};

struct Scenario
{
    std::string name = "scenario";
    Tick duration_ms = 0;
    double time_scale_factor = 100.0;
    std::vector<ScheduleEntry> schedule;
    SystemConfig config;
    OutputPaths outputs;

    /// duration > 0, factor >= 1, schedule sorted and inside the duration.
    void validate() const;
};

Scenario scenario_from_json(const nlohmann::json &j);
nlohmann::json scenario_to_json(const Scenario &s);
/// Reads and validates a scenario file. Throws IoError / ConfigError.
Scenario load_scenario(const std::filesystem::path &path);

} // namespace neuropod::scenario
