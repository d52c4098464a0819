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
// protocol.hpp - live-service wire messages
//
// One JSON object per line (or per WebSocket text frame). Commands flow from
// clients to the service; events flow back and carry a per-connection "seq".
// See docs/protocol.md and schemas/ for the full contract.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "neuropod/aer/aer_event.hpp"
#include "neuropod/aer/link.hpp"
#include "neuropod/cpg/analysis.hpp"
#include "neuropod/tick.hpp"

namespace neuropod::live {

inline constexpr int kProtocolVersion = 1;
inline constexpr double kMaxTimeScale = 100000.0;

enum class CommandType : std::uint8_t
{
    SetGait,
    ButtonUp,
    ButtonDown,
    Reset,
    SetScale,
};

std::string_view command_name(CommandType t);

struct Command
{
    CommandType type = CommandType::Reset;
    int gait = 0;        // SetGait: 0 walk, 1 trot, 2 run
    double factor = 1.0; // SetScale: >= 1
    nlohmann::json id;   // optional client correlation id, echoed in the ack

    bool operator==(const Command &) const = default;
};

/// Throws ProtocolError with a client-facing message on any malformed input:
/// bad JSON, unknown type, missing or out-of-range payload.
Command parse_command(std::string_view line);
nlohmann::json command_to_json(const Command &c);

enum class EventType : std::uint8_t
{
    Snapshot,
    Spike,
    Motor,
    Pose,
    Metrics,
    Ack,
    Error,
};

std::string_view event_name(EventType t);
std::optional<EventType> parse_event_type(std::string_view name);

// Event bodies, without the per-connection seq (added on delivery).
nlohmann::json spike_event(std::uint64_t event_id, Tick tick, std::span<const snn::SpikeEvent> spikes);
nlohmann::json motor_event(std::uint64_t event_id, Tick tick, std::span<const aer::TimedAer> events);
nlohmann::json pose_event(std::uint64_t event_id, const nlohmann::json &pose);
nlohmann::json ack_event(std::uint64_t event_id, const Command &c, Tick received_tick,
        Tick effect_tick, std::uint64_t origin);
nlohmann::json error_event(Tick tick, std::string_view message);

/// Everything snapshot and metrics messages report, captured on the
/// simulation thread at a tick boundary.
struct LiveStatus
{
    Tick tick = 0;
    std::optional<cpg::GaitId> gait;           // classification of the latest window
    std::optional<cpg::GaitId> commanded_gait; // last gait delivered to the network
    int selector = 0;
    double time_scale_factor = 100.0;
    nlohmann::json pose;
    nlohmann::json pwm;
    aer::LinkHealth uplink;
    aer::LinkHealth downlink;
    nlohmann::json decoder;
    std::optional<cpg::ConvergenceResult> convergence;
    double drift_ticks = 0.0;  // wall clock minus schedule, in tick periods
    double lateness_ms = 0.0;  // wake-up lateness of the latest tick
};

nlohmann::json snapshot_event(const LiveStatus &s);
nlohmann::json metrics_event(std::uint64_t event_id, const LiveStatus &s);

/// Inserts "seq" as the first member of a serialized event body.
std::string with_seq(std::uint64_t seq, std::string_view body);

/// Structural check of a received event (type known, required members of the
/// right kind, seq present). Throws ProtocolError.
EventType validate_event(const nlohmann::json &j);

} // namespace neuropod::live
