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
#include "neuropod/live/protocol.hpp"

#include <cmath>

#include "neuropod/error.hpp"
#include "neuropod/scenario/report.hpp"

namespace neuropod::live {
namespace {

nlohmann::json gait_json(const std::optional<cpg::GaitId> &g)
{
    return g ? nlohmann::json(cpg::gait_name(*g)) : nlohmann::json(nullptr);
}

nlohmann::json convergence_json(const std::optional<cpg::ConvergenceResult> &c)
{
    if (!c)
    {
        return nullptr;
    }
    return {
        {"target", cpg::gait_name(c->target)},
        {"t_change", c->t_change},
        {"delay_ms", c->saturated ? nlohmann::json(nullptr) : nlohmann::json(c->delay)},
        {"saturated", c->saturated},
        {"reference_ms", scenario::kReferenceGaitChangeMs},
    };
}

nlohmann::json link_json(const LiveStatus &s)
{
    return {{"uplink", s.uplink.to_json()}, {"downlink", s.downlink.to_json()}};
}

void require(bool ok, const std::string &what)
{
    if (!ok)
    {
        throw ProtocolError(what);
    }
}

void require_member(const nlohmann::json &j, const char *key, bool (nlohmann::json::*kind)() const noexcept,
        const char *kind_name)
{
    require(j.contains(key), std::string("missing member '") + key + "'");
    require((j.at(key).*kind)(), std::string("member '") + key + "' must be " + kind_name);
}

void require_int(const nlohmann::json &j, const char *key)
{
    require_member(j, key, &nlohmann::json::is_number_integer, "an integer");
}

void require_gait_or_null(const nlohmann::json &j, const char *key)
{
    require(j.contains(key), std::string("missing member '") + key + "'");
    const auto &v = j.at(key);
    require(v.is_null() || (v.is_string() && cpg::parse_gait(v.get<std::string>())),
            std::string("member '") + key + "' must be a gait name or null");
}

} // namespace

std::string_view command_name(CommandType t)
{
    switch (t)
    {
    case CommandType::SetGait:
        return "set_gait";
    case CommandType::ButtonUp:
        return "button_up";
    case CommandType::ButtonDown:
        return "button_down";
    case CommandType::Reset:
        return "reset";
    case CommandType::SetScale:
        return "set_scale";
    }
    return "?";
}

Command parse_command(std::string_view line)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(line);
    }
    catch (const nlohmann::json::parse_error &)
    {
        throw ProtocolError("malformed JSON");
    }
    require(j.is_object(), "command must be a JSON object");
    require(j.contains("type") && j.at("type").is_string(), "command needs a string 'type'");

    const auto type = j.at("type").get<std::string>();
    Command c;
    std::vector<std::string> allowed = {"type", "id"};
    if (type == "set_gait")
    {
        c.type = CommandType::SetGait;
        require(j.contains("gait") && j.at("gait").is_number_integer(),
                "set_gait needs an integer 'gait'");
        c.gait = j.at("gait").get<int>();
        require(c.gait >= 0 && c.gait <= 2, "gait must be 0, 1 or 2");
        allowed.emplace_back("gait");
    }
    else if (type == "button_up")
    {
        c.type = CommandType::ButtonUp;
    }
    else if (type == "button_down")
    {
        c.type = CommandType::ButtonDown;
    }
    else if (type == "reset")
    {
        c.type = CommandType::Reset;
    }
    else if (type == "set_scale")
    {
        c.type = CommandType::SetScale;
        require(j.contains("factor") && j.at("factor").is_number(),
                "set_scale needs a numeric 'factor'");
        c.factor = j.at("factor").get<double>();
        require(std::isfinite(c.factor) && c.factor >= 1.0 && c.factor <= kMaxTimeScale,
                "factor must be in [1, 100000]");
        allowed.emplace_back("factor");
    }
    else
    {
        throw ProtocolError("unknown command type '" + type + "'");
    }
    for (const auto &[key, value] : j.items())
    {
        bool known = false;
        for (const auto &a : allowed)
        {
            known = known || key == a;
        }
        require(known, "unexpected member '" + key + "' in " + type);
    }
    if (j.contains("id"))
    {
        const auto &id = j.at("id");
        require(id.is_string() || id.is_number_integer(), "id must be a string or an integer");
        c.id = id;
    }
    return c;
}

nlohmann::json command_to_json(const Command &c)
{
    nlohmann::json j{{"type", command_name(c.type)}};
    if (c.type == CommandType::SetGait)
    {
        j["gait"] = c.gait;
    }
    if (c.type == CommandType::SetScale)
    {
        j["factor"] = c.factor;
    }
    if (!c.id.is_null())
    {
        j["id"] = c.id;
    }
    return j;
}

std::string_view event_name(EventType t)
{
    switch (t)
    {
    case EventType::Snapshot:
        return "snapshot";
    case EventType::Spike:
        return "spike";
    case EventType::Motor:
        return "motor";
    case EventType::Pose:
        return "pose";
    case EventType::Metrics:
        return "metrics";
    case EventType::Ack:
        return "ack";
    case EventType::Error:
        return "error";
    }
    return "?";
}

std::optional<EventType> parse_event_type(std::string_view name)
{
    for (const auto t : {EventType::Snapshot, EventType::Spike, EventType::Motor, EventType::Pose,
                 EventType::Metrics, EventType::Ack, EventType::Error})
    {
        if (event_name(t) == name)
        {
            return t;
        }
    }
    return std::nullopt;
}

nlohmann::json spike_event(std::uint64_t event_id, Tick tick, std::span<const snn::SpikeEvent> spikes)
{
    nlohmann::json ids = nlohmann::json::array();
    for (const auto &s : spikes)
    {
        ids.push_back(s.neuron);
    }
    return {{"type", "spike"}, {"event_id", event_id}, {"tick", tick}, {"neurons", ids}};
}

nlohmann::json motor_event(std::uint64_t event_id, Tick tick, std::span<const aer::TimedAer> events)
{
    nlohmann::json list = nlohmann::json::array();
    for (const auto &e : events)
    {
        const bool fw = e.addr < cpg::kServoCount;
        const int servo = fw ? e.addr : e.addr - cpg::kServoCount;
        list.push_back({{"addr", e.addr}, {"servo", cpg::servo_name(servo)},
                {"action", fw ? "fw" : "bw"}});
    }
    return {{"type", "motor"}, {"event_id", event_id}, {"tick", tick}, {"events", list}};
}

nlohmann::json pose_event(std::uint64_t event_id, const nlohmann::json &pose)
{
    nlohmann::json j = pose;
    j["type"] = "pose";
    j["event_id"] = event_id;
    j["tick"] = pose.at("t_sim_ms");
    return j;
}

nlohmann::json ack_event(std::uint64_t event_id, const Command &c, Tick received_tick,
        Tick effect_tick, std::uint64_t origin)
{
    nlohmann::json j{
        {"type", "ack"},
        {"event_id", event_id},
        {"command", command_to_json(c)},
        {"received_tick", received_tick},
        {"effect_tick", effect_tick},
        {"tick", effect_tick},
        {"origin", origin},
    };
    if (!c.id.is_null())
    {
        j["id"] = c.id;
    }
    return j;
}

nlohmann::json error_event(Tick tick, std::string_view message)
{
    return {{"type", "error"}, {"tick", tick}, {"message", message}};
}

nlohmann::json snapshot_event(const LiveStatus &s)
{
    return {
        {"type", "snapshot"},
        {"protocol", kProtocolVersion},
        {"tick", s.tick},
        {"gait", gait_json(s.gait)},
        {"commanded_gait", gait_json(s.commanded_gait)},
        {"selector", s.selector},
        {"time_scale_factor", s.time_scale_factor},
        {"pose", s.pose},
        {"pwm", s.pwm},
        {"link", link_json(s)},
        {"decoder", s.decoder},
        {"convergence", convergence_json(s.convergence)},
    };
}

nlohmann::json metrics_event(std::uint64_t event_id, const LiveStatus &s)
{
    return {
        {"type", "metrics"},
        {"event_id", event_id},
        {"tick", s.tick},
        {"gait", gait_json(s.gait)},
        {"commanded_gait", gait_json(s.commanded_gait)},
        {"time_scale_factor", s.time_scale_factor},
        {"convergence", convergence_json(s.convergence)},
        {"reference_ms", scenario::kReferenceGaitChangeMs},
        {"drift_ticks", s.drift_ticks},
        {"lateness_ms", s.lateness_ms},
        {"link", link_json(s)},
        {"decoder", s.decoder},
    };
}

std::string with_seq(std::uint64_t seq, std::string_view body)
{
    std::string out = "{\"seq\":" + std::to_string(seq);
    if (body.size() > 2)
    {
        out += ',';
        out.append(body.substr(1));
    }
    else
    {
        out += '}';
    }
    return out;
}

EventType validate_event(const nlohmann::json &j)
{
    require(j.is_object(), "event must be a JSON object");
    require_member(j, "seq", &nlohmann::json::is_number_unsigned, "an unsigned integer");
    require_member(j, "type", &nlohmann::json::is_string, "a string");
    const auto type = parse_event_type(j.at("type").get<std::string>());
    require(type.has_value(), "unknown event type");
    require_int(j, "tick");
    if (*type != EventType::Snapshot && *type != EventType::Error)
    {
        require_member(j, "event_id", &nlohmann::json::is_number_unsigned, "an unsigned integer");
    }
    switch (*type)
    {
    case EventType::Snapshot:
        require_int(j, "protocol");
        require_gait_or_null(j, "gait");
        require_gait_or_null(j, "commanded_gait");
        require_member(j, "pose", &nlohmann::json::is_object, "an object");
        require_member(j, "pwm", &nlohmann::json::is_array, "an array");
        require_member(j, "link", &nlohmann::json::is_object, "an object");
        require(j.at("pose").value("t_sim_ms", Tick{-1}) == j.at("tick").get<Tick>(),
                "snapshot pose tick differs from its tick");
        break;
    case EventType::Spike:
        require_member(j, "neurons", &nlohmann::json::is_array, "an array");
        for (const auto &n : j.at("neurons"))
        {
            require(n.is_number_unsigned(), "neuron ids must be unsigned integers");
        }
        break;
    case EventType::Motor:
        require_member(j, "events", &nlohmann::json::is_array, "an array");
        for (const auto &e : j.at("events"))
        {
            require(e.is_object() && e.contains("addr") && e.at("addr").is_number_unsigned() &&
                            e.at("addr").get<int>() < 2 * cpg::kServoCount,
                    "motor events need an addr in 0..23");
            require(e.value("action", "") == "fw" || e.value("action", "") == "bw",
                    "motor action must be fw or bw");
        }
        break;
    case EventType::Pose:
        require_member(j, "body_xy", &nlohmann::json::is_array, "an array");
        require_member(j, "servo_angles", &nlohmann::json::is_array, "an array");
        require_member(j, "contacts", &nlohmann::json::is_array, "an array");
        require(j.at("body_xy").size() == 2, "body_xy needs two numbers");
        require(j.at("servo_angles").size() == cpg::kServoCount, "servo_angles needs 12 values");
        require(j.at("contacts").size() == cpg::kLegCount, "contacts needs 6 flags");
        require(j.contains("stability_margin") &&
                        (j.at("stability_margin").is_number() || j.at("stability_margin").is_null()),
                "stability_margin must be a number or null");
        break;
    case EventType::Metrics:
        require_gait_or_null(j, "gait");
        require(j.contains("convergence") &&
                        (j.at("convergence").is_object() || j.at("convergence").is_null()),
                "convergence must be an object or null");
        break;
    case EventType::Ack:
        require_member(j, "command", &nlohmann::json::is_object, "an object");
        require_int(j, "received_tick");
        require_int(j, "effect_tick");
        break;
    case EventType::Error:
        require_member(j, "message", &nlohmann::json::is_string, "a string");
        break;
    }
    return *type;
}

} // namespace neuropod::live
