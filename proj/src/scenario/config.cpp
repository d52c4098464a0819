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
#include "neuropod/scenario/config.hpp"

#include <fstream>
#include <sstream>

#include "neuropod/error.hpp"

namespace neuropod::scenario {
namespace {

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
        throw ConfigError(std::string("bad value for ") + key + ": " + e.what());
    }
}

void read_faults(const nlohmann::json &j, const char *key, aer::LinkFaults &f)
{
    if (j.contains(key))
    {
        read_if(j.at(key), "flip_every_n_frames", f.flip_every_n_frames);
        read_if(j.at(key), "flip_bit", f.flip_bit);
    }
}

nlohmann::json faults_to_json(const aer::LinkFaults &f)
{
    return {{"flip_every_n_frames", f.flip_every_n_frames}, {"flip_bit", f.flip_bit}};
}

cpg::GaitId gait_from_json(const nlohmann::json &v)
{
    std::optional<cpg::GaitId> g;
    if (v.is_string())
    {
        g = cpg::parse_gait(v.get<std::string>());
    }
    else if (v.is_number_integer())
    {
        g = cpg::gait_from_index(v.get<int>());
    }
    if (!g)
    {
        throw ConfigError("unknown gait " + v.dump());
    }
    return *g;
}

ScheduleEntry entry_from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("tick") || !j.at("tick").is_number_integer())
    {
        throw ConfigError("schedule entries need an integer tick: " + j.dump());
    }
    ScheduleEntry e;
    e.tick = j.at("tick").get<Tick>();
    if (j.contains("gait"))
    {
        e.kind = CommandKind::SetGait;
        e.gait = gait_from_json(j.at("gait"));
    }
    else if (j.contains("button"))
    {
        const auto b = j.at("button");
        if (b == "up")
        {
            e.kind = CommandKind::ButtonUp;
        }
        else if (b == "down")
        {
            e.kind = CommandKind::ButtonDown;
        }
        else
        {
            throw ConfigError("button must be \"up\" or \"down\": " + j.dump());
        }
    }
    else if (j.value("reset", false))
    {
        e.kind = CommandKind::Reset;
    }
    else
    {
        throw ConfigError("schedule entry needs gait, button or reset: " + j.dump());
    }
    return e;
}

nlohmann::json entry_to_json(const ScheduleEntry &e)
{
    nlohmann::json j{{"tick", e.tick}};
    switch (e.kind)
    {
    case CommandKind::SetGait:
        j["gait"] = cpg::gait_name(e.gait);
        break;
    case CommandKind::ButtonUp:
        j["button"] = "up";
        break;
    case CommandKind::ButtonDown:
        j["button"] = "down";
        break;
    case CommandKind::Reset:
        j["reset"] = true;
        break;
    }
    return j;
}

void read_path(const nlohmann::json &j, const char *key, std::optional<std::filesystem::path> &p)
{
    if (j.contains(key) && !j.at(key).is_null())
    {
        p = j.at(key).get<std::string>();
    }
}

} // namespace

void SystemConfig::validate() const
{
    cpg.validate();
    geometry.validate();
    pwm.validate(controller::kPwmPeriodUs);
    if (!(world_substep_ms > 0))
    {
        throw ConfigError("world substep must be positive");
    }
    for (const auto *f : {&uplink_faults, &downlink_faults})
    {
        if (f->flip_every_n_frames < 0 || f->flip_bit < 0 || f->flip_bit > 6)
        {
            throw ConfigError("link fault settings out of range");
        }
    }
}

void update_system_config_from_json(SystemConfig &cfg, const nlohmann::json &j)
{
    if (!j.is_object())
    {
        throw ConfigError("config section must be an object");
    }
    if (j.contains("cpg"))
    {
        cpg::update_cpg_config_from_json(cfg.cpg, j.at("cpg"));
    }
    if (j.contains("hexapod"))
    {
        hexapod::update_geometry_from_json(cfg.geometry, j.at("hexapod"));
    }
    if (j.contains("pwm"))
    {
        const auto &p = j.at("pwm");
        read_if(p, "fw_us", cfg.pwm.fw_us);
        read_if(p, "bw_us", cfg.pwm.bw_us);
        read_if(p, "home_us", cfg.pwm.home_us);
    }
    if (j.contains("link"))
    {
        read_faults(j.at("link"), "uplink_faults", cfg.uplink_faults);
        read_faults(j.at("link"), "downlink_faults", cfg.downlink_faults);
    }
    if (j.contains("world"))
    {
        read_if(j.at("world"), "substep_ms", cfg.world_substep_ms);
    }
    cfg.validate();
}

nlohmann::json system_config_to_json(const SystemConfig &cfg)
{
    return {
        {"cpg", cpg::cpg_config_to_json(cfg.cpg)},
        {"hexapod", hexapod::geometry_to_json(cfg.geometry)},
        {"pwm", {{"fw_us", cfg.pwm.fw_us}, {"bw_us", cfg.pwm.bw_us}, {"home_us", cfg.pwm.home_us}}},
        {"link", {{"uplink_faults", faults_to_json(cfg.uplink_faults)},
                         {"downlink_faults", faults_to_json(cfg.downlink_faults)}}},
        {"world", {{"substep_ms", cfg.world_substep_ms}}},
    };
}

void Scenario::validate() const
{
    if (duration_ms <= 0)
    {
        throw ConfigError("duration_ms must be > 0");
    }
    if (!(time_scale_factor >= 1.0))
    {
        throw ConfigError("time_scale_factor must be >= 1");
    }
    Tick prev = 0;
    for (const auto &e : schedule)
    {
        if (e.tick < prev)
        {
            throw ConfigError("schedule is not sorted by tick");
        }
        if (e.tick >= duration_ms)
        {
            throw ConfigError("schedule entry at tick " + std::to_string(e.tick) +
                    " is not before the end of the scenario");
        }
        prev = e.tick;
    }
    if (outputs.pose_every_ticks < 1)
    {
        throw ConfigError("pose_every_ticks must be >= 1");
    }
    config.validate();
}

Scenario scenario_from_json(const nlohmann::json &j)
{
    if (!j.is_object())
    {
        throw ConfigError("scenario must be a JSON object");
    }
    Scenario s;
    read_if(j, "name", s.name);
    if (!j.contains("duration_ms"))
    {
        throw ConfigError("scenario needs duration_ms");
    }
    read_if(j, "duration_ms", s.duration_ms);
    read_if(j, "time_scale_factor", s.time_scale_factor);
    if (j.contains("schedule"))
    {
        if (!j.at("schedule").is_array())
        {
            throw ConfigError("schedule must be an array");
        }
        for (const auto &e : j.at("schedule"))
        {
            s.schedule.push_back(entry_from_json(e));
        }
    }
    if (j.contains("config"))
    {
        update_system_config_from_json(s.config, j.at("config"));
    }
    if (j.contains("outputs"))
    {
        const auto &o = j.at("outputs");
        try
        {
            read_path(o, "raster_csv", s.outputs.raster_csv);
            read_path(o, "spikes_csv", s.outputs.spikes_csv);
            read_path(o, "pose_jsonl", s.outputs.pose_jsonl);
            read_path(o, "report_json", s.outputs.report_json);
            read_path(o, "link_hex", s.outputs.link_hex);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ConfigError(std::string("output paths must be strings: ") + e.what());
        }
        read_if(o, "pose_every_ticks", s.outputs.pose_every_ticks);
    }
    s.validate();
    return s;
}

nlohmann::json scenario_to_json(const Scenario &s)
{
    nlohmann::json schedule = nlohmann::json::array();
    for (const auto &e : s.schedule)
    {
        schedule.push_back(entry_to_json(e));
    }
    nlohmann::json outputs{{"pose_every_ticks", s.outputs.pose_every_ticks}};
    auto put = [&](const char *key, const std::optional<std::filesystem::path> &p) {
        if (p)
        {
            outputs[key] = p->generic_string();
        }
    };
    put("raster_csv", s.outputs.raster_csv);
    put("spikes_csv", s.outputs.spikes_csv);
    put("pose_jsonl", s.outputs.pose_jsonl);
    put("report_json", s.outputs.report_json);
    put("link_hex", s.outputs.link_hex);
    return {
        {"name", s.name},
        {"duration_ms", s.duration_ms},
        {"time_scale_factor", s.time_scale_factor},
        {"schedule", schedule},
        {"config", system_config_to_json(s.config)},
        {"outputs", outputs},
    };
}

Scenario load_scenario(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw IoError("cannot open scenario " + path.string());
    }
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw ConfigError("scenario " + path.string() + ": " + e.what());
    }
    return scenario_from_json(j);
}

} // namespace neuropod::scenario
