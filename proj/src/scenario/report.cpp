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
#include "neuropod/scenario/report.hpp"

#include <algorithm>
#include <fstream>

#include "neuropod/aer/two_of_seven.hpp"
#include "neuropod/controller/latency.hpp"
#include "neuropod/error.hpp"
#include "neuropod/scenario/pipeline.hpp"
#include "neuropod/scenario/raster.hpp"

namespace neuropod::scenario {
namespace {

constexpr std::size_t kLinkHexFrames = 64;

template <typename T>
nlohmann::json opt(const std::optional<T> &v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json opt_gait(const std::optional<cpg::GaitId> &g)
{
    return g ? nlohmann::json(cpg::gait_name(*g)) : nlohmann::json(nullptr);
}

std::filesystem::path resolve(const std::filesystem::path &out_dir, const std::filesystem::path &p)
{
    const auto full = p.is_absolute() || out_dir.empty() ? p : out_dir / p;
    if (full.has_parent_path())
    {
        std::error_code ec;
        std::filesystem::create_directories(full.parent_path(), ec);
    }
    return full;
}

void write_text(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
    {
        throw IoError("cannot write " + path.string());
    }
}

struct Change
{
    Tick tick;
    std::optional<cpg::GaitId> gait; // nullopt for a reset
};

struct TickTrace
{
    std::vector<double> body_x{0.0};
    std::vector<std::optional<double>> min_margin;
    std::vector<std::optional<double>> mean_margin;
};

SegmentReport analyse_segment(cpg::GaitId g, Tick t_start, Tick t_end, const RunArtifacts &a,
        const TickTrace &trace, const Pipeline &p, double factor)
{
    const auto &sigs = p.config().cpg.signatures;
    const auto &sig = sigs[static_cast<std::size_t>(cpg::index_of(g))];
    SegmentReport seg;
    seg.gait = g;
    seg.t_start = t_start;
    seg.t_end = t_end;
    seg.convergence = cpg::convergence_delay(a.motor_events, t_start, g, t_end, sigs);
    if (seg.convergence.saturated)
    {
        return seg;
    }
    const cpg::TickRange steady{t_start + seg.convergence.delay, t_end};
    seg.steady_classification = cpg::classify_window(a.motor_events, steady, sigs);
    seg.phase_error = cpg::signature_error(a.motor_events, steady, sig);
    for (int s = 0; s < cpg::kServoCount; ++s)
    {
        seg.period[static_cast<std::size_t>(s)] =
                cpg::pattern_period(a.motor_events, s, steady).period;
    }
    seg.leg_offsets = cpg::measure_leg_offsets(a.motor_events, steady, sig);
    seg.exclusivity_violations = cpg::exclusivity_violations(a.spikes, p.layout(), steady).size();

    double sum = 0.0;
    int n = 0;
    for (Tick t = steady.begin; t < steady.end; ++t)
    {
        const auto &lo = trace.min_margin[static_cast<std::size_t>(t)];
        const auto &mean = trace.mean_margin[static_cast<std::size_t>(t)];
        if (lo)
        {
            seg.stability_min = seg.stability_min ? std::min(*seg.stability_min, *lo) : *lo;
            sum += *mean;
            ++n;
        }
    }
    if (n > 0)
    {
        seg.stability_mean = sum / n;
    }

    // Whole cycles only, after the servos have settled into the pattern.
    const Tick period = sig.period;
    const Tick ts = steady.begin + cpg::default_window(sigs);
    const Tick cycles = (t_end - ts) / period;
    if (cycles >= 1)
    {
        const Tick te = ts + cycles * period;
        const double dx = trace.body_x[static_cast<std::size_t>(te)] -
                trace.body_x[static_cast<std::size_t>(ts)];
        const double wall_s = static_cast<double>(te - ts) * factor / 1000.0;
        seg.speed_cm_s = dx / wall_s;
        seg.stride_cm = dx / static_cast<double>(cycles);
    }
    return seg;
}

nlohmann::json segment_to_json(const SegmentReport &s, double factor)
{
    nlohmann::json periods = nlohmann::json::array();
    for (const auto &p : s.period)
    {
        periods.push_back(opt(p));
    }
    nlohmann::json conv{
        {"t_change", s.convergence.t_change},
        {"saturated", s.convergence.saturated},
        {"delay_ms", s.convergence.saturated ? nlohmann::json(nullptr)
                                             : nlohmann::json(s.convergence.delay)},
        {"reference_ms", kReferenceGaitChangeMs},
    };
    std::optional<double> coxa_period;
    if (s.period[0])
    {
        coxa_period = *s.period[0];
    }
    return {
        {"gait", cpg::gait_name(s.gait)},
        {"t_start", s.t_start},
        {"t_end", s.t_end},
        {"convergence", conv},
        {"steady_classification", opt_gait(s.steady_classification)},
        {"phase_error_ticks", opt(s.phase_error)},
        {"period_ticks", periods},
        {"cycle_wall_ms", coxa_period ? nlohmann::json(*coxa_period * factor)
                                      : nlohmann::json(nullptr)},
        {"leg_offsets_ticks", opt(s.leg_offsets)},
        {"exclusivity_violations", s.exclusivity_violations},
        {"stability_margin_min_cm", opt(s.stability_min)},
        {"stability_margin_mean_cm", opt(s.stability_mean)},
        {"speed_cm_s", opt(s.speed_cm_s)},
        {"stride_cm", opt(s.stride_cm)},
    };
}

} // namespace

nlohmann::json Report::to_json() const
{
    nlohmann::json segs = nlohmann::json::array();
    nlohmann::json changes = nlohmann::json::array();
    nlohmann::json periods = nlohmann::json::object();
    for (std::size_t i = 0; i < segments.size(); ++i)
    {
        const auto &s = segments[i];
        segs.push_back(segment_to_json(s, time_scale_factor));
        if (i > 0)
        {
            changes.push_back({
                {"from", cpg::gait_name(segments[i - 1].gait)},
                {"to", cpg::gait_name(s.gait)},
                {"t_change", s.t_start},
                {"delay_ms", s.convergence.saturated ? nlohmann::json(nullptr)
                                                     : nlohmann::json(s.convergence.delay)},
                {"saturated", s.convergence.saturated},
                {"reference_ms", kReferenceGaitChangeMs},
            });
        }
        if (s.period[0])
        {
            periods[std::string(cpg::gait_name(s.gait))] = {
                {"ticks", *s.period[0]},
                {"wall_ms", *s.period[0] * time_scale_factor},
            };
        }
    }
    nlohmann::json stabilization = nullptr;
    if (!segments.empty() && !segments.front().convergence.saturated)
    {
        stabilization = segments.front().convergence.delay;
    }
    return {
        {"name", name},
        {"duration_ms", duration_ms},
        {"time_scale_factor", time_scale_factor},
        {"segments", segs},
        {"study_cases",
                {
                        {"resting_to_moving_ms", opt(resting_to_moving)},
                        {"stabilization_time_ms", stabilization},
                        {"movement_period", periods},
                        {"gait_change", changes},
                }},
        {"anchors",
                {
                        {"gait_change_ms", kReferenceGaitChangeMs},
                        {"run_speed_cm_s", kReferenceRunSpeedCmPerS},
                        {"run_cycle_wall_ms", kReferenceRunCycleMs},
                }},
        {"conservation",
                {
                        {"motor_spikes", motor_spikes},
                        {"decoded_fw", decoded_fw},
                        {"decoded_bw", decoded_bw},
                        {"decoder_dropped", decoder_dropped},
                        {"conserved", conserved()},
                        {"flexion_pairs", pairing.fw - pairing.unpaired_fw},
                        {"unpaired_fw", pairing.unpaired_fw},
                        {"unpaired_bw", pairing.unpaired_bw},
                }},
        {"link", {{"uplink", uplink.to_json()}, {"downlink", downlink.to_json()}}},
        {"pwm_warnings", pwm_warnings},
        {"body_distance_cm", body_distance_cm},
        {"latency", latency},
    };
}

std::string report_text(const Report &r)
{
    return r.to_json().dump(2) + "\n";
}

RunArtifacts run_scenario(const Scenario &s, const std::filesystem::path &out_dir)
{
    s.validate();
    Pipeline p(s.config, s.time_scale_factor);
    RunArtifacts a;
    TickTrace trace;
    std::vector<Change> changes;
    std::size_t next = 0;

    auto record_motor = [&a](const TickResult &r) {
        for (const auto &e : r.motor_aer)
        {
            a.motor_aer.push_back(e);
            const bool fw = e.addr < cpg::kServoCount;
            a.motor_events.push_back({e.tick, fw ? e.addr : e.addr - cpg::kServoCount,
                    fw ? cpg::MotorAction::Fw : cpg::MotorAction::Bw});
            if (fw)
            {
                ++a.report.motor_spikes;
            }
            if (a.link_hex_lines.size() < kLinkHexFrames)
            {
                a.link_hex_lines.push_back(
                        aer::format_frame_hex(aer::encode_event(aer::AerEvent{e.addr})));
            }
        }
        for (const auto &c : r.decoded)
        {
            ++(c.action == cpg::MotorAction::Fw ? a.report.decoded_fw : a.report.decoded_bw);
        }
    };

    for (Tick t = 0; t < s.duration_ms; ++t)
    {
        for (; next < s.schedule.size() && s.schedule[next].tick == t; ++next)
        {
            const auto &e = s.schedule[next];
            switch (e.kind)
            {
            case CommandKind::SetGait:
                p.set_gait(e.gait);
                break;
            case CommandKind::ButtonUp:
                p.press_up();
                break;
            case CommandKind::ButtonDown:
                p.press_down();
                break;
            case CommandKind::Reset:
                p.reset();
                changes.push_back({t, std::nullopt});
                break;
            }
        }

        auto r = p.step();
        record_motor(r);
        if (r.gait_sent)
        {
            changes.push_back({t, r.gait_sent});
        }
        a.spikes.insert(a.spikes.end(), r.spikes.begin(), r.spikes.end());
        trace.body_x.push_back(p.world().body.x);
        trace.min_margin.push_back(r.margin_valid ? std::optional(r.min_margin) : std::nullopt);
        trace.mean_margin.push_back(r.margin_valid ? std::optional(r.mean_margin) : std::nullopt);
        if ((t + 1) % s.outputs.pose_every_ticks == 0)
        {
            a.pose_lines.push_back(hexapod::pose_to_json(p.world()).dump());
        }
    }

    record_motor(p.drain());

    auto &rep = a.report;
    rep.name = s.name;
    rep.duration_ms = s.duration_ms;
    rep.time_scale_factor = s.time_scale_factor;
    for (std::size_t i = 0; i < changes.size(); ++i)
    {
        if (!changes[i].gait)
        {
            continue;
        }
        const Tick end = i + 1 < changes.size() ? changes[i + 1].tick : s.duration_ms;
        rep.segments.push_back(analyse_segment(*changes[i].gait, changes[i].tick, end, a, trace, p,
                s.time_scale_factor));
    }
    for (const auto &c : changes)
    {
        if (c.gait)
        {
            for (const auto &e : a.motor_events)
            {
                if (e.tick >= c.tick)
                {
                    rep.resting_to_moving = e.tick - c.tick;
                    break;
                }
            }
            break;
        }
    }
    rep.decoder_dropped = p.decoder().dropped();
    rep.pairing = cpg::check_flexion_pairing(a.motor_aer);
    rep.uplink = p.uplink().health();
    rep.downlink = p.downlink().health();
    rep.pwm_warnings = p.world().pwm_warnings;
    rep.body_distance_cm = p.world().body.x;
    rep.latency = controller::LatencyModel().report();

    const auto &o = s.outputs;
    if (o.raster_csv)
    {
        export_raster(a.motor_aer, resolve(out_dir, *o.raster_csv));
    }
    if (o.spikes_csv)
    {
        std::ofstream out(resolve(out_dir, *o.spikes_csv), std::ios::binary);
        if (!out)
        {
            throw IoError("cannot write " + o.spikes_csv->string());
        }
        snn::write_spike_csv(out, a.spikes);
    }
    if (o.pose_jsonl)
    {
        std::string text;
        for (const auto &line : a.pose_lines)
        {
            text += line;
            text += '\n';
        }
        write_text(resolve(out_dir, *o.pose_jsonl), text);
    }
    if (o.link_hex)
    {
        std::string text;
        for (const auto &line : a.link_hex_lines)
        {
            text += line;
            text += '\n';
        }
        write_text(resolve(out_dir, *o.link_hex), text);
    }
    if (o.report_json)
    {
        write_text(resolve(out_dir, *o.report_json), report_text(rep));
    }
    return a;
}

} // namespace neuropod::scenario
