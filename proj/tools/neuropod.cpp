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
// neuropod - batch runner, latency report, self test and live service

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "neuropod/aer/two_of_seven.hpp"
#include "neuropod/controller/decoder.hpp"
#include "neuropod/controller/latency.hpp"
#include "neuropod/error.hpp"
#include "neuropod/scenario/report.hpp"

#if NEUROPOD_HAVE_LIVE
#include "neuropod/live/service.hpp"
#endif

namespace {

using namespace neuropod;

std::atomic<bool> g_stop{false};

void on_signal(int)
{
    g_stop = true;
}

nlohmann::json read_json(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw IoError("cannot open " + path);
    }
    try
    {
        return nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw ConfigError(path + ": " + e.what());
    }
}

int cmd_run(const std::string &file, const std::string &out_dir, std::optional<double> scale)
{
    auto s = scenario::load_scenario(file);
    if (scale)
    {
        s.time_scale_factor = *scale;
        s.validate();
    }
    const auto art = scenario::run_scenario(s, out_dir);
    const auto &r = art.report;
    std::printf("%s: %lld ticks, %zu motor spikes, conserved=%s, pairing=%s\n", r.name.c_str(),
            static_cast<long long>(r.duration_ms), r.motor_spikes, r.conserved() ? "yes" : "no",
            r.pairing.exact() ? "exact" : "broken");
    for (const auto &seg : r.segments)
    {
        const auto &c = seg.convergence;
        char conv[48];
        if (c.saturated)
        {
            std::snprintf(conv, sizeof conv, "saturated");
        }
        else
        {
            std::snprintf(conv, sizeof conv, "%lld ms", static_cast<long long>(c.delay));
        }
        std::printf("  %-4s @%-6lld convergence %-10s (reference %.0f ms)  steady=%s",
                std::string(cpg::gait_name(seg.gait)).c_str(),
                static_cast<long long>(seg.t_start), conv, scenario::kReferenceGaitChangeMs,
                seg.steady_classification
                        ? std::string(cpg::gait_name(*seg.steady_classification)).c_str()
                        : "none");
        if (seg.speed_cm_s)
        {
            std::printf("  speed %.3f cm/s", *seg.speed_cm_s);
        }
        if (seg.stability_min)
        {
            std::printf("  min margin %.3f cm", *seg.stability_min);
        }
        std::printf("\n");
    }
    const bool faults = s.config.uplink_faults.flip_every_n_frames > 0 ||
            s.config.downlink_faults.flip_every_n_frames > 0;
    // Injected link faults lose events by design.
    return faults || (r.conserved() && r.pairing.exact()) ? 0 : 1;
}

int cmd_latency()
{
    std::cout << controller::LatencyModel().report().dump(2) << "\n";
    return 0;
}

int cmd_selftest()
{
    int failures = 0;
    auto check = [&](const char *name, bool ok) {
        std::printf("%s %s\n", ok ? "ok  " : "FAIL", name);
        failures += ok ? 0 : 1;
    };

    bool decode_ok = true;
    for (int a = 0; a < controller::kDecodedAddresses; ++a)
    {
        const auto c = controller::decode_event({static_cast<std::uint16_t>(a)});
        decode_ok = decode_ok && controller::encode_command(c).addr == a;
    }
    try
    {
        (void)controller::decode_event({24});
        decode_ok = false;
    }
    catch (const OutOfRangeError &)
    {
    }
    check("decode table", decode_ok);

    check("latency total 3457.78 ns",
            controller::LatencyModel().total().ns_text() == "3457.78");

    bool codec_ok = true;
    for (unsigned a = 0; a <= 0xFFFF && codec_ok; a += 257)
    {
        const aer::AerEvent e{static_cast<std::uint16_t>(a)};
        codec_ok = aer::decode_frame(aer::encode_event(e)) == e;
    }
    check("2-of-7 round trip", codec_ok);

    scenario::Scenario s;
    s.name = "selftest";
    s.duration_ms = 400;
    s.schedule.push_back({0, scenario::CommandKind::SetGait, cpg::GaitId::Run});
    const auto rep = scenario::run_scenario(s).report;
    const bool run_ok = !rep.segments.empty() &&
            rep.segments.front().steady_classification == cpg::GaitId::Run;
    check("run gait pipeline", run_ok && rep.conserved() && rep.pairing.exact());
    return failures == 0 ? 0 : 1;
}

#if NEUROPOD_HAVE_LIVE
int cmd_serve(std::uint16_t port, double scale, const std::string &config, const std::string &bind)
{
    live::ServiceOptions opts;
    opts.port = port;
    opts.time_scale_factor = scale;
    if (!bind.empty())
    {
        opts.bind_address = bind;
    }
    if (!config.empty())
    {
        scenario::update_system_config_from_json(opts.system, read_json(config));
    }
    live::LiveService svc(opts);
    svc.start();
    std::printf("serving on port %u (time scale %g)\n", svc.port(), scale);
    std::fflush(stdout);
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    while (!g_stop)
    {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    svc.stop();
    const auto st = svc.stats();
    std::printf("stopped after %lld ticks, max lateness %.3f ms\n",
            static_cast<long long>(st.ticks), st.max_lateness_ms);
    return 0;
}
#endif

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"NeuroPod simulator"};
    app.require_subcommand(1);

    std::string scenario_file;
    std::string out_dir = ".";
    std::optional<double> run_scale;
    long long seed = 0;
    auto *run = app.add_subcommand("run", "run a scenario file");
    run->add_option("scenario", scenario_file, "scenario JSON")->required()->check(CLI::ExistingFile);
    run->add_option("--out-dir", out_dir, "directory for relative output paths");
    run->add_option("--seed", seed, "accepted for compatibility; runs are deterministic");
    run->add_option("--time-scale", run_scale, "wall ms per tick")->check(CLI::Range(1.0, 100000.0));

    auto *lat = app.add_subcommand("latency-report", "print the controller latency table");
    auto *self = app.add_subcommand("selftest", "quick end-to-end checks");

#if NEUROPOD_HAVE_LIVE
    std::uint16_t port = 7878;
    double serve_scale = 100.0;
    std::string config;
    std::string bind;
    auto *serve = app.add_subcommand("serve", "run the live service");
    serve->add_option("--port", port, "TCP port (0 = any)");
    serve->add_option("--time-scale", serve_scale, "wall ms per tick")
            ->check(CLI::Range(1.0, 100000.0));
    serve->add_option("--config", config, "system config JSON")->check(CLI::ExistingFile);
    serve->add_option("--bind", bind, "bind address (env NEUROPOD_BIND_ADDRESS wins)");
#endif

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
        {
            return cmd_run(scenario_file, out_dir, run_scale);
        }
        if (*lat)
        {
            return cmd_latency();
        }
        if (*self)
        {
            return cmd_selftest();
        }
#if NEUROPOD_HAVE_LIVE
        if (*serve)
        {
            return cmd_serve(port, serve_scale, config, bind);
        }
#endif
    }
    catch (const neuropod::Error &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
