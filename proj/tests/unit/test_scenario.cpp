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
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "neuropod/error.hpp"
#include "neuropod/scenario/monitor.hpp"
#include "neuropod/scenario/pipeline.hpp"
#include "neuropod/scenario/raster.hpp"
#include "neuropod/scenario/report.hpp"

using namespace neuropod;
using namespace neuropod::scenario;
using cpg::GaitId;
namespace fs = std::filesystem;

namespace {

struct TempDir
{
    fs::path path;
    TempDir()
    {
        std::random_device rd;
        path = fs::temp_directory_path() / ("neuropod_test_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir()
    {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Scenario gait_scenario(std::vector<std::pair<Tick, GaitId>> schedule, Tick duration)
{
    Scenario s;
    s.name = "t";
    s.duration_ms = duration;
    for (const auto &[t, g] : schedule)
    {
        s.schedule.push_back({t, CommandKind::SetGait, g});
    }
    return s;
}

} // namespace

TEST_CASE("scenario validation")
{
    Scenario s = gait_scenario({{0, GaitId::Run}}, 100);
    CHECK_NOTHROW(s.validate());

    auto bad = s;
    bad.duration_ms = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    CHECK_THROWS_AS(run_scenario(bad), ConfigError);

    bad = gait_scenario({{50, GaitId::Run}, {10, GaitId::Walk}}, 100);
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = gait_scenario({{100, GaitId::Run}}, 100);
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = s;
    bad.time_scale_factor = 0.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    CHECK_THROWS_AS(scenario_from_json(nlohmann::json::parse(R"({"name": "x"})")), ConfigError);
    CHECK_THROWS_AS(scenario_from_json(nlohmann::json::parse(
                            R"({"duration_ms": 10, "schedule": [{"tick": 0, "gait": "gallop"}]})")),
            ConfigError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), IoError);
}

TEST_CASE("scenario JSON forms and round trip")
{
    const auto j = nlohmann::json::parse(R"({
        "name": "mix", "duration_ms": 3000, "time_scale_factor": 50,
        "schedule": [
            {"tick": 0, "gait": "walk"}, {"tick": 10, "gait": 2},
            {"tick": 20, "button": "down"}, {"tick": 30, "button": "up"},
            {"tick": 40, "reset": true}],
        "config": {"hexapod": {"coxa_len": 3.5}, "world": {"substep_ms": 5}},
        "outputs": {"raster_csv": "r.csv", "pose_every_ticks": 5}
    })");
    const auto s = scenario_from_json(j);
    REQUIRE(s.schedule.size() == 5);
    CHECK(s.schedule[1].gait == GaitId::Run);
    CHECK(s.schedule[2].kind == CommandKind::ButtonDown);
    CHECK(s.schedule[4].kind == CommandKind::Reset);
    CHECK(s.config.geometry.coxa_len == 3.5);
    CHECK(s.config.world_substep_ms == 5.0);
    CHECK(s.outputs.raster_csv == fs::path("r.csv"));
    const auto back = scenario_from_json(scenario_to_json(s));
    CHECK(scenario_to_json(back) == scenario_to_json(s));
}

TEST_CASE("raster export")
{
    TempDir tmp;
    const auto empty = tmp.path / "empty.csv";
    export_raster({}, empty);
    CHECK(slurp(empty) == "tick,addr\n");
    CHECK(load_raster(empty).empty());

    const aer::AerLog three = {{7, 3}, {2, 15}, {2, 1}};
    const auto p = tmp.path / "three.csv";
    export_raster(three, p);
    CHECK(slurp(p) == "tick,addr\n2,1\n2,15\n7,3\n");

    const auto loaded = load_raster(p);
    CHECK(loaded.size() == 3);
    const auto p2 = tmp.path / "again.csv";
    export_raster(loaded, p2);
    CHECK(slurp(p2) == slurp(p));

    CHECK_THROWS_AS(export_raster(three, tmp.path / "missing" / "dir" / "x.csv"), IoError);
    CHECK_THROWS_AS(load_raster(tmp.path / "nope.csv"), IoError);
    std::istringstream junk("tick,addr\n1,x\n");
    CHECK_THROWS_AS(read_raster(junk), InputError);
}

TEST_CASE("single run gait over 5000 ms")
{
    const auto a = run_scenario(gait_scenario({{0, GaitId::Run}}, 5000));
    const auto &r = a.report;
    REQUIRE(r.segments.size() == 1);
    const auto &seg = r.segments.front();
    CHECK(seg.steady_classification == GaitId::Run);
    REQUIRE(seg.phase_error.has_value());
    CHECK(*seg.phase_error <= 1);
    for (int leg = 0; leg < cpg::kLegCount; ++leg)
    {
        const auto &per = seg.period[static_cast<std::size_t>(cpg::servo_index(leg, cpg::Joint::Coxa))];
        REQUIRE(per.has_value());
        CHECK(*per == 8.0);
    }
    CHECK(seg.exclusivity_violations == 0);
    CHECK(r.conserved());
    CHECK(r.pairing.exact());
    CHECK(r.uplink.healthy());
    CHECK(r.downlink.healthy());
    CHECK(r.pwm_warnings == 0);
    const auto j = r.to_json();
    CHECK(j["study_cases"]["movement_period"]["run"]["wall_ms"] == 800.0);
}

TEST_CASE("walk, trot, run schedule")
{
    const auto r = run_scenario(gait_scenario(
            {{0, GaitId::Walk}, {2000, GaitId::Trot}, {4000, GaitId::Run}}, 6000)).report;
    REQUIRE(r.segments.size() == 3);
    for (const auto &seg : r.segments)
    {
        CHECK_FALSE(seg.convergence.saturated);
        CHECK(seg.convergence.delay <= 50);
        CHECK(seg.steady_classification == seg.gait);
    }
    const auto j = r.to_json();
    REQUIRE(j["study_cases"]["gait_change"].size() == 2);
    CHECK(j["study_cases"]["gait_change"][0]["reference_ms"] == 23.0);
    CHECK(j["study_cases"]["resting_to_moving_ms"].is_number());
    CHECK(r.conserved());
}

TEST_CASE("identical scenarios give byte-identical outputs")
{
    TempDir a;
    TempDir b;
    auto s = gait_scenario({{0, GaitId::Trot}, {900, GaitId::Walk}}, 1500);
    s.outputs.raster_csv = "raster.csv";
    s.outputs.pose_jsonl = "pose.jsonl";
    s.outputs.report_json = "report.json";
    s.outputs.link_hex = "link.hex";
    run_scenario(s, a.path);
    run_scenario(s, b.path);
    for (const char *f : {"raster.csv", "pose.jsonl", "report.json", "link.hex"})
    {
        CAPTURE(f);
        const auto x = slurp(a.path / f);
        CHECK_FALSE(x.empty());
        CHECK(x == slurp(b.path / f));
    }
    const auto raster = load_raster(a.path / "raster.csv");
    CHECK(cpg::check_flexion_pairing(raster).exact());
}

TEST_CASE("buttons walk the selector and saturate")
{
    Scenario s;
    s.duration_ms = 900;
    for (const Tick t : {0, 300, 600})
    {
        s.schedule.push_back({t, CommandKind::ButtonUp, GaitId::Walk});
    }
    const auto r = run_scenario(s).report;
    // 0 -> 1 (trot) -> 2 (run); the third press saturates and sends nothing.
    REQUIRE(r.segments.size() == 2);
    CHECK(r.segments[0].gait == GaitId::Trot);
    CHECK(r.segments[1].gait == GaitId::Run);
    CHECK(r.uplink.events_sent == 2);
}

TEST_CASE("pipeline reset returns to rest and keeps time")
{
    Pipeline p;
    p.set_gait(GaitId::Run);
    std::size_t spikes = 0;
    for (int i = 0; i < 100; ++i)
    {
        spikes += p.step().motor_aer.size();
    }
    CHECK(spikes > 0);
    CHECK(p.commanded_gait() == GaitId::Run);
    p.reset();
    CHECK(p.tick() == 100);
    CHECK_FALSE(p.commanded_gait().has_value());
    std::size_t after = 0;
    for (int i = 0; i < 200; ++i)
    {
        after += p.step().motor_aer.size();
    }
    CHECK(after <= 12); // at most the BW half of the last pre-reset tick
    CHECK(p.world().t_sim_ms == 300);
}

TEST_CASE("wall time per tick follows the time scale")
{
    Pipeline p({}, 100.0);
    p.step();
    CHECK(p.world().t_wall_ms == doctest::Approx(100.0));
    p.set_time_scale(10.0);
    p.step();
    CHECK(p.world().t_wall_ms == doctest::Approx(110.0));
    CHECK_THROWS_AS(p.set_time_scale(0.0), ConfigError);
}

TEST_CASE("online monitor agrees with the offline measurement")
{
    const std::vector<std::pair<Tick, GaitId>> schedule = {
        {0, GaitId::Run}, {600, GaitId::Walk}, {1200, GaitId::Trot}, {1800, GaitId::Run}};
    Pipeline p;
    GaitMonitor m;
    std::vector<cpg::MotorEvent> all;
    std::vector<cpg::ConvergenceResult> online;
    std::size_t next = 0;
    for (Tick t = 0; t < 2400; ++t)
    {
        if (next < schedule.size() && schedule[next].first == t)
        {
            p.set_gait(schedule[next].second);
            ++next;
        }
        const auto r = p.step();
        if (r.gait_sent)
        {
            m.gait_changed(t, *r.gait_sent);
        }
        std::vector<cpg::MotorEvent> ev;
        for (const auto &e : r.motor_aer)
        {
            const bool fw = e.addr < cpg::kServoCount;
            ev.push_back({e.tick, fw ? e.addr : e.addr - cpg::kServoCount,
                    fw ? cpg::MotorAction::Fw : cpg::MotorAction::Bw});
        }
        m.observe(t, ev);
        all.insert(all.end(), ev.begin(), ev.end());
        if (m.take_new_result())
        {
            online.push_back(*m.last_result());
        }
    }
    std::sort(all.begin(), all.end());
    REQUIRE(online.size() == schedule.size());
    for (std::size_t i = 0; i < schedule.size(); ++i)
    {
        const Tick horizon = i + 1 < schedule.size() ? schedule[i + 1].first : 2400;
        const auto offline =
                cpg::convergence_delay(all, online[i].t_change, schedule[i].second, horizon);
        CHECK(online[i].target == schedule[i].second);
        CHECK_FALSE(online[i].saturated);
        CHECK(online[i].delay == offline.delay);
    }
    CHECK(m.current() == GaitId::Run);
}
