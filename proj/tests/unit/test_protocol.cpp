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
#include <sstream>

#include "neuropod/error.hpp"
#include "neuropod/hexapod/world.hpp"
#include "neuropod/live/protocol.hpp"

using namespace neuropod;
using namespace neuropod::live;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = fs::path(NEUROPOD_SOURCE_DIR) / "tests" / "fixtures";

std::vector<std::pair<std::string, std::string>> files_in(const fs::path &dir)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto &e : fs::directory_iterator(dir))
    {
        if (e.path().extension() == ".json")
        {
            std::ifstream in(e.path());
            std::stringstream ss;
            ss << in.rdbuf();
            out.emplace_back(e.path().filename().string(), ss.str());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("valid command fixtures parse and round trip")
{
    const auto files = files_in(kFixtures / "commands" / "valid");
    REQUIRE(files.size() >= 5);
    for (const auto &[name, text] : files)
    {
        CAPTURE(name);
        const auto c = parse_command(text);
        CHECK(command_to_json(c) == nlohmann::json::parse(text));
        CHECK(parse_command(command_to_json(c).dump()) == c);
    }
}

TEST_CASE("invalid command fixtures are rejected")
{
    const auto files = files_in(kFixtures / "commands" / "invalid");
    REQUIRE(files.size() >= 10);
    for (const auto &[name, text] : files)
    {
        CAPTURE(name);
        CHECK_THROWS_AS(parse_command(text), ProtocolError);
    }
}

TEST_CASE("event fixtures pass the structural check")
{
    for (const auto &[name, text] : files_in(kFixtures / "events"))
    {
        CAPTURE(name);
        CHECK_NOTHROW(validate_event(nlohmann::json::parse(text)));
    }
    for (const auto &[name, text] : files_in(kFixtures / "events_invalid"))
    {
        CAPTURE(name);
        CHECK_THROWS_AS(validate_event(nlohmann::json::parse(text)), ProtocolError);
    }
}

TEST_CASE("command payload rules")
{
    CHECK(parse_command(R"({"type":"set_gait","gait":2})").gait == 2);
    CHECK_THROWS_AS(parse_command(R"({"type":"set_gait","gait":3})"), ProtocolError);
    CHECK_THROWS_AS(parse_command(R"({"type":"set_gait","gait":1.0})"), ProtocolError);
    CHECK(parse_command(R"({"type":"set_scale","factor":1})").factor == 1.0);
    CHECK_THROWS_AS(parse_command(R"({"type":"set_scale","factor":0.99})"), ProtocolError);
    CHECK_THROWS_AS(parse_command("not json"), ProtocolError);
    CHECK_THROWS_AS(parse_command(""), ProtocolError);
    try
    {
        (void)parse_command(R"({"type":"fly"})");
        FAIL("accepted an unknown type");
    }
    catch (const ProtocolError &e)
    {
        CHECK(std::string(e.what()).find("fly") != std::string::npos);
    }
}

TEST_CASE("seq is inserted first and keeps the body")
{
    const auto body = error_event(5, "x").dump();
    const auto line = with_seq(17, body);
    CHECK(line.rfind("{\"seq\":17,", 0) == 0);
    auto j = nlohmann::json::parse(line);
    CHECK(j["seq"] == 17);
    j.erase("seq");
    CHECK(j == nlohmann::json::parse(body));
    CHECK(with_seq(0, "{}") == "{\"seq\":0}");
}

TEST_CASE("builders produce events that validate")
{
    std::uint64_t seq = 0;
    auto check = [&](const nlohmann::json &body, EventType want) {
        const auto j = nlohmann::json::parse(with_seq(seq++, body.dump()));
        CHECK(validate_event(j) == want);
    };
    const std::vector<snn::SpikeEvent> spikes = {{4, 1}, {4, 30}};
    check(spike_event(1, 4, spikes), EventType::Spike);
    const std::vector<aer::TimedAer> motor = {{4, 0}, {4, 23}};
    check(motor_event(2, 4, motor), EventType::Motor);

    auto world = hexapod::make_world();
    world.t_sim_ms = 9;
    check(pose_event(3, hexapod::pose_to_json(world)), EventType::Pose);

    Command c;
    c.type = CommandType::SetGait;
    c.gait = 1;
    c.id = "abc";
    const auto ack = ack_event(4, c, 10, 11, 2);
    check(ack, EventType::Ack);
    CHECK(ack["id"] == "abc");
    CHECK(ack["effect_tick"].get<Tick>() - ack["received_tick"].get<Tick>() == 1);
    check(error_event(12, "bad"), EventType::Error);

    LiveStatus s;
    s.tick = 9;
    s.pose = hexapod::pose_to_json(world);
    s.pwm = nlohmann::json::array({1, 2, 3});
    s.decoder = {{"decoded", 0}, {"dropped", 0}};
    check(snapshot_event(s), EventType::Snapshot);
    check(metrics_event(5, s), EventType::Metrics);
    CHECK(snapshot_event(s)["gait"].is_null());

    s.tick = 10;
    CHECK_THROWS_AS(validate_event(nlohmann::json::parse(with_seq(0, snapshot_event(s).dump()))),
            ProtocolError);
}
