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

#include "neuropod/controller/decoder.hpp"
#include "neuropod/controller/latency.hpp"
#include "neuropod/controller/pwm.hpp"
#include "neuropod/controller/selector.hpp"
#include "neuropod/error.hpp"

using namespace neuropod;
using namespace neuropod::controller;

TEST_CASE("decode table")
{
    const char *names[12] = {"CFR", "FFR", "CMR", "FMR", "CBR", "FBR", "CFL", "FFL", "CML", "FML",
        "CBL", "FBL"};
    for (int col = 0; col < 12; ++col)
    {
        const auto fw = decode_event({static_cast<std::uint16_t>(col)});
        CHECK(cpg::servo_name(fw.servo) == names[col]);
        CHECK(fw.action == MotorAction::Fw);
        const auto bw = decode_event({static_cast<std::uint16_t>(12 + col)});
        CHECK(cpg::servo_name(bw.servo) == names[col]);
        CHECK(bw.action == MotorAction::Bw);
        CHECK(encode_command(fw).addr == col);
        CHECK(encode_command(bw).addr == 12 + col);
    }
    for (std::uint32_t a = 24; a <= 0xFFFF; ++a)
    {
        REQUIRE_THROWS_AS(decode_event({static_cast<std::uint16_t>(a)}), OutOfRangeError);
    }
}

TEST_CASE("pattern decoder accumulates a tick and counts drops")
{
    PatternDecoder d;
    CHECK(d.accept({3}) == DecodedCommand{3, MotorAction::Fw});
    CHECK(d.accept({15}) == DecodedCommand{3, MotorAction::Bw});
    CHECK_FALSE(d.accept({24}).has_value());
    const auto lines = d.take();
    CHECK(lines.count() == 2);
    CHECK(lines.test(3));
    CHECK(lines.test(15));
    CHECK(d.take().none());
    CHECK(d.decoded() == 2);
    CHECK(d.dropped() == 1);
    CHECK(d.to_json() == nlohmann::json{{"decoded", 2}, {"dropped", 1}});
    d.reset();
    CHECK(d.decoded() == 0);
}

TEST_CASE("selector counter saturates and flags changes")
{
    SelectorCounter c;
    c = selector_step(c, false, true);
    CHECK(c.value == 0);
    CHECK_FALSE(c.new_mode);
    c = selector_step(c, true, false);
    CHECK(c.value == 1);
    CHECK(c.new_mode);
    c = selector_step(c, true, false);
    CHECK(c.value == 2);
    c = selector_step(c, true, false);
    CHECK(c.value == 2);
    CHECK_FALSE(c.new_mode);
    c = selector_step(c, true, true);
    CHECK(c.value == 2);
    CHECK_FALSE(c.new_mode);
    c = selector_step(c, false, false);
    CHECK_FALSE(c.new_mode);
    c = selector_step(c, false, true);
    CHECK(c.value == 1);
    CHECK(c.new_mode);

    const auto l = selector_load(c, 1);
    CHECK(l.value == 1);
    CHECK(l.new_mode);
}

TEST_CASE("pwm channel positions")
{
    auto ch = make_channel();
    CHECK(ch.current == PwmPosition::Home);
    CHECK(ch.latched_width_us == 1500);

    ch = pwm_command(ch, true, false);
    CHECK(ch.current == PwmPosition::Fw);
    CHECK(ch.latched_width_us == 1000);
    CHECK(duty_cycle(ch) == doctest::Approx(0.05));
    CHECK(pwm_level(ch, 0));
    CHECK(pwm_level(ch, 999));
    CHECK_FALSE(pwm_level(ch, 1000));
    CHECK_FALSE(pwm_level(ch, 19999));
    CHECK_THROWS_AS((void)pwm_level(ch, 20000), InputError);
    CHECK_THROWS_AS((void)pwm_level(ch, -1), InputError);

    ch = pwm_command(ch, false, false);
    CHECK(ch.latched_width_us == 1000); // holds
    ch = pwm_command(ch, false, true);
    CHECK(ch.current == PwmPosition::Bw);
    CHECK(ch.latched_width_us == 2000);
    ch = pwm_command(ch, true, true);
    CHECK(ch.current == PwmPosition::Fw);
    ch = reset_release(ch);
    CHECK(ch.current == PwmPosition::Home);
    CHECK(ch.latched_width_us == 1500);

    int high = 0;
    for (int t = 0; t < kPwmPeriodUs; ++t)
    {
        high += pwm_level(ch, t) ? 1 : 0;
    }
    CHECK(high == 1500);
}

TEST_CASE("pwm bank follows the enable vector")
{
    auto bank = make_bank();
    EnableVector v;
    v.set(0);      // FW CFR
    v.set(12 + 5); // BW FBR
    v.set(7);
    v.set(12 + 7); // both on FFL: FW wins
    apply_enables(bank, v);
    CHECK(bank[0].current == PwmPosition::Fw);
    CHECK(bank[5].current == PwmPosition::Bw);
    CHECK(bank[7].current == PwmPosition::Fw);
    CHECK(bank[1].current == PwmPosition::Home);
    const auto j = bank_to_json(bank);
    REQUIRE(j.size() == 12);
    CHECK(j[5]["servo"] == "FBR");
    CHECK(j[5]["width_us"] == 2000);
    reset_release(bank);
    for (const auto &c : bank)
    {
        CHECK(c.current == PwmPosition::Home);
    }
}

TEST_CASE("pwm widths must fit the period")
{
    PwmWidths w;
    CHECK_NOTHROW(w.validate(kPwmPeriodUs));
    w.bw_us = 20000;
    CHECK_THROWS_AS(w.validate(kPwmPeriodUs), ConfigError);
    w = {};
    w.fw_us = -5;
    CHECK_THROWS_AS(w.validate(kPwmPeriodUs), ConfigError);
}

TEST_CASE("latency table")
{
    const LatencyModel m;
    struct Row
    {
        const char *stage;
        std::int64_t cycles;
        const char *ns;
    };
    const Row rows[] = {
        {"selector", 1, "20.83"},
        {"aer_out", 5, "104.15"},
        {"aer_spinn", 66, "1374.78"},
        {"aer_in", 2, "41.66"},
        {"decoder", 1, "20.83"},
        {"pwm_block", 91, "1895.53"},
    };
    std::int64_t sum = 0;
    for (const auto &r : rows)
    {
        CAPTURE(r.stage);
        const auto l = m.stage_latency(r.stage);
        CHECK(l.cycles == r.cycles);
        CHECK(l.ns_text() == r.ns);
        sum += r.cycles;
    }
    CHECK(sum == 166);
    CHECK(m.total().cycles == 166);
    CHECK(m.total().ns_text() == "3457.78");
    CHECK(m.total().ns() == 3457.78);
    CHECK(m.total().exact_ns() == doctest::Approx(166.0 * 1e9 / 48e6));

    const std::vector<std::string> link = {"aer_out", "aer_spinn", "aer_in"};
    CHECK(m.path_latency(link).cycles == 73);
    CHECK(m.path_latency(link).ns_text() == "1520.59");
    CHECK_THROWS_AS((void)m.stage_latency("dsp"), InputError);

    const auto j = m.report();
    CHECK(j["total"]["ns_text"] == "3457.78");
    CHECK(j["stages"].size() == 6);
}
