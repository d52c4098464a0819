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

#include <algorithm>
#include <map>

#include "neuropod/cpg/analysis.hpp"
#include "neuropod/cpg/cpg_network.hpp"
#include "neuropod/error.hpp"

using namespace neuropod;
using namespace neuropod::cpg;

namespace {

constexpr int FR = 0, MR = 1, BR = 2, FL = 3, ML = 4, BL = 5;

struct Run
{
    CpgNetworkLayout layout;
    snn::SpikeTrain train;
    MotorStream motor;
};

Run simulate(const std::vector<std::pair<Tick, GaitId>> &schedule, Tick ticks,
        const CpgConfig &cfg = {})
{
    auto cpg = build_cpg_network(cfg);
    std::vector<snn::Stimulus> stim;
    for (const auto &[t, g] : schedule)
    {
        stim.push_back(gait_stimulus(g, t, cpg.layout, cfg));
    }
    Run r;
    r.layout = cpg.layout;
    r.train = snn::run(cpg.net, stim, ticks);
    r.motor = motor_events(r.train, cpg.layout);
    return r;
}

// Coxa FW ticks of a leg, straight from the spike train.
std::vector<Tick> coxa_spikes(const Run &r, int leg)
{
    const auto id = r.layout.motor_ids[static_cast<std::size_t>(servo_index(leg, Joint::Coxa))];
    std::vector<Tick> out;
    for (const auto &s : r.train)
    {
        if (s.neuron == id)
        {
            out.push_back(s.tick);
        }
    }
    return out;
}

// Written out by hand from the gait descriptions: legs that swing together
// share an offset, groups follow at equal fractions of the period.
std::map<int, int> expected_offsets(GaitId g)
{
    switch (g)
    {
    case GaitId::Run: // tripods {FR, ML, BR} and {MR, FL, BL}, half a period apart
        return {{FR, 0}, {ML, 0}, {BR, 0}, {MR, 4}, {FL, 4}, {BL, 4}};
    case GaitId::Trot: // pairs a third of the period apart
        return {{FR, 0}, {ML, 0}, {MR, 3}, {BL, 3}, {BR, 6}, {FL, 6}};
    case GaitId::Walk: // wave from the back right forward, then the left side
        return {{BR, 0}, {MR, 2}, {FR, 4}, {BL, 6}, {ML, 8}, {FL, 10}};
    }
    return {};
}

int expected_period(GaitId g)
{
    return g == GaitId::Run ? 8 : g == GaitId::Trot ? 9 : 12;
}

// Definition of the convergence delay, checked window by window from d = 0.
std::optional<Tick> naive_delay(std::span<const MotorEvent> ev, Tick t_change, GaitId target,
        Tick horizon, int w)
{
    for (Tick d = 0; t_change + d + w <= horizon; ++d)
    {
        bool all = true;
        for (Tick s = t_change + d; s + w <= horizon && all; ++s)
        {
            all = classify_window(ev, {s, s + w}) == target;
        }
        if (all)
        {
            return d;
        }
    }
    return std::nullopt;
}

std::vector<MotorEvent> synthetic(GaitId g, Tick from, Tick to)
{
    std::vector<MotorEvent> out;
    const int p = expected_period(g);
    const auto offs = expected_offsets(g);
    for (Tick base = from; base < to; base += p)
    {
        for (const auto &[leg, off] : offs)
        {
            const Tick t = base + off;
            if (t < to)
            {
                out.push_back({t, servo_index(leg, Joint::Coxa), MotorAction::Fw});
                out.push_back({t, servo_index(leg, Joint::Femur), MotorAction::Fw});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("layout has 39 neurons and motor ids follow the servo table")
{
    const auto cpg = build_cpg_network();
    CHECK(cpg.layout.neuron_count() == 39);
    CHECK(cpg.net.size() == 39);
    for (int s = 0; s < kServoCount; ++s)
    {
        CHECK(cpg.layout.servo_of(cpg.layout.motor_ids[static_cast<std::size_t>(s)]) == s);
    }
    CHECK(servo_name(0) == "CFR");
    CHECK(servo_name(1) == "FFR");
    CHECK(servo_name(11) == "FBL");
}

TEST_CASE("default signatures carry the expected periods and offsets")
{
    for (const auto g : kAllGaits)
    {
        const auto sig = default_signature(g);
        CHECK(sig.period == expected_period(g));
        const auto offs = sig.tick_offset_of_leg();
        for (const auto &[leg, off] : expected_offsets(g))
        {
            CHECK(offs[static_cast<std::size_t>(leg)] == off);
        }
    }
}

TEST_CASE("each gait produces its signature from one stimulus")
{
    for (const auto g : kAllGaits)
    {
        CAPTURE(gait_name(g));
        const int p = expected_period(g);
        const auto r = simulate({{0, g}}, 5000);
        const Tick settle = 3 * p;

        std::map<int, std::vector<Tick>> legs;
        for (int leg = 0; leg < kLegCount; ++leg)
        {
            for (const Tick t : coxa_spikes(r, leg))
            {
                if (t >= settle)
                {
                    legs[leg].push_back(t);
                }
            }
        }
        const auto offs = expected_offsets(g);
        const int ref = std::find_if(offs.begin(), offs.end(), [](const auto &kv) {
            return kv.second == 0;
        })->first;
        const Tick t0 = legs[ref].front();
        for (int leg = 0; leg < kLegCount; ++leg)
        {
            const auto &ticks = legs[leg];
            REQUIRE(ticks.size() >= 20);
            for (std::size_t i = 1; i < ticks.size(); ++i)
            {
                CHECK(ticks[i] - ticks[i - 1] == p);
            }
            const Tick phase = ((ticks.front() - t0) % p + p) % p;
            CHECK(phase == offs.at(leg));
        }

        CHECK(classify_window(r.motor.events, {settle, 5000}) == g);
        const auto err = signature_error(r.motor.events, {settle, 5000}, default_signature(g));
        REQUIRE(err.has_value());
        CHECK(*err <= 1);
        for (int s = 0; s < kServoCount; ++s)
        {
            const auto per = pattern_period(r.motor.events, s, {settle, 5000});
            REQUIRE(per.period.has_value());
            CHECK(*per.period == doctest::Approx(p));
        }
    }
}

TEST_CASE("femur and coxa of a leg fire on the same tick with the default offsets")
{
    const auto r = simulate({{0, GaitId::Trot}}, 500);
    for (int leg = 0; leg < kLegCount; ++leg)
    {
        std::vector<Tick> coxa;
        std::vector<Tick> femur;
        for (const auto &e : r.motor.events)
        {
            if (e.action == MotorAction::Fw && leg_of_servo(e.servo) == leg)
            {
                (joint_of_servo(e.servo) == Joint::Coxa ? coxa : femur).push_back(e.tick);
            }
        }
        CHECK(coxa == femur);
    }
}

TEST_CASE("no stimulus means silence")
{
    const auto r = simulate({}, 10000);
    CHECK(r.train.empty());
    CHECK(r.motor.events.empty());
}

TEST_CASE("motor events come in FW/BW pairs one tick apart")
{
    const auto r = simulate({{0, GaitId::Walk}, {700, GaitId::Run}, {1400, GaitId::Trot}}, 2000);
    const auto pairing = check_flexion_pairing(r.motor.aer);
    CHECK(pairing.exact());
    CHECK(pairing.fw > 0);
    std::size_t motor_spikes = 0;
    for (const auto &s : r.train)
    {
        motor_spikes += r.layout.servo_of(s.neuron) >= 0 ? 1 : 0;
    }
    CHECK(pairing.fw == motor_spikes);
}

TEST_CASE("every ordered gait switch converges and stays exclusive")
{
    for (const auto from : kAllGaits)
    {
        for (const auto to : kAllGaits)
        {
            if (from == to)
            {
                continue;
            }
            CAPTURE(gait_name(from));
            CAPTURE(gait_name(to));
            const Tick t_change = 1000;
            const Tick horizon = 2000;
            const auto r = simulate({{0, from}, {t_change, to}}, horizon);
            const auto c = convergence_delay(r.motor.events, t_change, to, horizon);
            REQUIRE_FALSE(c.saturated);
            CHECK(c.delay <= 50);
            const auto naive =
                    naive_delay(r.motor.events, t_change, to, horizon, default_window(default_signatures()));
            REQUIRE(naive.has_value());
            CHECK(c.delay == *naive);

            CHECK(exclusivity_violations(r.train, r.layout, {0, horizon}).empty());
            const auto after = active_scpgs(r.train, r.layout, {t_change + 10, horizon});
            CHECK(after == std::vector<GaitId>{to});
        }
    }
}

TEST_CASE("reselecting the running gait leaves the pattern untouched")
{
    const auto base = simulate({{0, GaitId::Run}}, 1500);
    const auto again = simulate({{0, GaitId::Run}, {500, GaitId::Run}}, 1500);
    CHECK(again.motor.events == base.motor.events);
}

TEST_CASE("without selector inhibition a switch never settles")
{
    CpgConfig cfg;
    cfg.selector_inhibition = false;
    const auto r = simulate({{0, GaitId::Walk}, {1000, GaitId::Run}}, 2000, cfg);
    const auto c = convergence_delay(r.motor.events, 1000, GaitId::Run, 2000);
    CHECK(c.saturated);
    CHECK_FALSE(exclusivity_violations(r.train, r.layout, {1000, 2000}).empty());
}

TEST_CASE("classifier on synthetic streams")
{
    const auto run = synthetic(GaitId::Run, 0, 400);
    CHECK(classify_window(run, {100, 124}) == GaitId::Run);
    CHECK(signature_error(run, {100, 124}, default_signature(GaitId::Run)) == 0);
    CHECK_FALSE(signature_error(run, {100, 124}, default_signature(GaitId::Walk)).has_value());

    // One leg late by one tick is tolerated, by two it is not.
    for (const int shift : {1, 2})
    {
        auto ev = run;
        for (auto &e : ev)
        {
            if (leg_of_servo(e.servo) == FL)
            {
                e.tick += shift;
            }
        }
        std::sort(ev.begin(), ev.end());
        const auto err = signature_error(ev, {100, 124}, default_signature(GaitId::Run));
        REQUIRE(err.has_value());
        CHECK(*err == shift);
        CHECK((classify_window(ev, {100, 124}) == GaitId::Run) == (shift == 1));
    }

    // Too short a window never classifies.
    CHECK_FALSE(classify_window(run, {100, 110}).has_value());
}

TEST_CASE("convergence on a synthetic switch matches the definition")
{
    auto ev = synthetic(GaitId::Walk, 0, 300);
    const auto tail = synthetic(GaitId::Run, 305, 700);
    ev.insert(ev.end(), tail.begin(), tail.end());
    std::sort(ev.begin(), ev.end());
    const auto c = convergence_delay(ev, 300, GaitId::Run, 700);
    REQUIRE_FALSE(c.saturated);
    CHECK(c.delay == naive_delay(ev, 300, GaitId::Run, 700, 24));
    // The second tripod first fires at 309, more than a period after 300.
    CHECK(c.delay == 1);

    const auto stuck = synthetic(GaitId::Walk, 0, 700);
    CHECK(convergence_delay(stuck, 300, GaitId::Run, 700).saturated);
    CHECK(convergence_delay(stuck, 690, GaitId::Walk, 700).saturated); // no full window left
}

TEST_CASE("pattern period needs three events")
{
    const std::vector<MotorEvent> two = {{0, 0, MotorAction::Fw}, {8, 0, MotorAction::Fw}};
    const auto r = pattern_period(two, 0, {0, 100});
    CHECK(r.event_count == 2);
    CHECK_FALSE(r.period.has_value());
}

TEST_CASE("motor_events maps each spike to FW at t and BW at t + 1")
{
    const auto layout = build_cpg_network().layout;
    const snn::SpikeTrain train = {{3, layout.motor_ids[4]}, {3, 0}, {5, layout.motor_ids[11]}};
    const auto m = motor_events(train, layout);
    const aer::AerLog want = {{3, 4}, {4, 16}, {5, 11}, {6, 23}};
    CHECK(m.aer == want);
}

TEST_CASE("config validation")
{
    CpgConfig cfg;
    CHECK_NOTHROW(cfg.validate());

    auto bad = cfg;
    bad.signatures[2].period = 2;
    CHECK_THROWS_AS(bad.validate(), ConfigError); // shorter than t_refrac + 1

    bad = cfg;
    bad.w_loop = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = cfg;
    bad.femur_delay = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = cfg;
    bad.stimulus_current = 1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    CHECK_THROWS_AS(gait_stimulus(GaitId::Run, -1, build_cpg_network().layout), InputError);
}

TEST_CASE("config JSON round trip and overrides")
{
    CpgConfig cfg;
    const auto j = cpg_config_to_json(cfg);
    CpgConfig back;
    back.w_loop = 1.0;
    update_cpg_config_from_json(back, j);
    CHECK(cpg_config_to_json(back) == j);

    CpgConfig over;
    update_cpg_config_from_json(over, nlohmann::json::parse(
            R"({"signatures": {"run": {"period": 10, "swing_groups": [
                {"legs": [0, 4, 2], "phase": 0.0}, {"legs": [1, 3, 5], "phase": 0.5}]}}})"));
    CHECK(over.signatures[2].period == 10);
    const auto r = simulate({{0, GaitId::Run}}, 600, over);
    const auto per = pattern_period(r.motor.events, 0, {100, 600});
    REQUIRE(per.period.has_value());
    CHECK(*per.period == doctest::Approx(10));

    CpgConfig bad;
    CHECK_THROWS_AS(update_cpg_config_from_json(bad, nlohmann::json::parse(R"({"w_loop": "x"})")),
            ConfigError);
}
