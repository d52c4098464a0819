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

#include <cmath>
#include <sstream>

#include "neuropod/error.hpp"
#include "neuropod/snn/network.hpp"
#include "neuropod/snn/spec_io.hpp"

using namespace neuropod;
using namespace neuropod::snn;

namespace {

NetworkSpec single(NeuronParams p = {})
{
    NetworkSpec s;
    s.groups.push_back({"n", {0}, p});
    return s;
}

SpikeTrain drive(Network &net, NeuronId id, double current, Tick ticks)
{
    SpikeTrain out;
    const ExternalInput in{id, current};
    for (Tick t = 0; t < ticks; ++t)
    {
        for (const auto &s : net.step(std::span(&in, 1)))
        {
            out.push_back(s);
        }
    }
    return out;
}

// Two neurons, A -> B with delay d1 and B -> A with delay d2, both strong
// enough to fire the target on arrival.
NetworkSpec loop(int d1, int d2)
{
    NeuronParams p;
    p.tau_syn_exc = 1.0;
    NetworkSpec s;
    s.groups.push_back({"loop", {0, 1}, p});
    s.synapses = {{0, 1, 200.0, d1}, {1, 0, 200.0, d2}};
    return s;
}

} // namespace

TEST_CASE("constant drive crosses threshold on the closed-form tick")
{
    // Linear recurrence v[n] = v_rest + a (v[n-1] - v_rest) + g I with
    // a = exp(-1/tau), g = (tau/cm)(1 - a) has the solution
    // v[n] - v_rest = g I (1 - a^n) / (1 - a).
    for (const double current : {1.0, 1.5, 2.0, 5.0})
    {
        NeuronParams p;
        const double a = std::exp(-1.0 / p.tau_m);
        const double g = (p.tau_m / p.cm) * (1.0 - a);
        const double need = p.v_thresh - p.v_rest;
        const double x = 1.0 - need * (1.0 - a) / (g * current);
        auto net = build_network(single(p));
        const auto train = drive(net, 0, current, 200);
        if (x <= 0.0)
        {
            CHECK(train.empty());
            continue;
        }
        const auto n = static_cast<Tick>(std::ceil(std::log(x) / std::log(a)));
        REQUIRE_FALSE(train.empty());
        CHECK(train.front().tick == n - 1);
    }
}

TEST_CASE("subthreshold drive never fires")
{
    NeuronParams p;
    auto net = build_network(single(p));
    // Asymptote of the recurrence is v_rest + tau/cm * I = -65 + 20 * 0.7 = -51 mV.
    CHECK(drive(net, 0, 0.7, 2000).empty());
}

TEST_CASE("refractory period spaces spikes by t_refrac + 1")
{
    for (const int refrac : {1, 2, 4})
    {
        NeuronParams p;
        p.t_refrac = refrac;
        auto net = build_network(single(p));
        const auto train = drive(net, 0, 1000.0, 50);
        REQUIRE(train.size() > 3);
        for (std::size_t i = 1; i < train.size(); ++i)
        {
            CHECK(train[i].tick - train[i - 1].tick == refrac + 1);
        }
    }
}

TEST_CASE("delay loop oscillates with the round-trip period")
{
    auto net = build_network(loop(4, 5));
    const std::vector<Stimulus> kick = {{0, 0, 30.0}};
    const auto train = run(net, kick, 100);
    std::vector<Tick> a;
    std::vector<Tick> b;
    for (const auto &s : train)
    {
        (s.neuron == 0 ? a : b).push_back(s.tick);
    }
    std::vector<Tick> want_a;
    std::vector<Tick> want_b;
    for (Tick t = 0; t < 100; t += 9)
    {
        want_a.push_back(t);
        if (t + 4 < 100)
        {
            want_b.push_back(t + 4);
        }
    }
    CHECK(a == want_a);
    CHECK(b == want_b);
    CHECK(a.size() == 12);
    CHECK(b.size() == 11);
}

TEST_CASE("every delivery lands exactly delay ticks after its spike")
{
    NeuronParams p;
    p.tau_syn_exc = 1.0;
    NetworkSpec s;
    s.groups.push_back({"g", {0, 1, 2, 3}, p});
    s.synapses = {{0, 1, 200.0, 1}, {0, 2, 200.0, 7}, {0, 3, 1.0, 31}, {1, 3, 1.0, 3}};
    auto net = build_network(s);
    std::vector<Delivery> seen;
    net.set_delivery_observer([&](const Delivery &d) { seen.push_back(d); });
    const std::vector<Stimulus> kick = {{0, 0, 30.0}};
    const auto train = run(net, kick, 60);
    REQUIRE(seen.size() == 4);
    for (const auto &d : seen)
    {
        int delay = 0;
        for (const auto &syn : s.synapses)
        {
            if (syn.pre == d.pre && syn.post == d.post)
            {
                delay = syn.delay;
            }
        }
        CHECK(d.arrival_tick - d.spike_tick == delay);
    }
    CHECK(net.pending_deliveries() == 0);
    CHECK(train.size() == 3); // 0, then 1 and 2; neuron 3 stays subthreshold
}

TEST_CASE("more inhibition never adds spikes")
{
    std::size_t prev = std::numeric_limits<std::size_t>::max();
    for (const double w : {0.0, -1.0, -2.0, -5.0, -10.0, -50.0})
    {
        NeuronParams p;
        NetworkSpec s;
        s.groups.push_back({"g", {0, 1}, p});
        s.synapses = {{0, 1, w, 1}};
        auto net = build_network(s);
        std::size_t count = 0;
        const std::vector<ExternalInput> in = {{0, 1000.0}, {1, 2.0}};
        for (Tick t = 0; t < 300; ++t)
        {
            for (const auto &sp : net.step(in))
            {
                count += sp.neuron == 1 ? 1 : 0;
            }
        }
        CHECK(count <= prev);
        prev = count;
    }
    CHECK(prev == 0);
}

TEST_CASE("v_floor bounds hyperpolarisation")
{
    NeuronParams p;
    p.v_floor = -85.0;
    auto net = build_network(single(p));
    (void)drive(net, 0, -1000.0, 20);
    CHECK(net.state(0).v == doctest::Approx(-85.0));
}

TEST_CASE("identical inputs give identical trains")
{
    auto a = build_network(loop(3, 6));
    auto b = build_network(loop(3, 6));
    const std::vector<Stimulus> kick = {{5, 0, 30.0}, {40, 1, 30.0}};
    CHECK(run(a, kick, 500) == run(b, kick, 500));
}

TEST_CASE("reset_state clears neurons and the delay line but keeps the tick")
{
    auto net = build_network(loop(4, 5));
    const std::vector<Stimulus> kick = {{0, 0, 30.0}};
    (void)run(net, kick, 10);
    net.reset_state();
    CHECK(net.current_tick() == 10);
    CHECK(net.pending_deliveries() == 0);
    CHECK(run(net, {}, 100).empty());
}

TEST_CASE("build rejects malformed specs")
{
    NeuronParams p;
    NetworkSpec dup;
    dup.groups = {{"a", {0, 1}, p}, {"b", {1}, p}};
    CHECK_THROWS_AS(build_network(dup), ConfigError);

    NetworkSpec gap;
    gap.groups = {{"a", {0, 2}, p}};
    CHECK_THROWS_AS(build_network(gap), ConfigError);

    NetworkSpec zero_delay = single(p);
    zero_delay.synapses = {{0, 0, 1.0, 0}};
    CHECK_THROWS_AS(build_network(zero_delay), ConfigError);

    NetworkSpec dangling = single(p);
    dangling.synapses = {{0, 5, 1.0, 1}};
    CHECK_THROWS_AS(build_network(dangling), ConfigError);

    NeuronParams bad;
    bad.tau_m = 0.0;
    CHECK_THROWS_AS(build_network(single(bad)), ConfigError);
    bad = {};
    bad.v_reset = -40.0;
    CHECK_THROWS_AS(build_network(single(bad)), ConfigError);
}

TEST_CASE("run validates stimuli")
{
    auto net = build_network(single());
    const std::vector<Stimulus> unsorted = {{5, 0, 1.0}, {2, 0, 1.0}};
    CHECK_THROWS_AS(run(net, unsorted, 10), InputError);
    CHECK_THROWS_AS(run(net, {}, 0), InputError);
}

TEST_CASE("spike CSV round trip")
{
    const SpikeTrain train = {{0, 3}, {0, 7}, {4, 1}, {19, 38}};
    std::stringstream ss;
    write_spike_csv(ss, train);
    CHECK(ss.str().rfind("tick,neuron_id\n", 0) == 0);
    CHECK(read_spike_csv(ss) == train);
}

TEST_CASE("network spec JSON round trip")
{
    auto spec = loop(2, 7);
    spec.groups.front().params.t_refrac = 3;
    const auto j = network_spec_to_json(spec);
    const auto back = network_spec_from_json(j);
    CHECK(network_spec_to_json(back) == j);
    auto a = build_network(spec);
    auto b = build_network(back);
    const std::vector<Stimulus> kick = {{0, 0, 30.0}};
    CHECK(run(a, kick, 100) == run(b, kick, 100));
}

TEST_CASE("groups given by count take the next ids")
{
    const auto j = nlohmann::json::parse(R"({
        "groups": [{"name": "a", "count": 2}, {"name": "b", "count": 3, "params": {"t_refrac": 1}}],
        "synapses": [{"pre": 0, "post": 4, "weight": 5.0, "delay": 2}]
    })");
    const auto spec = network_spec_from_json(j);
    REQUIRE(spec.groups.size() == 2);
    CHECK(spec.groups[1].ids == std::vector<NeuronId>{2, 3, 4});
    CHECK(spec.groups[1].params.t_refrac == 1);
    CHECK(build_network(spec).size() == 5);
}
