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

#include "neuropod/snn/network.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "neuropod/error.hpp"

namespace neuropod::snn {

void NeuronParams::validate() const
{
    if (!(tau_m > 0.0))
    {
        throw ConfigError("tau_m must be positive");
    }
    if (!(tau_syn_exc > 0.0) || !(tau_syn_inh > 0.0))
    {
        throw ConfigError("synaptic time constants must be positive");
    }
    if (!(v_reset < v_thresh))
    {
        throw ConfigError("v_reset must be below v_thresh");
    }
    if (t_refrac < 0)
    {
        throw ConfigError("t_refrac must be >= 0");
    }
    if (!(cm > 0.0))
    {
        throw ConfigError("cm must be positive");
    }
    if (!(v_floor <= v_reset))
    {
        throw ConfigError("v_floor must not exceed v_reset");
    }
}

const NeuronParams &Network::params(NeuronId id) const
{
    if (id >= params_.size())
    {
        throw ConfigError("unknown neuron id " + std::to_string(id));
    }
    return params_[id];
}

const NeuronState &Network::state(NeuronId id) const
{
    if (id >= states_.size())
    {
        throw ConfigError("unknown neuron id " + std::to_string(id));
    }
    return states_[id];
}

std::size_t Network::pending_deliveries() const
{
    std::size_t n = 0;
    for (const auto &slot : ring_)
    {
        n += slot.size();
    }
    return n;
}

std::vector<SpikeEvent> Network::step(std::span<const ExternalInput> external)
{
    const std::size_t n = params_.size();
    for (const auto &in : external)
    {
        if (in.neuron >= n)
        {
            throw ConfigError("external input targets unknown neuron " +
                    std::to_string(in.neuron));
        }
    }

    std::vector<SpikeEvent> spikes;
    if (n == 0)
    {
        ++tick_;
        return spikes;
    }

    // Deliveries for this tick, in the order they were scheduled.
    auto &slot = ring_[static_cast<std::size_t>(tick_) % ring_.size()];
    for (const auto &p : slot)
    {
        auto &st = states_[p.post];
        if (p.weight >= 0.0)
        {
            st.i_exc += p.weight;
        }
        else
        {
            st.i_inh -= p.weight;
        }
        if (observer_)
        {
            observer_(Delivery{p.spike_tick, tick_, p.pre, p.post, p.weight});
        }
    }
    slot.clear();

    std::fill(scratch_current_.begin(), scratch_current_.end(), 0.0);
    for (const auto &in : external)
    {
        scratch_current_[in.neuron] += in.current;
    }

    for (std::size_t id = 0; id < n; ++id)
    {
        const auto &p = params_[id];
        const auto &f = factors_[id];
        auto &st = states_[id];

        st.i_exc *= f.decay_exc;
        st.i_inh *= f.decay_inh;

        if (st.refrac_left > 0)
        {
            --st.refrac_left;
            st.v = p.v_reset;
            continue;
        }

        const double input = st.i_exc - st.i_inh + scratch_current_[id];
        st.v = p.v_rest + (st.v - p.v_rest) * f.decay_m + f.gain * input;
        if (st.v < p.v_floor)
        {
            st.v = p.v_floor;
        }
        if (st.v >= p.v_thresh)
        {
            spikes.push_back(SpikeEvent{tick_, static_cast<NeuronId>(id)});
            st.v = p.v_reset;
            st.refrac_left = p.t_refrac;
        }
    }

    for (const auto &s : spikes)
    {
        for (const auto syn_index : outgoing_[s.neuron])
        {
            const auto &syn = synapses_[syn_index];
            const Tick arrival = tick_ + syn.delay;
            ring_[static_cast<std::size_t>(arrival) % ring_.size()].push_back(
                    Pending{syn.pre, syn.post, syn.weight, tick_});
        }
    }

    ++tick_;
    return spikes;
}

void Network::reset_state()
{
    for (std::size_t id = 0; id < states_.size(); ++id)
    {
        states_[id] = NeuronState{params_[id].v_rest, 0, 0.0, 0.0};
    }
    for (auto &slot : ring_)
    {
        slot.clear();
    }
}

Network build_network(const NetworkSpec &spec)
{
    std::size_t n = 0;
    for (const auto &g : spec.groups)
    {
        n += g.ids.size();
    }

    Network net;
    net.params_.resize(n);
    std::vector<bool> seen(n, false);
    for (const auto &g : spec.groups)
    {
        g.params.validate();
        for (const auto id : g.ids)
        {
            if (id >= n)
            {
                throw ConfigError("neuron id " + std::to_string(id) +
                        " is not dense in 0.." + std::to_string(n) + "-1");
            }
            if (seen[id])
            {
                throw ConfigError("duplicate neuron id " + std::to_string(id));
            }
            seen[id] = true;
            net.params_[id] = g.params;
        }
    }

    int max_delay = 1;
    for (const auto &syn : spec.synapses)
    {
        if (syn.pre >= n || syn.post >= n)
        {
            throw ConfigError("synapse " + std::to_string(syn.pre) + "->" +
                    std::to_string(syn.post) + " references a missing neuron (network has " +
                    std::to_string(n) + ")");
        }
        if (syn.delay < 1)
        {
            throw ConfigError("synaptic delay must be >= 1 tick");
        }
        if (!std::isfinite(syn.weight))
        {
            throw ConfigError("synaptic weight must be finite");
        }
        max_delay = std::max(max_delay, syn.delay);
    }

    net.synapses_ = spec.synapses;
    net.outgoing_.resize(n);
    for (std::size_t i = 0; i < net.synapses_.size(); ++i)
    {
        net.outgoing_[net.synapses_[i].pre].push_back(static_cast<std::uint32_t>(i));
    }

    net.factors_.reserve(n);
    net.states_.reserve(n);
    for (const auto &p : net.params_)
    {
        const double decay_m = std::exp(-1.0 / p.tau_m);
        net.factors_.push_back(Network::Factors{decay_m, std::exp(-1.0 / p.tau_syn_exc),
                std::exp(-1.0 / p.tau_syn_inh), (p.tau_m / p.cm) * (1.0 - decay_m)});
        net.states_.push_back(NeuronState{p.v_rest, 0, 0.0, 0.0});
    }
    net.ring_.resize(static_cast<std::size_t>(max_delay) + 1);
    net.scratch_current_.assign(n, 0.0);
    return net;
}

std::vector<SpikeEvent> step_network(Network &net, Tick t,
        std::span<const ExternalInput> external)
{
    if (t != net.current_tick())
    {
        throw InputError("step_network called for tick " + std::to_string(t) +
                " but the network is at tick " + std::to_string(net.current_tick()));
    }
    return net.step(external);
}

SpikeTrain run(Network &net, std::span<const Stimulus> stimuli, Tick n_ticks)
{
    if (n_ticks < 1)
    {
        throw InputError("run needs n_ticks >= 1");
    }
    const Tick start = net.current_tick();
    for (std::size_t i = 0; i < stimuli.size(); ++i)
    {
        if (i > 0 && stimuli[i].tick < stimuli[i - 1].tick)
        {
            throw InputError("stimuli must be sorted by tick");
        }
        if (stimuli[i].tick < start)
        {
            throw InputError("stimulus at tick " + std::to_string(stimuli[i].tick) +
                    " precedes the network's current tick");
        }
    }

    SpikeTrain train;
    std::vector<ExternalInput> now;
    std::size_t next = 0;
    for (Tick t = start; t < start + n_ticks; ++t)
    {
        now.clear();
        while (next < stimuli.size() && stimuli[next].tick == t)
        {
            now.push_back(ExternalInput{stimuli[next].neuron, stimuli[next].current});
            ++next;
        }
        auto spikes = net.step(now);
        train.insert(train.end(), spikes.begin(), spikes.end());
    }
    return train;
}

void write_spike_csv(std::ostream &out, const SpikeTrain &train)
{
    out << "tick,neuron_id\n";
    for (const auto &s : train)
    {
        out << s.tick << ',' << s.neuron << '\n';
    }
}

SpikeTrain read_spike_csv(std::istream &in)
{
    SpikeTrain train;
    std::string line;
    if (!std::getline(in, line) || line != "tick,neuron_id")
    {
        throw InputError("spike CSV must start with the header 'tick,neuron_id'");
    }
    std::size_t line_no = 1;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.empty())
        {
            continue;
        }
        std::istringstream row(line);
        SpikeEvent ev;
        char comma = 0;
        if (!(row >> ev.tick >> comma >> ev.neuron) || comma != ',' || ev.tick < 0)
        {
            throw InputError("malformed spike CSV row " + std::to_string(line_no) + ": " + line);
        }
        train.push_back(ev);
    }
    return train;
}

} // namespace neuropod::snn
