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

// network.hpp - discrete-time current-based LIF network
//
// One tick is one simulated millisecond. Within a tick every neuron, in id
// order, goes through:
// 1) pending synaptic arrivals for the tick are added to i_exc / i_inh
// 2) both synaptic currents decay by exp(-1/tau_syn)
// 3) the membrane relaxes toward v_rest and integrates the summed input
// 4) threshold test; a spike resets v and starts the refractory count
// Spikes emitted at t are scheduled for delivery at t + delay (delay >= 1).

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "neuropod/tick.hpp"

namespace neuropod::snn {

using NeuronId = std::uint32_t;
using neuropod::Tick;

struct NeuronParams
{
    double tau_m = 20.0;     // ms
    double v_rest = -65.0;   // mV
    double v_reset = -70.0;  // mV
    double v_thresh = -50.0; // mV
    int t_refrac = 2;        // ticks
    double tau_syn_exc = 5.0; // ms
    double tau_syn_inh = 5.0; // ms
    double cm = 1.0;          // nF; membrane resistance is tau_m / cm (MOhm)
    // Lower saturation bound of the membrane potential; -inf disables it.
    double v_floor = -std::numeric_limits<double>::infinity();

    /// Throws ConfigError when an invariant does not hold.
    void validate() const;

    bool operator==(const NeuronParams &) const = default;
};

struct NeuronState
{
    double v = -65.0;
    int refrac_left = 0;
    double i_exc = 0.0;
    double i_inh = 0.0;
};

struct Synapse
{
    NeuronId pre = 0;
    NeuronId post = 0;
    double weight = 0.0; // nA; negative is inhibitory
    int delay = 1;       // ticks, >= 1
};

struct SpikeEvent
{
    Tick tick = 0;
    NeuronId neuron = 0;

    auto operator<=>(const SpikeEvent &) const = default;
};

using SpikeTrain = std::vector<SpikeEvent>;

/// Current injected straight into the membrane for a single tick.
struct ExternalInput
{
    NeuronId neuron = 0;
    double current = 0.0; // nA
};

struct Stimulus
{
    Tick tick = 0;
    NeuronId neuron = 0;
    double current = 0.0; // nA
};

struct NeuronGroup
{
    std::string name;
    std::vector<NeuronId> ids;
    NeuronParams params;
};

/// Declarative network description; ids across all groups must be 0..N-1.
struct NetworkSpec
{
    std::vector<NeuronGroup> groups;
    std::vector<Synapse> synapses;
};

/// One synaptic arrival, reported to the delivery observer when it lands.
struct Delivery
{
    Tick spike_tick = 0;
    Tick arrival_tick = 0;
    NeuronId pre = 0;
    NeuronId post = 0;
    double weight = 0.0;
};

class Network
{
public:
    Network() = default;

    [[nodiscard]] std::size_t size() const { return params_.size(); }
    [[nodiscard]] Tick current_tick() const { return tick_; }
    [[nodiscard]] const NeuronParams &params(NeuronId id) const;
    [[nodiscard]] const NeuronState &state(NeuronId id) const;
    [[nodiscard]] std::span<const Synapse> synapses() const { return synapses_; }
    [[nodiscard]] std::size_t pending_deliveries() const;

    /// Advances one tick. Returned spikes are sorted by neuron id.
    std::vector<SpikeEvent> step(std::span<const ExternalInput> external);

    /// All neurons back to rest and the delay line cleared; the tick is kept.
    void reset_state();

    void set_delivery_observer(std::function<void(const Delivery &)> observer)
    {
        observer_ = std::move(observer);
    }

private:
    friend Network build_network(const NetworkSpec &spec);

    struct Pending
    {
        NeuronId pre;
        NeuronId post;
        double weight;
        Tick spike_tick;
    };

    struct Factors
    {
        double decay_m;
        double decay_exc;
        double decay_inh;
        double gain; // mV per nA over one tick
    };

    std::vector<NeuronParams> params_;
    std::vector<Factors> factors_;
    std::vector<NeuronState> states_;
    std::vector<Synapse> synapses_;
    std::vector<std::vector<std::uint32_t>> outgoing_; // pre -> synapse indices
    std::vector<std::vector<Pending>> ring_;            // slot = arrival % size
    std::vector<double> scratch_current_;
    Tick tick_ = 0;
    std::function<void(const Delivery &)> observer_;
};

/// Validates the spec (dense ids, no duplicates, live endpoints, delay >= 1).
Network build_network(const NetworkSpec &spec);

/// Steps `net` at tick `t`, which must equal net.current_tick().
std::vector<SpikeEvent> step_network(Network &net, Tick t,
        std::span<const ExternalInput> external);

/// Folds step_network over n_ticks starting at net.current_tick().
/// Stimuli must be sorted by tick; stimuli past the horizon are ignored.
SpikeTrain run(Network &net, std::span<const Stimulus> stimuli, Tick n_ticks);

// CSV rows `tick,neuron_id` with a header line.
void write_spike_csv(std::ostream &out, const SpikeTrain &train);
SpikeTrain read_spike_csv(std::istream &in);

} // namespace neuropod::snn
