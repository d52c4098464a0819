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

// cpg_network.hpp - gait-selectable spiking CPG
//
// Topology (39 neurons):
//   selector[3]  one neuron per gait, driven by a single external pulse
//   sCPG[g]      two pacemakers in an excitatory delay loop whose round trip
//                equals the gait period, plus six phase neurons (one per leg)
//                tapping the first pacemaker with delay 1 + phase offset
//   motor[12]    one per servo; phase neuron of leg L drives the femur and
//                coxa motor neurons of L in every sCPG
// Selector g excites pacemaker 0 of sCPG g and inhibits all eight neurons of
// the other two sCPGs. While sCPG g oscillates its pacemakers hold selector g
// inhibited, so repeating the same selection is a no-op.

#pragma once

#include <array>
#include <vector>

#include <json.hpp>

#include "neuropod/cpg/gait.hpp"
#include "neuropod/snn/network.hpp"

namespace neuropod::cpg {

using snn::NeuronId;

struct CpgConfig
{
    snn::NeuronParams neuron = default_neuron_params();
    std::array<GaitSignature, 3> signatures = default_signatures();

    double w_loop = 200.0;        // pacemaker <-> pacemaker
    double w_select = 200.0;      // selector g -> pacemaker 0 of sCPG g
    double inhibition_factor = 5.0; // selector inhibition = factor * w_loop
    double w_tap = 200.0;         // pacemaker 0 -> phase neurons
    double w_motor = 100.0;       // phase neuron -> motor neurons
    double w_latch = 4.0;         // pacemakers -> own selector (inhibitory)
    int femur_delay = 1;          // phase -> femur motor neuron
    int coxa_offset = 0;          // extra ticks for the coxa motor neuron
    double stimulus_current = 30.0; // nA, one-tick selector pulse
    bool selector_inhibition = true;
    bool selector_latch = true;

    static snn::NeuronParams default_neuron_params();
    void validate() const;
};

void update_cpg_config_from_json(CpgConfig &cfg, const nlohmann::json &j);
nlohmann::json cpg_config_to_json(const CpgConfig &cfg);

struct ScpgIds
{
    std::array<NeuronId, 2> pacemakers{};
    std::array<NeuronId, kLegCount> phase{}; // indexed by leg
};

struct CpgNetworkLayout
{
    std::array<NeuronId, 3> selector_ids{};
    std::array<ScpgIds, 3> scpg{};
    std::array<NeuronId, kServoCount> motor_ids{}; // indexed by servo
    std::vector<int> id_to_servo;                   // -1 for non-motor neurons

    [[nodiscard]] std::size_t neuron_count() const { return id_to_servo.size(); }
    [[nodiscard]] int servo_of(NeuronId id) const
    {
        return id < id_to_servo.size() ? id_to_servo[id] : -1;
    }
    /// Gait whose pacemaker this is, or -1.
    [[nodiscard]] int pacemaker_gait(NeuronId id) const;
};

struct CpgNetwork
{
    snn::Network net;
    CpgNetworkLayout layout;
};

snn::NetworkSpec cpg_network_spec(const CpgConfig &cfg, CpgNetworkLayout *layout_out = nullptr);
CpgNetwork build_cpg_network(const CpgConfig &cfg = {});

/// A standalone 8-neuron sCPG (2 pacemakers + 6 phase neurons), no selector:
/// ids 0,1 are the pacemakers, 2+leg the phase neurons.
snn::NetworkSpec scpg_spec(const CpgConfig &cfg, GaitId g);

/// One suprathreshold pulse at (t, selector_ids[g]).
snn::Stimulus gait_stimulus(GaitId g, Tick t, const CpgNetworkLayout &layout,
        const CpgConfig &cfg = {});

} // namespace neuropod::cpg
