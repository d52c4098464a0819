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

#include "neuropod/cpg/cpg_network.hpp"

#include <cmath>
#include <string>

#include "neuropod/error.hpp"
#include "neuropod/snn/spec_io.hpp"

namespace neuropod::cpg {
namespace {

constexpr NeuronId kSelectorBase = 0;
constexpr NeuronId kScpgBase = 3;
constexpr NeuronId kScpgSize = 8;
constexpr NeuronId kMotorBase = kScpgBase + 3 * kScpgSize;
constexpr NeuronId kNeuronCount = kMotorBase + kServoCount;

CpgNetworkLayout make_layout()
{
    CpgNetworkLayout layout;
    layout.id_to_servo.assign(kNeuronCount, -1);
    for (NeuronId g = 0; g < 3; ++g)
    {
        layout.selector_ids[g] = kSelectorBase + g;
        const NeuronId base = kScpgBase + kScpgSize * g;
        layout.scpg[g].pacemakers = {base, base + 1};
        for (NeuronId leg = 0; leg < kLegCount; ++leg)
        {
            layout.scpg[g].phase[leg] = base + 2 + leg;
        }
    }
    for (NeuronId s = 0; s < kServoCount; ++s)
    {
        layout.motor_ids[s] = kMotorBase + s;
        layout.id_to_servo[kMotorBase + s] = static_cast<int>(s);
    }
    return layout;
}

// Pacemaker loop plus phase taps of one sCPG, with ids supplied by the caller.
void add_scpg_synapses(std::vector<snn::Synapse> &syn, const CpgConfig &cfg,
        const GaitSignature &sig, const ScpgIds &ids)
{
    const int d1 = sig.period / 2;
    const int d2 = sig.period - d1;
    syn.push_back({ids.pacemakers[0], ids.pacemakers[1], cfg.w_loop, d1});
    syn.push_back({ids.pacemakers[1], ids.pacemakers[0], cfg.w_loop, d2});
    const auto offsets = sig.tick_offset_of_leg();
    for (int leg = 0; leg < kLegCount; ++leg)
    {
        syn.push_back({ids.pacemakers[0], ids.phase[static_cast<std::size_t>(leg)], cfg.w_tap,
                1 + offsets[static_cast<std::size_t>(leg)]});
    }
}

template <typename T>
void read_if(const nlohmann::json &j, const char *key, T &out)
{
    if (!j.contains(key))
    {
        return;
    }
    try
    {
        out = j.at(key).get<T>();
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError(std::string("bad value for cpg.") + key + ": " + e.what());
    }
}

GaitSignature signature_from_json(const nlohmann::json &j)
{
    GaitSignature sig;
    read_if(j, "period", sig.period);
    if (!j.contains("swing_groups"))
    {
        throw ConfigError("gait signature needs swing_groups");
    }
    for (const auto &g : j.at("swing_groups"))
    {
        SwingGroup group;
        read_if(g, "legs", group.legs);
        read_if(g, "phase", group.phase);
        sig.swing_groups.push_back(std::move(group));
    }
    return sig;
}

nlohmann::json signature_to_json(const GaitSignature &sig)
{
    nlohmann::json groups = nlohmann::json::array();
    for (const auto &g : sig.swing_groups)
    {
        groups.push_back({{"legs", g.legs}, {"phase", g.phase}});
    }
    return {{"period", sig.period}, {"swing_groups", groups}};
}

} // namespace

snn::NeuronParams CpgConfig::default_neuron_params()
{
    snn::NeuronParams p;
    p.tau_syn_exc = 1.0;
    p.v_floor = -85.0;
    return p;
}

void CpgConfig::validate() const
{
    neuron.validate();
    for (const auto &sig : signatures)
    {
        sig.validate();
        if (sig.period < 2 || sig.period < neuron.t_refrac + 1)
        {
            throw ConfigError("gait period " + std::to_string(sig.period) +
                    " is shorter than the refractory cycle");
        }
    }
    if (w_loop <= 0 || w_select <= 0 || w_tap <= 0 || w_motor <= 0)
    {
        throw ConfigError("excitatory CPG weights must be positive");
    }
    if (inhibition_factor < 0 || w_latch < 0)
    {
        throw ConfigError("inhibition magnitudes must be >= 0");
    }
    if (femur_delay < 1 || coxa_offset < 0)
    {
        throw ConfigError("femur_delay must be >= 1 and coxa_offset >= 0");
    }
    const double gain = (neuron.tau_m / neuron.cm) * (1.0 - std::exp(-1.0 / neuron.tau_m));
    if (gain * stimulus_current < neuron.v_thresh - neuron.v_rest)
    {
        throw ConfigError("stimulus_current cannot fire a selector neuron from rest");
    }
}

void update_cpg_config_from_json(CpgConfig &cfg, const nlohmann::json &j)
{
    if (!j.is_object())
    {
        throw ConfigError("cpg section must be an object");
    }
    if (j.contains("neuron"))
    {
        snn::update_params_from_json(cfg.neuron, j.at("neuron"));
    }
    if (j.contains("signatures"))
    {
        const auto &sigs = j.at("signatures");
        for (const auto g : kAllGaits)
        {
            const std::string key(gait_name(g));
            if (sigs.contains(key))
            {
                cfg.signatures[static_cast<std::size_t>(index_of(g))] =
                        signature_from_json(sigs.at(key));
            }
        }
    }
    read_if(j, "w_loop", cfg.w_loop);
    read_if(j, "w_select", cfg.w_select);
    read_if(j, "inhibition_factor", cfg.inhibition_factor);
    read_if(j, "w_tap", cfg.w_tap);
    read_if(j, "w_motor", cfg.w_motor);
    read_if(j, "w_latch", cfg.w_latch);
    read_if(j, "femur_delay", cfg.femur_delay);
    read_if(j, "coxa_offset", cfg.coxa_offset);
    read_if(j, "stimulus_current", cfg.stimulus_current);
    read_if(j, "selector_inhibition", cfg.selector_inhibition);
    read_if(j, "selector_latch", cfg.selector_latch);
    cfg.validate();
}

nlohmann::json cpg_config_to_json(const CpgConfig &cfg)
{
    nlohmann::json sigs;
    for (const auto g : kAllGaits)
    {
        sigs[std::string(gait_name(g))] =
                signature_to_json(cfg.signatures[static_cast<std::size_t>(index_of(g))]);
    }
    return {
        {"neuron", snn::params_to_json(cfg.neuron)},
        {"signatures", sigs},
        {"w_loop", cfg.w_loop},
        {"w_select", cfg.w_select},
        {"inhibition_factor", cfg.inhibition_factor},
        {"w_tap", cfg.w_tap},
        {"w_motor", cfg.w_motor},
        {"w_latch", cfg.w_latch},
        {"femur_delay", cfg.femur_delay},
        {"coxa_offset", cfg.coxa_offset},
        {"stimulus_current", cfg.stimulus_current},
        {"selector_inhibition", cfg.selector_inhibition},
        {"selector_latch", cfg.selector_latch},
    };
}

int CpgNetworkLayout::pacemaker_gait(NeuronId id) const
{
    for (int g = 0; g < 3; ++g)
    {
        const auto &pm = scpg[static_cast<std::size_t>(g)].pacemakers;
        if (id == pm[0] || id == pm[1])
        {
            return g;
        }
    }
    return -1;
}

snn::NetworkSpec cpg_network_spec(const CpgConfig &cfg, CpgNetworkLayout *layout_out)
{
    cfg.validate();
    const auto layout = make_layout();

    snn::NetworkSpec spec;
    auto group = [&](std::string name, std::vector<NeuronId> ids) {
        spec.groups.push_back(snn::NeuronGroup{std::move(name), std::move(ids), cfg.neuron});
    };
    group("selector", {layout.selector_ids.begin(), layout.selector_ids.end()});
    for (const auto g : kAllGaits)
    {
        const auto &ids = layout.scpg[static_cast<std::size_t>(index_of(g))];
        std::vector<NeuronId> members(ids.pacemakers.begin(), ids.pacemakers.end());
        members.insert(members.end(), ids.phase.begin(), ids.phase.end());
        group("scpg_" + std::string(gait_name(g)), std::move(members));
    }
    group("motor", {layout.motor_ids.begin(), layout.motor_ids.end()});

    auto &syn = spec.synapses;
    const double w_inh = -cfg.inhibition_factor * cfg.w_loop;
    for (int g = 0; g < 3; ++g)
    {
        const auto gi = static_cast<std::size_t>(g);
        const auto &ids = layout.scpg[gi];
        const NeuronId sel = layout.selector_ids[gi];
        add_scpg_synapses(syn, cfg, cfg.signatures[gi], ids);

        syn.push_back({sel, ids.pacemakers[0], cfg.w_select, 1});
        if (cfg.selector_latch && cfg.w_latch > 0)
        {
            syn.push_back({ids.pacemakers[0], sel, -cfg.w_latch, 1});
            syn.push_back({ids.pacemakers[1], sel, -cfg.w_latch, 1});
        }
        if (cfg.selector_inhibition && cfg.inhibition_factor > 0)
        {
            for (int h = 0; h < 3; ++h)
            {
                if (h == g)
                {
                    continue;
                }
                const auto &other = layout.scpg[static_cast<std::size_t>(h)];
                for (const auto id : other.pacemakers)
                {
                    syn.push_back({sel, id, w_inh, 1});
                }
                for (const auto id : other.phase)
                {
                    syn.push_back({sel, id, w_inh, 1});
                }
            }
        }
        for (int leg = 0; leg < kLegCount; ++leg)
        {
            const NeuronId phase = ids.phase[static_cast<std::size_t>(leg)];
            syn.push_back({phase,
                    layout.motor_ids[static_cast<std::size_t>(servo_index(leg, Joint::Femur))],
                    cfg.w_motor, cfg.femur_delay});
            syn.push_back({phase,
                    layout.motor_ids[static_cast<std::size_t>(servo_index(leg, Joint::Coxa))],
                    cfg.w_motor, cfg.femur_delay + cfg.coxa_offset});
        }
    }

    if (layout_out != nullptr)
    {
        *layout_out = layout;
    }
    return spec;
}

CpgNetwork build_cpg_network(const CpgConfig &cfg)
{
    CpgNetwork out;
    const auto spec = cpg_network_spec(cfg, &out.layout);
    out.net = snn::build_network(spec);
    return out;
}

snn::NetworkSpec scpg_spec(const CpgConfig &cfg, GaitId g)
{
    cfg.validate();
    ScpgIds ids;
    ids.pacemakers = {0, 1};
    for (NeuronId leg = 0; leg < kLegCount; ++leg)
    {
        ids.phase[leg] = 2 + leg;
    }
    snn::NetworkSpec spec;
    spec.groups.push_back(snn::NeuronGroup{"scpg_" + std::string(gait_name(g)),
            {0, 1, 2, 3, 4, 5, 6, 7}, cfg.neuron});
    add_scpg_synapses(spec.synapses, cfg, cfg.signatures[static_cast<std::size_t>(index_of(g))],
            ids);
    return spec;
}

snn::Stimulus gait_stimulus(GaitId g, Tick t, const CpgNetworkLayout &layout,
        const CpgConfig &cfg)
{
    if (t < 0)
    {
        throw InputError("gait stimulus tick must be >= 0");
    }
    return snn::Stimulus{t, layout.selector_ids[static_cast<std::size_t>(index_of(g))],
            cfg.stimulus_current};
}

} // namespace neuropod::cpg
