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

#include "neuropod/snn/spec_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "neuropod/error.hpp"

namespace neuropod::snn {
namespace {

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
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

} // namespace

void update_params_from_json(NeuronParams &params, const nlohmann::json &j)
{
    if (!j.is_object())
    {
        throw ConfigError("neuron params must be an object");
    }
    read_if(j, "tau_m", params.tau_m);
    read_if(j, "v_rest", params.v_rest);
    read_if(j, "v_reset", params.v_reset);
    read_if(j, "v_thresh", params.v_thresh);
    read_if(j, "t_refrac", params.t_refrac);
    read_if(j, "tau_syn_exc", params.tau_syn_exc);
    read_if(j, "tau_syn_inh", params.tau_syn_inh);
    read_if(j, "cm", params.cm);
    if (j.contains("v_floor"))
    {
        // null means "no floor"
        if (j.at("v_floor").is_null())
        {
            params.v_floor = -std::numeric_limits<double>::infinity();
        }
        else
        {
            read_if(j, "v_floor", params.v_floor);
        }
    }
    params.validate();
}

nlohmann::json params_to_json(const NeuronParams &params)
{
    nlohmann::json j = {
        {"tau_m", params.tau_m},
        {"v_rest", params.v_rest},
        {"v_reset", params.v_reset},
        {"v_thresh", params.v_thresh},
        {"t_refrac", params.t_refrac},
        {"tau_syn_exc", params.tau_syn_exc},
        {"tau_syn_inh", params.tau_syn_inh},
        {"cm", params.cm},
    };
    if (std::isfinite(params.v_floor))
    {
        j["v_floor"] = params.v_floor;
    }
    else
    {
        j["v_floor"] = nullptr;
    }
    return j;
}

NetworkSpec network_spec_from_json(const nlohmann::json &j)
{
    NetworkSpec spec;
    if (!j.is_object())
    {
        throw ConfigError("network spec must be an object");
    }
    NeuronId next_free = 0;
    if (j.contains("groups"))
    {
        for (const auto &g : j.at("groups"))
        {
            NeuronGroup group;
            read_if(g, "name", group.name);
            if (g.contains("ids"))
            {
                read_if(g, "ids", group.ids);
                for (const auto id : group.ids)
                {
                    next_free = std::max(next_free, id + 1);
                }
            }
            else if (g.contains("count"))
            {
                int count = 0;
                read_if(g, "count", count);
                if (count < 0)
                {
                    throw ConfigError("group count must be >= 0");
                }
                for (int i = 0; i < count; ++i)
                {
                    group.ids.push_back(next_free++);
                }
            }
            else
            {
                throw ConfigError("group needs 'ids' or 'count'");
            }
            if (g.contains("params"))
            {
                update_params_from_json(group.params, g.at("params"));
            }
            spec.groups.push_back(std::move(group));
        }
    }
    if (j.contains("synapses"))
    {
        for (const auto &s : j.at("synapses"))
        {
            Synapse syn;
            read_if(s, "pre", syn.pre);
            read_if(s, "post", syn.post);
            read_if(s, "weight", syn.weight);
            read_if(s, "delay", syn.delay);
            spec.synapses.push_back(syn);
        }
    }
    return spec;
}

nlohmann::json network_spec_to_json(const NetworkSpec &spec)
{
    nlohmann::json groups = nlohmann::json::array();
    for (const auto &g : spec.groups)
    {
        groups.push_back({{"name", g.name}, {"ids", g.ids}, {"params", params_to_json(g.params)}});
    }
    nlohmann::json synapses = nlohmann::json::array();
    for (const auto &s : spec.synapses)
    {
        synapses.push_back({{"pre", s.pre}, {"post", s.post}, {"weight", s.weight}, {"delay", s.delay}});
    }
    return {{"groups", groups}, {"synapses", synapses}};
}

} // namespace neuropod::snn
