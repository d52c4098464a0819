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

#pragma once

#include <json.hpp>

#include "neuropod/snn/network.hpp"

namespace neuropod::snn {

// Missing keys keep the value already present in `params`.
void update_params_from_json(NeuronParams &params, const nlohmann::json &j);
nlohmann::json params_to_json(const NeuronParams &params);

// {"groups": [{"name", "ids" | "count", "params"}], "synapses": [{pre, post, weight, delay}]}
// A group given by "count" takes the next free ids in order.
NetworkSpec network_spec_from_json(const nlohmann::json &j);
nlohmann::json network_spec_to_json(const NetworkSpec &spec);

} // namespace neuropod::snn
