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
#include "neuropod/controller/latency.hpp"

#include <cstdio>

#include "neuropod/error.hpp"

namespace neuropod::controller {

std::string Latency::ns_text() const
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%lld.%02lld", static_cast<long long>(centi_ns / 100),
            static_cast<long long>(centi_ns % 100));
    return buf;
}

Latency latency_of_cycles(std::int64_t cycles)
{
    return {cycles, cycles * kClockPeriodCentiNs};
}

LatencyModel::LatencyModel()
    : LatencyModel({
              {"selector", 1, 2, 4},
              {"aer_out", 5, 7, 5},
              {"aer_spinn", 66, 213, 272},
              {"aer_in", 2, 7, 10},
              {"decoder", 1, 12, 24},
              {"pwm_block", 91, 720, 576},
      })
{
}

LatencyModel::LatencyModel(std::vector<Stage> stages) : stages_(std::move(stages))
{
    for (const auto &s : stages_)
    {
        if (s.cycles <= 0)
        {
            throw ConfigError("stage " + s.name + " must take a positive number of cycles");
        }
    }
}

Latency LatencyModel::stage_latency(std::string_view stage) const
{
    for (const auto &s : stages_)
    {
        if (s.name == stage)
        {
            return latency_of_cycles(s.cycles);
        }
    }
    throw InputError("unknown latency stage '" + std::string(stage) + "'");
}

Latency LatencyModel::path_latency(std::span<const std::string> stages) const
{
    std::int64_t cycles = 0;
    for (const auto &name : stages)
    {
        cycles += stage_latency(name).cycles;
    }
    return latency_of_cycles(cycles);
}

Latency LatencyModel::total() const
{
    std::int64_t cycles = 0;
    for (const auto &s : stages_)
    {
        cycles += s.cycles;
    }
    return latency_of_cycles(cycles);
}

nlohmann::json LatencyModel::report() const
{
    nlohmann::json stages = nlohmann::json::array();
    for (const auto &s : stages_)
    {
        const auto l = latency_of_cycles(s.cycles);
        stages.push_back({
            {"name", s.name},
            {"cycles", l.cycles},
            {"ns", l.ns()},
            {"ns_text", l.ns_text()},
            {"exact_ns", l.exact_ns()},
            {"luts", s.luts},
            {"registers", s.registers},
        });
    }
    const auto t = total();
    return {
        {"clock_period_ns", kClockPeriodNs},
        {"exact_clock_period_ns", kExactClockPeriodNs},
        {"stages", stages},
        {"total", {{"cycles", t.cycles}, {"ns", t.ns()}, {"ns_text", t.ns_text()},
                          {"exact_ns", t.exact_ns()}}},
    };
}

} // namespace neuropod::controller
