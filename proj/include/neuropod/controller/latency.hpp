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

// latency.hpp - FPGA top-module cycle accounting
//
// Nanoseconds use the truncated 20.83 ns clock period (48 MHz) and are kept
// as integer hundredths so that the table values print exactly.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace neuropod::controller {

inline constexpr std::int64_t kClockPeriodCentiNs = 2083;
inline constexpr double kClockPeriodNs = 20.83;
inline constexpr double kExactClockPeriodNs = 1e9 / 48e6;

struct Stage
{
    std::string name;
    std::int64_t cycles = 0;
    // Resource figures of the synthesized block; documented, not modeled.
    int luts = 0;
    int registers = 0;
};

struct Latency
{
    std::int64_t cycles = 0;
    std::int64_t centi_ns = 0;

    [[nodiscard]] double ns() const { return static_cast<double>(centi_ns) / 100.0; }
    [[nodiscard]] double exact_ns() const
    {
        return static_cast<double>(cycles) * kExactClockPeriodNs;
    }
    /// Two decimals, e.g. "1374.78".
    [[nodiscard]] std::string ns_text() const;
};

Latency latency_of_cycles(std::int64_t cycles);

class LatencyModel
{
public:
    /// selector 1, aer_out 5, aer_spinn 66, aer_in 2, decoder 1, pwm_block 91.
    LatencyModel();
    explicit LatencyModel(std::vector<Stage> stages);

    [[nodiscard]] const std::vector<Stage> &stages() const { return stages_; }
    /// Throws InputError for an unknown stage.
    [[nodiscard]] Latency stage_latency(std::string_view stage) const;
    [[nodiscard]] Latency path_latency(std::span<const std::string> stages) const;
    [[nodiscard]] Latency total() const;
    [[nodiscard]] nlohmann::json report() const;

private:
    std::vector<Stage> stages_;
};

} // namespace neuropod::controller
