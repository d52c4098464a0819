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
// pipeline.hpp - the full NeuroPod loop, one tick at a time
//
// Per tick t:
// 1) queued panel commands drive the selector; on new_mode its value leaves
//    as an AER event, crosses the uplink and pulses selector neuron [addr]
// 2) the network steps
// 3) motor spikes become FW addresses now and BW addresses at t + 1; each
//    crosses the downlink into the pattern decoder; the tick's enable vector
//    updates the PWM bank
// 4) the world integrates time_scale_factor ms of servo (wall) time

#pragma once

#include <deque>
#include <vector>

#include "neuropod/aer/link.hpp"
#include "neuropod/controller/decoder.hpp"
#include "neuropod/controller/pwm.hpp"
#include "neuropod/controller/selector.hpp"
#include "neuropod/cpg/analysis.hpp"
#include "neuropod/hexapod/world.hpp"
#include "neuropod/scenario/config.hpp"

namespace neuropod::scenario {

struct TickResult
{
    Tick tick = 0;
    std::vector<snn::SpikeEvent> spikes;
    std::vector<aer::TimedAer> motor_aer;  // addresses emitted by the motor layer
    std::vector<controller::DecodedCommand> decoded;
    std::optional<cpg::GaitId> gait_sent;  // selector value that reached the network
    controller::EnableVector lines;
    double min_margin = 0.0;  // over this tick's world substeps
    double mean_margin = 0.0;
    bool margin_valid = false;
    double body_advance_cm = 0.0;
};

class Pipeline
{
public:
    explicit Pipeline(SystemConfig cfg = {}, double time_scale_factor = 100.0);

    void press_up();
    void press_down();
    void set_gait(cpg::GaitId g);
    /// Global reset: network at rest, selector 0, PWM home, world at home.
    /// The tick counter keeps running.
    void reset();
    void set_time_scale(double factor);

    TickResult step();
    /// Sends the BW addresses still owed for the last stepped tick, at tick(),
    /// without stepping the network or the world. Used at the end of a run.
    TickResult drain();

    [[nodiscard]] Tick tick() const { return tick_; }
    [[nodiscard]] double time_scale() const { return factor_; }
    [[nodiscard]] const SystemConfig &config() const { return cfg_; }
    [[nodiscard]] const cpg::CpgNetworkLayout &layout() const { return cpg_.layout; }
    [[nodiscard]] const snn::Network &network() const { return cpg_.net; }
    [[nodiscard]] const controller::SelectorCounter &selector() const { return selector_; }
    [[nodiscard]] const controller::PwmBank &pwm() const { return bank_; }
    [[nodiscard]] const controller::PatternDecoder &decoder() const { return decoder_; }
    [[nodiscard]] const hexapod::HexapodWorld &world() const { return world_; }
    [[nodiscard]] const aer::AerSpinnLink &uplink() const { return uplink_; }
    [[nodiscard]] const aer::AerSpinnLink &downlink() const { return downlink_; }
    /// Gait last delivered to the network, if any since the last reset.
    [[nodiscard]] std::optional<cpg::GaitId> commanded_gait() const { return commanded_; }

private:
    enum class Press : std::uint8_t
    {
        Up,
        Down,
        Load,
    };
    struct Pending
    {
        Press press;
        std::uint8_t value;
    };

    SystemConfig cfg_;
    double factor_;
    cpg::CpgNetwork cpg_;
    controller::SelectorCounter selector_;
    controller::PatternDecoder decoder_;
    controller::PwmBank bank_;
    aer::AerSpinnLink uplink_;
    aer::AerSpinnLink downlink_;
    hexapod::HexapodWorld world_;
    std::vector<Pending> presses_;
    std::vector<aer::TimedAer> pending_bw_;
    std::optional<cpg::GaitId> commanded_;
    Tick tick_ = 0;

    void deliver_motor(std::vector<aer::TimedAer> out, TickResult &r);
};

} // namespace neuropod::scenario
