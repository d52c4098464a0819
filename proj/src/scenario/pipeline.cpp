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
#include "neuropod/scenario/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "neuropod/error.hpp"

namespace neuropod::scenario {

Pipeline::Pipeline(SystemConfig cfg, double time_scale_factor)
    : cfg_(std::move(cfg)),
      factor_(time_scale_factor),
      cpg_(cpg::build_cpg_network(cfg_.cpg)),
      bank_(controller::make_bank(cfg_.pwm)),
      uplink_("uplink", aer::CodeTable::standard(), cfg_.uplink_faults),
      downlink_("downlink", aer::CodeTable::standard(), cfg_.downlink_faults),
      world_(hexapod::make_world(cfg_.geometry))
{
    cfg_.validate();
    set_time_scale(time_scale_factor);
}

void Pipeline::press_up()
{
    presses_.push_back({Press::Up, 0});
}

void Pipeline::press_down()
{
    presses_.push_back({Press::Down, 0});
}

void Pipeline::set_gait(cpg::GaitId g)
{
    presses_.push_back({Press::Load, static_cast<std::uint8_t>(cpg::index_of(g))});
}

void Pipeline::reset()
{
    cpg_.net.reset_state();
    selector_ = {};
    decoder_.reset();
    controller::reset_release(bank_);
    uplink_.reset();
    downlink_.reset();
    const double wall = world_.t_wall_ms;
    const Tick sim = world_.t_sim_ms;
    world_ = hexapod::make_world(cfg_.geometry);
    world_.t_wall_ms = wall;
    world_.t_sim_ms = sim;
    presses_.clear();
    pending_bw_.clear();
    commanded_.reset();
}

void Pipeline::set_time_scale(double factor)
{
    if (!(factor >= 1.0))
    {
        throw ConfigError("time_scale_factor must be >= 1");
    }
    factor_ = factor;
}

void Pipeline::deliver_motor(std::vector<aer::TimedAer> out, TickResult &r)
{
    std::sort(out.begin(), out.end());
    for (const auto &e : out)
    {
        const auto received = downlink_.transfer(aer::AerEvent{e.addr});
        if (!received)
        {
            continue;
        }
        if (const auto cmd = decoder_.accept(*received))
        {
            r.decoded.push_back(*cmd);
        }
    }
    r.motor_aer = std::move(out);
    r.lines = decoder_.take();
    controller::apply_enables(bank_, r.lines);
}

TickResult Pipeline::drain()
{
    TickResult r;
    r.tick = tick_;
    std::vector<aer::TimedAer> out;
    out.swap(pending_bw_);
    deliver_motor(std::move(out), r);
    return r;
}

TickResult Pipeline::step()
{
    TickResult r;
    r.tick = tick_;

    std::vector<snn::ExternalInput> external;
    for (const auto &p : presses_)
    {
        switch (p.press)
        {
        case Press::Up:
            selector_ = controller::selector_step(selector_, true, false);
            break;
        case Press::Down:
            selector_ = controller::selector_step(selector_, false, true);
            break;
        case Press::Load:
            selector_ = controller::selector_load(selector_, p.value);
            break;
        }
        if (!selector_.new_mode)
        {
            continue;
        }
        const auto delivered = uplink_.transfer(aer::AerEvent{selector_.value});
        if (delivered && delivered->addr < cpg_.layout.selector_ids.size())
        {
            external.push_back({cpg_.layout.selector_ids[delivered->addr],
                    cfg_.cpg.stimulus_current});
            commanded_ = cpg::gait_from_index(delivered->addr);
            r.gait_sent = commanded_;
        }
    }
    presses_.clear();
    selector_.new_mode = false;

    r.spikes = snn::step_network(cpg_.net, tick_, external);

    std::vector<aer::TimedAer> out;
    out.swap(pending_bw_);
    for (const auto &s : r.spikes)
    {
        const int servo = cpg_.layout.servo_of(s.neuron);
        if (servo < 0)
        {
            continue;
        }
        out.push_back({tick_, cpg::motor_address(servo, cpg::MotorAction::Fw)});
        pending_bw_.push_back({tick_ + 1, cpg::motor_address(servo, cpg::MotorAction::Bw)});
    }
    deliver_motor(std::move(out), r);

    const int substeps = std::max(1, static_cast<int>(std::ceil(factor_ / cfg_.world_substep_ms)));
    const double dt_s = factor_ / substeps / 1000.0;
    int margins = 0;
    for (int i = 0; i < substeps; ++i)
    {
        r.body_advance_cm += hexapod::step_world(world_, bank_, dt_s);
        if (const auto m = world_.stability.margin)
        {
            r.min_margin = margins > 0 ? std::min(r.min_margin, *m) : *m;
            r.mean_margin += *m;
            ++margins;
        }
    }
    if (margins > 0)
    {
        r.mean_margin /= margins;
        r.margin_valid = true;
    }
    ++tick_;
    world_.t_sim_ms = tick_;
    return r;
}

} // namespace neuropod::scenario
