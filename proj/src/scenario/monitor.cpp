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
#include "neuropod/scenario/monitor.hpp"

#include <vector>

namespace neuropod::scenario {
namespace {

// A switch still unsettled this long after the command is reported saturated.
constexpr Tick kGiveUpTicks = 1000;

} // namespace

GaitMonitor::GaitMonitor(const std::array<cpg::GaitSignature, 3> &sigs, int window)
    : sigs_(sigs), window_(window > 0 ? window : cpg::default_window(sigs))
{
}

void GaitMonitor::clear()
{
    events_.clear();
    current_.reset();
    target_.reset();
    pending_ = false;
    result_.reset();
    fresh_ = false;
}

void GaitMonitor::gait_changed(Tick t_change, cpg::GaitId target)
{
    target_ = target;
    t_change_ = t_change;
    last_bad_ = t_change - 1;
    pending_ = true;
}

bool GaitMonitor::take_new_result()
{
    const bool out = fresh_;
    fresh_ = false;
    return out;
}

void GaitMonitor::observe(Tick t, std::span<const cpg::MotorEvent> events)
{
    now_ = t;
    events_.insert(events_.end(), events.begin(), events.end());
    const Tick start = t + 1 - window_;
    while (!events_.empty() && events_.front().tick < start)
    {
        events_.pop_front();
    }
    if (start < 0)
    {
        return;
    }
    const std::vector<cpg::MotorEvent> recent(events_.begin(), events_.end());
    current_ = cpg::classify_window(recent, {start, t + 1}, sigs_);

    if (!pending_ || start < t_change_)
    {
        return;
    }
    if (current_ != target_)
    {
        last_bad_ = start;
    }
    if (start - (last_bad_ + 1) >= window_)
    {
        result_ = cpg::ConvergenceResult{*target_, t_change_, last_bad_ + 1 - t_change_, false};
        pending_ = false;
        fresh_ = true;
    }
    else if (t - t_change_ >= kGiveUpTicks)
    {
        result_ = cpg::ConvergenceResult{*target_, t_change_, 0, true};
        pending_ = false;
        fresh_ = true;
    }
}

} // namespace neuropod::scenario
