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

#include <deque>
#include <optional>
#include <span>

#include "neuropod/cpg/analysis.hpp"

namespace neuropod::scenario {

/// Online counterpart of convergence_delay: fed tick by tick, it reports a
/// delay once every window since the last mismatch has matched the target for
/// a further full window length.
class GaitMonitor
{
public:
    explicit GaitMonitor(const std::array<cpg::GaitSignature, 3> &sigs = cpg::default_signatures(),
            int window = 0);

    /// Motor events of tick t (FW and BW); t must increase by one per call.
    void observe(Tick t, std::span<const cpg::MotorEvent> events);
    void gait_changed(Tick t_change, cpg::GaitId target);
    void clear();

    /// Classification of the latest complete window.
    [[nodiscard]] std::optional<cpg::GaitId> current() const { return current_; }
    [[nodiscard]] std::optional<cpg::GaitId> target() const { return target_; }
    [[nodiscard]] std::optional<cpg::ConvergenceResult> last_result() const { return result_; }
    /// True once per measured switch, right after the delay is known.
    bool take_new_result();
    [[nodiscard]] int window() const { return window_; }

private:
    std::array<cpg::GaitSignature, 3> sigs_;
    int window_;
    std::deque<cpg::MotorEvent> events_;
    Tick now_ = -1;
    std::optional<cpg::GaitId> current_;
    std::optional<cpg::GaitId> target_;
    Tick t_change_ = 0;
    Tick last_bad_ = 0;
    bool pending_ = false;
    std::optional<cpg::ConvergenceResult> result_;
    bool fresh_ = false;
};

} // namespace neuropod::scenario
