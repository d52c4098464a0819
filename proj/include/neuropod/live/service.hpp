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
// service.hpp - real-time host for the pipeline
//
// Threads:
//   simulation  owns the Pipeline; wakes at absolute tick deadlines
//               (time_scale_factor ms apart), applies queued commands, steps,
//               and posts immutable serialized events to the IO thread
//   io          accepts TCP clients, speaks NDJSON or (when the first line is
//               an HTTP GET) WebSocket, parses commands, fans events out
// The two share only the command queue and a handful of atomics.

#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>

#include "neuropod/scenario/config.hpp"

namespace neuropod::live {

struct ServiceOptions
{
    std::string bind_address = "127.0.0.1";
    std::uint16_t port = 7878; // 0 picks a free port
    double time_scale_factor = 100.0;
    scenario::SystemConfig system;
    double pose_fps = 30.0;          // wall-clock cap on pose messages
    int metrics_every_ticks = 10;
    bool stream_spikes = true;
    std::size_t max_client_backlog = 20000; // queued messages before a client is dropped
};

/// Environment variable that overrides ServiceOptions::bind_address.
inline constexpr const char *kBindAddressEnv = "NEUROPOD_BIND_ADDRESS";

struct ServiceStats
{
    std::int64_t ticks = 0;
    double drift_ticks = 0.0;       // latest tick start minus its deadline, in tick periods
    double max_lateness_ms = 0.0;
    std::size_t clients = 0;
};

class LiveService
{
public:
    explicit LiveService(ServiceOptions options);
    ~LiveService();
    LiveService(const LiveService &) = delete;
    LiveService &operator=(const LiveService &) = delete;

    /// Binds and starts both threads. Throws IoError when the address is not
    /// bindable.
    void start();
    /// Stops both threads and closes every connection; idempotent.
    void stop();
    [[nodiscard]] std::uint16_t port() const;
    [[nodiscard]] ServiceStats stats() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace neuropod::live
