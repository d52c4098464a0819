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

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

namespace neuropod::live {

/// Blocking NDJSON client used by tests and the acceptance harness.
class LineClient
{
public:
    LineClient(const std::string &host, std::uint16_t port);
    ~LineClient();
    LineClient(const LineClient &) = delete;
    LineClient &operator=(const LineClient &) = delete;

    void send_line(const std::string &line);
    void send(const nlohmann::json &message) { send_line(message.dump()); }
    /// Next message, or nullopt on timeout or when the server closed.
    std::optional<nlohmann::json> next(std::chrono::milliseconds timeout);
    /// Raw next line, without parsing.
    std::optional<std::string> next_line(std::chrono::milliseconds timeout);
    void close();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace neuropod::live
