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

#include <filesystem>
#include <iosfwd>
#include <span>

#include "neuropod/aer/aer_event.hpp"

namespace neuropod::scenario {

/// CSV with header "tick,addr", rows sorted by (tick, addr).
void write_raster(std::ostream &out, std::span<const aer::TimedAer> events);
aer::AerLog read_raster(std::istream &in);

/// Throws IoError when the file cannot be written or read.
void export_raster(std::span<const aer::TimedAer> events, const std::filesystem::path &path);
aer::AerLog load_raster(const std::filesystem::path &path);

} // namespace neuropod::scenario
