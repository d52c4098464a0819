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

#include <optional>
#include <span>
#include <vector>

#include "neuropod/hexapod/kinematics.hpp"

namespace neuropod::hexapod {

/// Convex hull, counter-clockwise, without collinear points.
std::vector<Vec2> convex_hull(std::span<const Vec2> points);

/// Signed distance of p to the hull: positive inside, negative outside.
/// Hulls with fewer than three vertices give -distance (never positive).
double signed_margin(std::span<const Vec2> hull, Vec2 p);

struct StabilityReport
{
    std::vector<Vec2> support_polygon;
    std::optional<double> margin; // nullopt without any contact
    int contacts = 0;
};

StabilityReport stability_of(std::span<const Vec2> contact_feet, Vec2 centre = {});

} // namespace neuropod::hexapod
