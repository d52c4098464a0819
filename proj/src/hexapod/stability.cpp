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
#include "neuropod/hexapod/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace neuropod::hexapod {
namespace {

double cross(Vec2 o, Vec2 a, Vec2 b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double segment_distance(Vec2 a, Vec2 b, Vec2 p)
{
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0)
    {
        t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
    }
    return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

} // namespace

std::vector<Vec2> convex_hull(std::span<const Vec2> points)
{
    std::vector<Vec2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(),
            [](Vec2 a, Vec2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3)
    {
        return pts;
    }
    // Andrew's monotone chain.
    std::vector<Vec2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto &p : pts)
    {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0)
        {
            --k;
        }
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it)
    {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0)
        {
            --k;
        }
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return hull;
}

double signed_margin(std::span<const Vec2> hull, Vec2 p)
{
    if (hull.empty())
    {
        return -std::numeric_limits<double>::infinity();
    }
    if (hull.size() == 1)
    {
        return -std::hypot(p.x - hull[0].x, p.y - hull[0].y);
    }
    double dist = std::numeric_limits<double>::infinity();
    bool inside = hull.size() >= 3;
    for (std::size_t i = 0; i < hull.size(); ++i)
    {
        const Vec2 a = hull[i];
        const Vec2 b = hull[(i + 1) % hull.size()];
        dist = std::min(dist, segment_distance(a, b, p));
        if (cross(a, b, p) < 0)
        {
            inside = false;
        }
    }
    return inside ? dist : -dist;
}

StabilityReport stability_of(std::span<const Vec2> contact_feet, Vec2 centre)
{
    StabilityReport r;
    r.contacts = static_cast<int>(contact_feet.size());
    if (contact_feet.empty())
    {
        return r;
    }
    r.support_polygon = convex_hull(contact_feet);
    r.margin = signed_margin(r.support_polygon, centre);
    return r;
}

} // namespace neuropod::hexapod
