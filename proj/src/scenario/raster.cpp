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
#include "neuropod/scenario/raster.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "neuropod/error.hpp"

namespace neuropod::scenario {

void write_raster(std::ostream &out, std::span<const aer::TimedAer> events)
{
    aer::AerLog sorted(events.begin(), events.end());
    std::sort(sorted.begin(), sorted.end());
    out << "tick,addr\n";
    for (const auto &e : sorted)
    {
        out << e.tick << ',' << e.addr << '\n';
    }
}

aer::AerLog read_raster(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || line != "tick,addr")
    {
        throw InputError("raster CSV must start with the header 'tick,addr'");
    }
    aer::AerLog out;
    int row = 1;
    while (std::getline(in, line))
    {
        ++row;
        if (line.empty())
        {
            continue;
        }
        std::istringstream ss(line);
        long long tick = 0;
        long long addr = 0;
        char comma = 0;
        if (!(ss >> tick >> comma >> addr) || comma != ',' || tick < 0 || addr < 0 ||
                addr > 0xFFFF || !(ss >> std::ws).eof())
        {
            throw InputError("malformed raster row " + std::to_string(row) + ": " + line);
        }
        out.push_back({tick, static_cast<std::uint16_t>(addr)});
    }
    return out;
}

void export_raster(std::span<const aer::TimedAer> events, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
        throw IoError("cannot write " + path.string());
    }
    write_raster(out, events);
    if (!out)
    {
        throw IoError("write failed for " + path.string());
    }
}

aer::AerLog load_raster(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw IoError("cannot read " + path.string());
    }
    return read_raster(in);
}

} // namespace neuropod::scenario
