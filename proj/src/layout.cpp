// SPDX-License-Identifier: Apache-2.0
//
// cpa-synth: sparse multi-beam conical phased array synthesis
// Copyright (C) 2026 The cpa-synth contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cpa/layout.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace cpa
{
    PlankLayout PlankLayout::uniform(int count, double spacing)
    {
        if (count < 1 || !(spacing > 0.0))
            throw std::invalid_argument("uniform layout needs count >= 1 and positive spacing");
        PlankLayout out;
        out.positions.resize(count);
        for (int i = 0; i < count; ++i)
            out.positions[i] = i * spacing;
        return out;
    }

    double PlankLayout::min_gap() const
    {
        double g = std::numeric_limits<double>::infinity();
        for (size_t i = 1; i < positions.size(); ++i)
            g = std::min(g, positions[i] - positions[i - 1]);
        return g;
    }

    double PlankLayout::max_gap() const
    {
        double g = 0.0;
        for (size_t i = 1; i < positions.size(); ++i)
            g = std::max(g, positions[i] - positions[i - 1]);
        return g;
    }

    void PlankLayout::validate() const
    {
        if (positions.empty())
            throw std::invalid_argument("plank layout is empty");
        if (positions.front() != 0.0)
            throw std::invalid_argument("plank layout must start at 0");
        for (size_t i = 1; i < positions.size(); ++i)
            if (!(positions[i] > positions[i - 1]))
                throw std::invalid_argument("plank layout positions must be strictly increasing");
    }
}
