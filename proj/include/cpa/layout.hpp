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

#pragma once

#include <vector>

namespace cpa
{
    // Element abscissae along the plank axis, in design wavelengths
    struct PlankLayout
    {
        std::vector<double> positions;

        static PlankLayout uniform(int count, double spacing);

        int count() const { return static_cast<int>(positions.size()); }
        double length() const { return positions.empty() ? 0.0 : positions.back() - positions.front(); }
        double min_gap() const;
        double max_gap() const;

        // Ascending, starting at 0, no coincident elements
        void validate() const;
    };
}
