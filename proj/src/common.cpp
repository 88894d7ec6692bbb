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

#include "cpa/common.hpp"

#include <cmath>

namespace cpa
{
    double wavelength_m(double frequency_hz)
    {
        if (!(frequency_hz > 0.0))
            throw std::invalid_argument("frequency must be positive");
        return kSpeedOfLight / frequency_hz;
    }

    double wrap_phase(double phase)
    {
        double w = std::remainder(phase, kTwoPi); // [-pi, pi]
        if (w <= -kPi)
            w += kTwoPi;
        return w;
    }

    std::vector<double> linspace(double lo, double hi, int count)
    {
        if (count < 1)
            throw std::invalid_argument("linspace needs at least one sample");
        std::vector<double> out(count);
        if (count == 1)
        {
            out[0] = lo;
            return out;
        }
        const double step = (hi - lo) / (count - 1);
        for (int i = 0; i < count; ++i)
            out[i] = lo + step * i;
        out.back() = hi;
        return out;
    }
}
