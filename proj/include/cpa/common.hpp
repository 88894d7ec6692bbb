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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpa
{
    using cdouble = std::complex<double>;

    inline constexpr double kPi = std::numbers::pi;
    inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
    inline constexpr double kSpeedOfLight = 299792458.0; // m/s

    inline constexpr double deg2rad(double deg) { return deg * (kPi / 180.0); }
    inline constexpr double rad2deg(double rad) { return rad * (180.0 / kPi); }

    double wavelength_m(double frequency_hz);

    // Wraps to (-pi, pi]
    double wrap_phase(double phase);

    // Evenly spaced samples, both ends included
    std::vector<double> linspace(double lo, double hi, int count);

    // Error families. Argument and range errors reuse the standard types so
    // callers can catch them generically.
    struct DegeneratePatternError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct CoverageInfeasibleError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct NumericalRankError : std::runtime_error
    {
        NumericalRankError(const std::string &what, double rcond)
            : std::runtime_error(what), condition_estimate(rcond) {}
        double condition_estimate; // reciprocal condition number estimate
    };

    struct DegenerateSolutionError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct ParseError : std::runtime_error
    {
        ParseError(const std::string &what, int line_no)
            : std::runtime_error(what), line(line_no) {}
        int line;
    };

    struct FormatError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct ConfigError : std::runtime_error
    {
        ConfigError(const std::string &field_path, const std::string &message)
            : std::runtime_error(field_path + ": " + message), path(field_path) {}
        std::string path;
    };

    struct IoError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };
}
