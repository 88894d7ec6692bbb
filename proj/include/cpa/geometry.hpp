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

#include <optional>
#include <span>
#include <vector>

namespace cpa
{
    struct ConeRadii
    {
        double r; // minor-base radius
        double R; // major-base radius
    };

    // r = N d_c / (2 pi), R = r + l cos(theta_s). Lengths in wavelengths.
    ConeRadii cone_radii(int n_planks, double d_c, double plank_length, double theta_s_deg);

    struct ConeGeometry
    {
        double theta_s_deg = 0.0;  // slant angle from the z-axis
        int n_planks = 0;
        double d_c = 0.0;          // inter-plank arc spacing [lambda0]
        double plank_length = 0.0; // [lambda0]
        double r = 0.0;            // [lambda0]
        double R = 0.0;            // [lambda0]
        double psi_c = 0.0;        // angular pitch [rad]

        // minor_radius overrides the derived r; R follows from it
        static ConeGeometry make(int n_planks, double d_c, double plank_length, double theta_s_deg,
                                 std::optional<double> minor_radius = std::nullopt);

        // Azimuth of plank n (1-based); plank N sits at 0
        double plank_azimuth(int plank_index) const;
    };

    struct ElementPosition
    {
        double x = 0.0, y = 0.0, z = 0.0;

        ElementPosition scaled(double factor) const { return {x * factor, y * factor, z * factor}; }
    };

    // Offsets l_m along the plank in wavelengths; plank_index in 1..N
    std::vector<ElementPosition> plank_element_positions(const ConeGeometry &geom,
                                                         std::span<const double> offsets,
                                                         int plank_index);

    // Phase shift that co-phases an element toward (theta_b, phi_b); pos and
    // wavelength in the same length unit. Wrapped to (-pi, pi].
    double steering_phase(const ElementPosition &pos, double theta_b_deg, double phi_b_deg,
                          double wavelength);
}
