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

#include "cpa/geometry.hpp"
#include "cpa/common.hpp"

#include <cmath>
#include <string>

namespace cpa
{
    namespace
    {
        void check_slant(double theta_s_deg)
        {
            if (!(theta_s_deg > 0.0 && theta_s_deg < 90.0))
                throw std::invalid_argument("slant angle must lie in (0, 90) degrees");
        }
    }

    ConeRadii cone_radii(int n_planks, double d_c, double plank_length, double theta_s_deg)
    {
        if (n_planks <= 0 || !(d_c > 0.0) || plank_length < 0.0)
            throw std::invalid_argument("cone_radii: plank count and spacing must be positive");
        check_slant(theta_s_deg);
        const double r = n_planks * d_c / kTwoPi;
        return {r, r + plank_length * std::cos(deg2rad(theta_s_deg))};
    }

    ConeGeometry ConeGeometry::make(int n_planks, double d_c, double plank_length, double theta_s_deg,
                                    std::optional<double> minor_radius)
    {
        if (n_planks < 3)
            throw std::invalid_argument("a cone needs at least 3 planks");
        ConeRadii radii = cone_radii(n_planks, d_c, plank_length, theta_s_deg);
        if (minor_radius)
        {
            if (!(*minor_radius > 0.0))
                throw std::invalid_argument("minor radius override must be positive");
            radii.r = *minor_radius;
            radii.R = radii.r + plank_length * std::cos(deg2rad(theta_s_deg));
        }
        ConeGeometry g;
        g.theta_s_deg = theta_s_deg;
        g.n_planks = n_planks;
        g.d_c = d_c;
        g.plank_length = plank_length;
        g.r = radii.r;
        g.R = radii.R;
        g.psi_c = kTwoPi / n_planks;
        return g;
    }

    double ConeGeometry::plank_azimuth(int plank_index) const
    {
        if (plank_index < 1 || plank_index > n_planks)
            throw std::out_of_range("plank index " + std::to_string(plank_index) + " outside 1.." +
                                    std::to_string(n_planks));
        return (plank_index % n_planks) * psi_c;
    }

    std::vector<ElementPosition> plank_element_positions(const ConeGeometry &geom,
                                                         std::span<const double> offsets,
                                                         int plank_index)
    {
        const double phi = geom.plank_azimuth(plank_index);
        const double ct = std::cos(deg2rad(geom.theta_s_deg));
        const double st = std::sin(deg2rad(geom.theta_s_deg));
        const double cp = std::cos(phi), sp = std::sin(phi);

        std::vector<ElementPosition> out;
        out.reserve(offsets.size());
        double prev = -1.0;
        for (double l : offsets)
        {
            if (l < 0.0 || l > geom.plank_length * (1.0 + 1e-12))
                throw std::out_of_range("plank offset " + std::to_string(l) + " outside [0, l]");
            if (l < prev)
                throw std::invalid_argument("plank offsets must be ascending");
            prev = l;
            const double rho = geom.R - l * ct;
            out.push_back({rho * cp, rho * sp, l * st});
        }
        return out;
    }

    double steering_phase(const ElementPosition &pos, double theta_b_deg, double phi_b_deg, double wavelength)
    {
        if (!(wavelength > 0.0))
            throw std::invalid_argument("wavelength must be positive");
        const double th = deg2rad(theta_b_deg), ph = deg2rad(phi_b_deg);
        const double proj = pos.x * std::sin(th) * std::cos(ph) + pos.y * std::sin(th) * std::sin(ph) +
                            pos.z * std::cos(th);
        return wrap_phase(-kTwoPi / wavelength * proj);
    }
}
