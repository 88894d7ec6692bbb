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

#include "cpa/layout.hpp"
#include "cpa/pattern.hpp"

#include <span>
#include <vector>

namespace cpa
{
    struct TaperWeights
    {
        std::vector<double> amplitudes; // peak-normalized
        double sll_db = 0.0;
        int n_bar = 0;

        int count() const { return static_cast<int>(amplitudes.size()); }
    };

    // Taylor n-bar line source sampled at the element centres of an aperture
    // of `count` cells
    TaperWeights taylor_taper(int count, double sll_db, int n_bar);

    // Steered reference beam, normalized to unit peak magnitude
    PatternCut reference_pattern(const PlankLayout &layout, const TaperWeights &taper, double steer_deg,
                                 std::span<const double> sample_angles_deg, double wavelength = 1.0);

    // Per-element excitation of the steered reference beam, normalized so the
    // beam peak is 1
    std::vector<cdouble> reference_excitation(const PlankLayout &layout, const TaperWeights &taper,
                                              double steer_deg, double wavelength = 1.0);

    // Half of the -3 dB main-lobe width in u = cos(theta)
    double halfpower_width_u(const PatternCut &cut);

    struct BeamPlan
    {
        std::vector<double> steer_deg; // plank frame, broadside = 90
        std::vector<double> left_edge_deg;
        std::vector<double> right_edge_deg;
        std::vector<double> hpbw_deg;
        double delta_u = 0.0;
        double coverage_deg = 0.0;

        int count() const { return static_cast<int>(steer_deg.size()); }
    };

    BeamPlan stack_beams(const PatternCut &cut_broadside, double start_left_edge_deg, int count);

    // Same plan from a known half-width
    BeamPlan stack_beams_du(double delta_u, double start_left_edge_deg, int count);

    // Uniform angular samples in degrees on [0, 180]
    std::vector<double> elevation_grid(int count);
    std::vector<double> elevation_grid_step(double step_deg);
}
