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

#include "cpa/geometry.hpp"
#include "cpa/pattern.hpp"
#include "cpa/reference.hpp"
#include "cpa/solver.hpp"

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cpa
{
    struct SectorConfig
    {
        double width_deg = 0.0;
        int sector_count = 0;
        int planks_per_sector = 0;
        std::vector<double> sector_azimuths_deg; // centre of each sector, [0, 360)
        std::optional<TaperWeights> azimuth_taper;

        static SectorConfig make(const ConeGeometry &geom, double width_deg,
                                 std::optional<TaperWeights> azimuth_taper = std::nullopt);

        // 1-based plank indices of sector s (0-based)
        std::vector<int> planks(int sector_index) const;
    };

    struct FrequencyPlan
    {
        double f0_hz = 0.0;
        std::vector<double> frequencies_hz;

        void validate() const;
    };

    struct AssembledElement
    {
        int plank = 0;              // 1-based
        int element = 0;            // 0-based along the plank
        ElementPosition position_m;
        ElementPosition position_lambda;
        double azimuth_rad = 0.0;   // azimuth of the carrying plank
        std::vector<cdouble> weights; // one per beam, fixed at f0
    };

    struct SectorAssembly
    {
        int sector_index = 0;
        double facing_azimuth_deg = 0.0;
        double f0_hz = 0.0;
        std::vector<double> beam_theta_deg; // global elevation of each beam
        std::vector<double> beam_phi_deg;
        std::vector<AssembledElement> elements;

        int beam_count() const { return static_cast<int>(beam_theta_deg.size()); }
        ArraySource source() const;
    };

    // Plank elevation (broadside 90) to global polar angle
    double plank_to_global_theta(double theta_plank_deg, double theta_s_deg);

    // excitations.beams[b][m] drives element m of `layout` (plank frame)
    SectorAssembly assemble_sector(const ConeGeometry &geom, const PlankLayout &layout,
                                   const ExcitationSet &excitations, const SectorConfig &sector,
                                   const BeamPlan &beams, int sector_index, double f0_hz);

    struct EvaluationSpec
    {
        GridSpec grid;
        double cut_step_deg = 0.01;
        double sphere_step_deg = 1.0;
    };

    struct BeamEvaluation
    {
        int beam = 0; // 0-based
        double frequency_hz = 0.0;
        Pattern2D pattern;
        PatternCut elevation_cut; // polar angle at the sector azimuth
        PatternCut azimuth_cut;   // azimuth offset from the sector centre at the peak elevation
        BeamMetrics metrics;
    };

    // `beams` selects 0-based beam indices; empty means all
    std::vector<BeamEvaluation> evaluate_assembly(const SectorAssembly &assembly, double frequency_hz,
                                                  const ElementPattern &element, const EvaluationSpec &spec,
                                                  std::span<const int> beams = {});

    struct SweepRow
    {
        int beam = 0; // 1-based
        double frequency_hz = 0.0;
        double chi = 0.0;
        BeamMetrics metrics;
    };

    std::vector<SweepRow> frequency_sweep(const SectorAssembly &assembly, const SectorAssembly &reference,
                                          const FrequencyPlan &plan, const ElementPattern &element,
                                          const EvaluationSpec &spec);

    // CSV with header theta_deg,phi_deg,mag_db,phase_deg, row-major in theta
    ElementPattern parse_element_pattern(std::istream &in, const std::string &name = "<stream>");
    ElementPattern load_element_pattern(const std::string &path);
}
