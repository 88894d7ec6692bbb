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

#include "cpa/assembly.hpp"
#include "cpa/config.hpp"
#include "cpa/io.hpp"

#include <functional>
#include <vector>

namespace cpa
{
    struct ReferenceOutputs
    {
        PlankLayout layout;
        TaperWeights taper;
        BeamPlan plan;
        PatternCut broadside;                // fine cut used for the half-width
        BeamMetrics broadside_metrics;
        std::vector<PatternCut> beams;       // steered references, chi grid
        std::vector<BeamMetrics> beam_metrics;
    };

    ReferenceOutputs run_reference(const RunConfig &config);

    ReferenceProblem reference_problem(const RunConfig &config, const ReferenceOutputs &ref);

    // Fully populated plank driven by the steered Taylor excitations
    ExcitationSet full_excitations(const ReferenceOutputs &ref);

    // Angle grid on which sparse and reference cuts are compared
    std::vector<double> report_angles(const RunConfig &config);

    // Row 0 describes the broadside reference, rows 1..B the synthesized beams
    std::vector<io::ReportRow> sparse_report(const RunConfig &config, const ReferenceOutputs &ref,
                                             const PlankLayout &layout, const ExcitationSet &ex,
                                             std::vector<PatternCut> *cuts = nullptr);

    SectorConfig sector_config(const RunConfig &config, const ConeGeometry &geom);

    SectorAssembly build_assembly(const RunConfig &config, const ConeGeometry &geom, const PlankLayout &layout,
                                  const ExcitationSet &ex, const BeamPlan &plan);

    struct BandResult
    {
        BeamEvaluation actual;
        double chi = 0.0;
        MismatchMap mismatch;
    };

    // Evaluates `beams` (0-based, empty for all) of `assembly` at every
    // frequency and compares against `reference`; `reference` may alias
    // `assembly`. Results are delivered in (frequency, beam) order.
    void evaluate_band(const SectorAssembly &assembly, const SectorAssembly &reference,
                       const FrequencyPlan &plan, const ElementPattern &element, const EvaluationSpec &spec,
                       const std::vector<int> &beams, const std::function<void(const BandResult &)> &sink);
}
