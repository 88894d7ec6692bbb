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

#include "cpa/pipeline.hpp"

#include <cmath>
#include <stdexcept>

namespace cpa
{
    ReferenceOutputs run_reference(const RunConfig &config)
    {
        const auto &rc = config.reference;
        ReferenceOutputs out;
        out.layout = PlankLayout::uniform(rc.element_count, rc.spacing_wavelengths);
        out.taper = taylor_taper(rc.element_count, rc.taper.sll_db, rc.taper.n_bar);

        const auto fine = elevation_grid_step(rc.plan_cut_step_deg);
        out.broadside = reference_pattern(out.layout, out.taper, 90.0, fine);
        out.broadside_metrics = metrics(out.broadside, 90.0);
        out.plan = stack_beams(out.broadside, config.beams.start_left_edge_deg, config.beams.count);

        const auto grid = report_angles(config);
        for (int b = 0; b < out.plan.count(); ++b)
        {
            const double steer = out.plan.steer_deg[b];
            out.beams.push_back(reference_pattern(out.layout, out.taper, steer, grid));
            out.beam_metrics.push_back(metrics(reference_pattern(out.layout, out.taper, steer, fine), steer));
        }
        return out;
    }

    ReferenceProblem reference_problem(const RunConfig &config, const ReferenceOutputs &ref)
    {
        return {ref.layout, ref.taper, ref.plan, config.geometry.plank_length_wavelengths,
                config.reference.chi_samples};
    }

    ExcitationSet full_excitations(const ReferenceOutputs &ref)
    {
        ExcitationSet ex;
        for (int i = 0; i < ref.layout.count(); ++i)
        {
            ex.support.push_back(i);
            ex.positions.push_back(ref.layout.positions[i]);
        }
        for (double steer : ref.plan.steer_deg)
            ex.beams.push_back(reference_excitation(ref.layout, ref.taper, steer));
        return ex;
    }

    std::vector<double> report_angles(const RunConfig &config)
    {
        return elevation_grid(config.reference.chi_samples);
    }

    std::vector<io::ReportRow> sparse_report(const RunConfig &config, const ReferenceOutputs &ref,
                                             const PlankLayout &layout, const ExcitationSet &ex,
                                             std::vector<PatternCut> *cuts)
    {
        if (ex.beam_count() != ref.plan.count() || ex.size() != layout.count())
            throw std::invalid_argument("excitations do not match the layout or the beam plan");

        const auto grid = report_angles(config);
        const auto fine = elevation_grid_step(config.reference.plan_cut_step_deg);
        std::vector<io::ReportRow> rows;
        const auto &m0 = ref.broadside_metrics;
        rows.push_back({0, m0.sll_db.value_or(NAN), m0.directivity_dbi, m0.hpbw_el_deg, 0.0});
        for (int b = 0; b < ex.beam_count(); ++b)
        {
            const double steer = ref.plan.steer_deg[b];
            const PatternCut act = peak_normalized(array_factor_cut(layout, ex.beams[b], grid));
            const double chi = chi_cut(ref.beams[b], act);
            const BeamMetrics m = metrics(peak_normalized(array_factor_cut(layout, ex.beams[b], fine)), steer);
            rows.push_back({b + 1, m.sll_db.value_or(NAN), m.directivity_dbi, m.hpbw_el_deg, chi});
            if (cuts)
                cuts->push_back(act);
        }
        return rows;
    }

    SectorConfig sector_config(const RunConfig &config, const ConeGeometry &geom)
    {
        std::optional<TaperWeights> taper;
        if (config.sector.azimuth_taper)
        {
            const int count = static_cast<int>(std::lround(geom.n_planks * config.sector.width_deg / 360.0));
            taper = taylor_taper(count, config.sector.azimuth_taper->sll_db, config.sector.azimuth_taper->n_bar);
        }
        return SectorConfig::make(geom, config.sector.width_deg, taper);
    }

    SectorAssembly build_assembly(const RunConfig &config, const ConeGeometry &geom, const PlankLayout &layout,
                                  const ExcitationSet &ex, const BeamPlan &plan)
    {
        const SectorConfig sector = sector_config(config, geom);
        if (config.sector.index >= sector.sector_count)
            throw ConfigError("sector.index", "exceeds the sector count " + std::to_string(sector.sector_count));
        return assemble_sector(geom, layout, ex, sector, plan, config.sector.index, config.frequency.f0_hz);
    }

    void evaluate_band(const SectorAssembly &assembly, const SectorAssembly &reference,
                       const FrequencyPlan &plan, const ElementPattern &element, const EvaluationSpec &spec,
                       const std::vector<int> &beams, const std::function<void(const BandResult &)> &sink)
    {
        plan.validate();
        const bool self = &assembly == &reference;
        for (double f : plan.frequencies_hz)
        {
            const auto act = evaluate_assembly(assembly, f, element, spec, beams);
            std::vector<BeamEvaluation> ref;
            if (!self)
                ref = evaluate_assembly(reference, f, element, spec, beams);
            for (size_t i = 0; i < act.size(); ++i)
            {
                BandResult r;
                r.actual = act[i];
                const Pattern2D a = peak_normalized(act[i].pattern);
                const Pattern2D e = self ? a : peak_normalized(ref[i].pattern);
                r.chi = chi_2d(e, a);
                r.actual.metrics.chi = r.chi;
                r.mismatch = local_mismatch(e, a);
                sink(r);
            }
        }
    }
}
