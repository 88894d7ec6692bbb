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
#include "cpa/reference.hpp"
#include "cpa/solver.hpp"

#include <string>
#include <vector>

namespace cpa::io
{
    // Numeric CSV with one header row; '#' lines carry key=value metadata
    struct CsvTable
    {
        std::vector<std::string> header;
        std::vector<std::vector<double>> rows;
        std::vector<std::pair<std::string, std::string>> meta;

        int column(const std::string &name) const; // throws FormatError when absent
        std::vector<double> values(const std::string &name) const;
    };

    CsvTable read_csv(const std::string &path);
    void write_csv(const std::string &path, const CsvTable &table);

    std::string format_number(double x); // shortest round-trip form, "nan" for NaN

    void write_text(const std::string &path, const std::string &text);
    std::string read_text(const std::string &path);

    // JSON documents
    void write_beam_plan(const std::string &path, const BeamPlan &plan, const std::vector<double> &hpbw_measured = {});
    BeamPlan read_beam_plan(const std::string &path);

    void write_taper(const std::string &path, const TaperWeights &taper);
    TaperWeights read_taper(const std::string &path);

    void write_layout(const std::string &path, const PlankLayout &layout, double f0_hz, double origin_offset = 0.0);
    PlankLayout read_layout(const std::string &path);

    void write_excitations(const std::string &path, const ExcitationSet &ex, const PlankLayout &layout, double f0_hz);
    ExcitationSet read_excitations(const std::string &path);

    void write_diagnostics(const std::string &path, const SolverDiagnostics &d, int merge_rounds, int first_pass_size);

    void write_geometry(const std::string &path, const ConeGeometry &geom, const PlankLayout &layout, double f0_hz);
    struct GeometryElement
    {
        int plank = 0, element = 0;
        double x = 0, y = 0, z = 0; // meters
    };
    std::vector<GeometryElement> read_geometry(const std::string &path);

    void write_assembly(const std::string &manifest_path, const std::string &table_path, const ConeGeometry &geom,
                        const SectorConfig &sector, const BeamPlan &plan, const SectorAssembly &assembly);
    SectorAssembly read_assembly(const std::string &manifest_path, const std::string &table_path);

    // CSV exports
    void write_cut(const std::string &path, const PatternCut &cut, const std::string &angle_name = "theta_deg");
    PatternCut read_cut(const std::string &path);

    void write_pattern_2d(const std::string &path, const Pattern2D &pattern);
    Pattern2D read_pattern_2d(const std::string &path);

    void write_mismatch(const std::string &path, const MismatchMap &map, int beam, double frequency_hz);

    void write_pareto(const std::string &path, const ParetoResult &result);
    std::vector<SweepPoint> read_pareto(const std::string &path);

    void write_sweep(const std::string &path, const std::vector<SweepRow> &rows);
    std::vector<SweepRow> read_sweep(const std::string &path);

    struct ReportRow
    {
        int beam = 0; // 0 marks the reference row
        double sll_db = 0, d_dbi = 0, hpbw_deg = 0, chi = 0;
    };
    void write_report(const std::string &path, const std::vector<ReportRow> &rows);
    std::vector<ReportRow> read_report(const std::string &path);
}
