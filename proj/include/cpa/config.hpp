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
#include "cpa/geometry.hpp"
#include "cpa/reference.hpp"
#include "cpa/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cpa
{
    struct GeometryBlock
    {
        int n_planks = 204;
        double d_c_wavelengths = 0.5;
        double plank_length_wavelengths = 10.5;
        double theta_s_deg = 70.0;
        std::optional<double> minor_radius_wavelengths;

        ConeGeometry make() const;
    };

    struct TaperBlock
    {
        double sll_db = -30.0;
        int n_bar = 6;
    };

    struct ReferenceBlock
    {
        int element_count = 22;
        double spacing_wavelengths = 0.5;
        TaperBlock taper;
        double plan_cut_step_deg = 0.01; // broadside cut used to measure the half-width
        int chi_samples = 2001;
    };

    struct BeamsBlock
    {
        int count = 7;
        double start_left_edge_deg = 70.0;
    };

    struct SolverBlock
    {
        int q = 700;
        SolverConfig config;
    };

    // Cartesian product of the listed values
    struct SweepBlock
    {
        std::vector<int> q = {700};
        std::vector<int> k_samples = {44};
        std::vector<double> sigma = {1e-5};
        std::vector<double> beta1 = {1e-1};
        std::vector<double> beta2 = {5e-1};
        int workers = 0; // 0 picks the hardware concurrency

        std::vector<SweepItem> items(const SolverConfig &base) const;
    };

    struct SectorBlock
    {
        double width_deg = 30.0;
        int index = 0; // 0-based
        std::optional<TaperBlock> azimuth_taper;
    };

    struct FrequencyBlock
    {
        double f0_hz = 1.282e9;
        std::vector<double> evaluation_hz = {1.215e9, 1.282e9, 1.350e9};
    };

    struct EvaluationBlock
    {
        int grid_nv = 301;
        int grid_nw = 301;
        double cut_step_deg = 0.01;
        double sphere_step_deg = 1.0;
        std::vector<int> beams;        // 1-based, empty selects every beam
        std::string element_pattern;   // CSV path, empty for isotropic
        std::string compare = "fp";    // "fp" or "self"

        EvaluationSpec spec() const;
    };

    struct OutputBlock
    {
        std::string directory = "out";
    };

    struct RunConfig
    {
        GeometryBlock geometry;
        ReferenceBlock reference;
        BeamsBlock beams;
        SolverBlock solver;
        SweepBlock sweep;
        SectorBlock sector;
        FrequencyBlock frequency;
        EvaluationBlock evaluation;
        OutputBlock output;

        // Range and consistency checks; throws ConfigError naming the field
        void validate() const;
    };

    // Every block is optional except reference.taper inside a present
    // reference block. Unknown keys are rejected.
    RunConfig parse_config(const std::string &json_text);
    RunConfig load_config(const std::string &path);
    std::string dump_config(const RunConfig &config); // fully resolved, stable key order
}
