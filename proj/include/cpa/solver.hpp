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
#include "cpa/reference.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace cpa
{
    struct CandidateLattice
    {
        std::vector<double> positions; // [lambda0]

        static CandidateLattice uniform(int count, double length);

        int count() const { return static_cast<int>(positions.size()); }
        double spacing() const;
    };

    enum class SampleSpacing
    {
        uniform_theta,
        uniform_u
    };

    struct SolverConfig
    {
        double sigma = 1e-5;  // variance of each real noise entry
        double beta1 = 1e-1;  // Gamma shape on the noise precision
        double beta2 = 5e-1;  // Gamma rate factor, scaled by 2K * sigma
        int k_samples = 44;
        double tol = 1e-8;    // relative evidence gain at which to stop
        int max_iter = 5000;
        double prune_threshold = 1e-8;
        double merge_distance = 0.25; // [lambda0], 0 disables merging
        SampleSpacing sampling = SampleSpacing::uniform_theta;

        void validate() const;
    };

    // K solver sample angles in degrees, ascending
    std::vector<double> solver_sample_angles(int k, SampleSpacing spacing);

    struct SteeringMatrix
    {
        Eigen::MatrixXcd complex;  // K x Q, a_kq = exp(j 2pi/lambda xi_q cos t_k)
        Eigen::MatrixXd realified; // [[Re A, -Im A], [Im A, Re A]]
        std::vector<double> angles_deg;
        std::vector<double> positions;
        double wavelength = 1.0;

        int rows() const { return static_cast<int>(complex.rows()); }
        int cols() const { return static_cast<int>(complex.cols()); }
    };

    SteeringMatrix build_steering_matrix(const CandidateLattice &lattice, std::span<const double> angles_deg,
                                         double wavelength = 1.0);

    // Stacked [Re; Im] form of complex samples
    Eigen::VectorXd realify(std::span<const cdouble> values);

    // [diag(a) + AtA]^-1 At F. `hyper` holds one entry per column, or one per
    // complex position (tied to its real and imaginary columns). Infinite
    // entries remove their column.
    Eigen::VectorXd posterior_mean(const Eigen::MatrixXd &realified, const Eigen::VectorXd &hyper,
                                   const Eigen::VectorXd &data);

    struct ExcitationSet
    {
        std::vector<int> support;        // lattice indices shared by every beam
        std::vector<double> positions;   // lattice abscissae of the support [lambda0]
        std::vector<std::vector<cdouble>> beams;

        int size() const { return static_cast<int>(support.size()); }
        int beam_count() const { return static_cast<int>(beams.size()); }
        double amplitude(int beam, int m) const { return std::abs(beams[beam][m]); }
        double phase_deg(int beam, int m) const { return rad2deg(std::arg(beams[beam][m])); }
    };

    struct SolverDiagnostics
    {
        Eigen::VectorXd hyperparameters; // per lattice position, +inf when pruned
        int iterations = 0;
        double log_evidence = 0.0;
        std::vector<double> evidence_trace;
        std::vector<double> residual_norms; // per beam
        int monotone_violations = 0;
        bool converged = false;
        int adds = 0, deletes = 0, reestimates = 0;
    };

    struct SolveResult
    {
        ExcitationSet excitations;
        SolverDiagnostics diagnostics;
    };

    // Multi-task sparse Bayesian recovery; targets are realified (length 2K)
    SolveResult mt_bcs_solve(const SteeringMatrix &matrix, const std::vector<Eigen::VectorXd> &targets,
                             const SolverConfig &config);

    struct SparsifyResult
    {
        PlankLayout layout;          // shifted so the first element sits at 0
        double origin_offset = 0.0;  // lattice abscissa of the first element
        ExcitationSet excitations;   // beams aligned with layout, unit synthesized peak
        std::vector<double> chi_per_beam;
        double chi = 0.0;
        SolverDiagnostics diagnostics;
        int merge_rounds = 0;
        int first_pass_size = 0;
    };

    // reference_patterns are sampled at the config's K angles and
    // peak-normalized. chi_references (dense, same beams) drive the matching
    // error; when empty the K samples are used instead.
    SparsifyResult sparsify(std::span<const PatternCut> reference_patterns, const CandidateLattice &lattice,
                            const SolverConfig &config, std::span<const PatternCut> chi_references = {});

    // Reference plank and beam plan that the sweep re-samples for every point
    struct ReferenceProblem
    {
        PlankLayout layout;
        TaperWeights taper;
        BeamPlan plan;
        double plank_length = 0.0;
        int chi_samples = 2001;
    };

    SparsifyResult sparsify_reference(const ReferenceProblem &problem, int q, const SolverConfig &config);

    struct SweepItem
    {
        int q = 0;
        SolverConfig config;
    };

    struct SweepPoint
    {
        SweepItem item;
        int m = 0;
        double chi = 0.0;
        bool converged = false;
        bool ok = false;
        std::string error;
    };

    struct ParetoResult
    {
        std::vector<SweepPoint> points;   // in grid order
        std::vector<size_t> frontier;     // indices into points, ascending M
    };

    std::vector<size_t> pareto_frontier(const std::vector<SweepPoint> &points);

    ParetoResult pareto_sweep(const ReferenceProblem &problem, const std::vector<SweepItem> &grid, int workers = 0);
}
