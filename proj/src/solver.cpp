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

#include "cpa/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace cpa
{
    namespace
    {
        constexpr double kInf = std::numeric_limits<double>::infinity();

        // Exact maximizer of B log(1-z) - c sum log(1 - r_i z) over z in [0, 1)
        double coordinate_root(const double *r, int B, double c)
        {
            double h0 = -B;
            for (int i = 0; i < B; ++i)
                h0 += c * r[i];
            if (h0 <= 0.0)
                return 0.0;
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 200; ++it)
            {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi)
                    break;
                double h = -B;
                for (int i = 0; i < B; ++i)
                    h += c * r[i] * (1.0 - mid) / (1.0 - r[i] * mid);
                if (h > 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }

        double coordinate_objective(double z, const double *r, int B, double c)
        {
            double f = B * std::log1p(-z);
            for (int i = 0; i < B; ++i)
                f -= c * std::log1p(-r[i] * z);
            return f;
        }

        // Largest |F| of a plank excitation over the visible range
        double peak_magnitude(const std::vector<double> &xi, const std::vector<cdouble> &w)
        {
            auto mag = [&](double theta_deg)
            {
                const double u = std::cos(deg2rad(theta_deg));
                cdouble acc = 0.0;
                for (size_t m = 0; m < xi.size(); ++m)
                    acc += w[m] * std::polar(1.0, kTwoPi * xi[m] * u);
                return std::abs(acc);
            };
            const int n = 3601;
            const double step = 180.0 / (n - 1);
            int best = 0;
            double bv = -1.0;
            for (int i = 0; i < n; ++i)
            {
                const double v = mag(i * step);
                if (v > bv)
                {
                    bv = v;
                    best = i;
                }
            }
            // golden-section refinement inside the bracketing samples
            double a = std::max(0.0, (best - 1) * step), b = std::min(180.0, (best + 1) * step);
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
            double f1 = mag(x1), f2 = mag(x2);
            for (int it = 0; it < 60; ++it)
            {
                if (f1 > f2)
                {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - gr * (b - a);
                    f1 = mag(x1);
                }
                else
                {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + gr * (b - a);
                    f2 = mag(x2);
                }
            }
            return std::max({bv, f1, f2});
        }

        // Support survivors of the pruning rule, in ascending lattice order
        std::vector<int> prune(const ExcitationSet &ex, double threshold)
        {
            const int M = ex.size();
            std::vector<double> peak(ex.beam_count(), 0.0);
            for (int b = 0; b < ex.beam_count(); ++b)
                for (int m = 0; m < M; ++m)
                    peak[b] = std::max(peak[b], std::abs(ex.beams[b][m]));
            std::vector<int> keep;
            for (int m = 0; m < M; ++m)
            {
                bool any = false;
                for (int b = 0; b < ex.beam_count(); ++b)
                    any = any || std::abs(ex.beams[b][m]) > threshold * peak[b];
                if (any)
                    keep.push_back(m);
            }
            return keep;
        }

        ExcitationSet select(const ExcitationSet &ex, const std::vector<int> &rows)
        {
            ExcitationSet out;
            out.beams.resize(ex.beam_count());
            for (int m : rows)
            {
                out.support.push_back(ex.support[m]);
                out.positions.push_back(ex.positions[m]);
                for (int b = 0; b < ex.beam_count(); ++b)
                    out.beams[b].push_back(ex.beams[b][m]);
            }
            return out;
        }

        // Groups of consecutive support entries closer than `distance`
        std::vector<std::vector<int>> clusters(const ExcitationSet &ex, double distance)
        {
            std::vector<std::vector<int>> out;
            for (int m = 0; m < ex.size(); ++m)
            {
                if (!out.empty() && ex.positions[m] - ex.positions[out.back().back()] < distance)
                    out.back().push_back(m);
                else
                    out.push_back({m});
            }
            return out;
        }
    }

    CandidateLattice CandidateLattice::uniform(int count, double length)
    {
        if (count < 1)
            throw std::invalid_argument("lattice needs at least one position");
        if (count > 1 && !(length > 0.0))
            throw std::invalid_argument("lattice length must be positive");
        CandidateLattice l;
        l.positions = count == 1 ? std::vector<double>{0.0} : linspace(0.0, length, count);
        return l;
    }

    double CandidateLattice::spacing() const
    {
        return positions.size() < 2 ? 0.0 : (positions.back() - positions.front()) / (positions.size() - 1);
    }

    void SolverConfig::validate() const
    {
        if (!(sigma > 0.0))
            throw std::invalid_argument("solver: sigma must be positive");
        if (!(beta1 > 0.0) || !(beta2 > 0.0))
            throw std::invalid_argument("solver: beta1 and beta2 must be positive");
        if (k_samples < 1)
            throw std::invalid_argument("solver: K must be at least 1");
        if (!(tol >= 0.0) || max_iter < 1)
            throw std::invalid_argument("solver: tol must be nonnegative and max_iter positive");
        if (!(prune_threshold >= 0.0) || !(merge_distance >= 0.0))
            throw std::invalid_argument("solver: prune threshold and merge distance must be nonnegative");
    }

    std::vector<double> solver_sample_angles(int k, SampleSpacing spacing)
    {
        if (k < 1)
            throw std::invalid_argument("solver: K must be at least 1");
        if (k == 1)
            return {90.0};
        if (spacing == SampleSpacing::uniform_theta)
            return linspace(0.0, 180.0, k);
        std::vector<double> out(k);
        const std::vector<double> u = linspace(1.0, -1.0, k);
        for (int i = 0; i < k; ++i)
            out[i] = rad2deg(std::acos(u[i]));
        return out;
    }

    SteeringMatrix build_steering_matrix(const CandidateLattice &lattice, std::span<const double> angles_deg,
                                         double wavelength)
    {
        if (angles_deg.empty() || lattice.positions.empty())
            throw std::invalid_argument("steering matrix needs K >= 1 and Q >= 1");
        if (!(wavelength > 0.0))
            throw std::invalid_argument("wavelength must be positive");
        const int K = static_cast<int>(angles_deg.size()), Q = lattice.count();
        SteeringMatrix m;
        m.angles_deg.assign(angles_deg.begin(), angles_deg.end());
        m.positions = lattice.positions;
        m.wavelength = wavelength;
        m.complex.resize(K, Q);
        const double k0 = kTwoPi / wavelength;
        for (int k = 0; k < K; ++k)
        {
            const double u = std::cos(deg2rad(angles_deg[k]));
            for (int q = 0; q < Q; ++q)
                m.complex(k, q) = std::polar(1.0, k0 * lattice.positions[q] * u);
        }
        m.realified.resize(2 * K, 2 * Q);
        m.realified.topLeftCorner(K, Q) = m.complex.real();
        m.realified.topRightCorner(K, Q) = -m.complex.imag();
        m.realified.bottomLeftCorner(K, Q) = m.complex.imag();
        m.realified.bottomRightCorner(K, Q) = m.complex.real();
        return m;
    }

    Eigen::VectorXd realify(std::span<const cdouble> values)
    {
        const Eigen::Index K = static_cast<Eigen::Index>(values.size());
        Eigen::VectorXd out(2 * K);
        for (Eigen::Index k = 0; k < K; ++k)
        {
            out(k) = values[k].real();
            out(K + k) = values[k].imag();
        }
        return out;
    }

    Eigen::VectorXd posterior_mean(const Eigen::MatrixXd &realified, const Eigen::VectorXd &hyper,
                                   const Eigen::VectorXd &data)
    {
        const Eigen::Index n = realified.cols();
        if (data.size() != realified.rows())
            throw std::invalid_argument("posterior_mean: data length does not match the matrix rows");
        Eigen::VectorXd a;
        if (hyper.size() == n)
            a = hyper;
        else if (2 * hyper.size() == n)
        {
            a.resize(n);
            a << hyper, hyper;
        }
        else
            throw std::invalid_argument("posterior_mean: hyperparameter length does not match the columns");
        for (Eigen::Index i = 0; i < n; ++i)
            if (!(a(i) >= 0.0))
                throw std::invalid_argument("posterior_mean: hyperparameters must be nonnegative");

        std::vector<Eigen::Index> live;
        for (Eigen::Index i = 0; i < n; ++i)
            if (std::isfinite(a(i)))
                live.push_back(i);
        Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
        if (live.empty())
            return w;

        const Eigen::Index m = static_cast<Eigen::Index>(live.size());
        Eigen::MatrixXd Phi(realified.rows(), m);
        for (Eigen::Index j = 0; j < m; ++j)
            Phi.col(j) = realified.col(live[j]);
        Eigen::MatrixXd H = Phi.transpose() * Phi;
        for (Eigen::Index j = 0; j < m; ++j)
            H(j, j) += a(live[j]);
        const Eigen::VectorXd rhs = Phi.transpose() * data;

        Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
        // rcond alone misses exact zero pivots, which LDLT treats as a pseudo-inverse
        double rc = 0.0;
        if (ldlt.info() == Eigen::Success)
        {
            const Eigen::VectorXd d = ldlt.vectorD().cwiseAbs();
            const double dmax = d.maxCoeff();
            rc = dmax > 0.0 ? std::min(ldlt.rcond(), d.minCoeff() / dmax) : 0.0;
        }
        if (!(rc > 16.0 * std::numeric_limits<double>::epsilon()))
            throw NumericalRankError("posterior_mean: system is numerically singular (rcond " +
                                         std::to_string(rc) + ")",
                                     rc);
        const Eigen::VectorXd sol = ldlt.solve(rhs);
        for (Eigen::Index j = 0; j < m; ++j)
            w(live[j]) = sol(j);
        return w;
    }

    SolveResult mt_bcs_solve(const SteeringMatrix &matrix, const std::vector<Eigen::VectorXd> &targets,
                             const SolverConfig &config)
    {
        config.validate();
        const int K = matrix.rows(), Q = matrix.cols(), B = static_cast<int>(targets.size());
        if (B < 1)
            throw std::invalid_argument("mt_bcs_solve: need at least one task");
        Eigen::MatrixXcd T(K, B);
        for (int b = 0; b < B; ++b)
        {
            if (targets[b].size() != 2 * K)
                throw std::invalid_argument("mt_bcs_solve: every target must have length 2K");
            for (int k = 0; k < K; ++k)
                T(k, b) = cdouble(targets[b](k), targets[b](K + k));
        }

        // The tied realified model is evaluated in its equivalent complex form:
        // both columns of a position share one precision, so the 2K-dimensional
        // real evidence equals the K-dimensional complex one.
        const Eigen::MatrixXcd &A = matrix.complex;
        const Eigen::MatrixXcd G = A.adjoint() * A;
        const Eigen::MatrixXcd PT = A.adjoint() * T;
        const Eigen::VectorXd tt = T.colwise().squaredNorm().transpose();
        const double a_shape = config.beta1;
        const double b_rate = config.beta2 * (2.0 * K) * config.sigma;
        const double c = K + a_shape;

        std::vector<int> active;
        std::vector<double> alpha;
        std::vector<int> slot(Q, -1);

        Eigen::VectorXd S(Q);
        Eigen::MatrixXcd Qm(Q, B);
        Eigen::VectorXd g(B);
        double ml = 0.0;

        auto refresh = [&]()
        {
            const int M = static_cast<int>(active.size());
            if (M == 0)
            {
                S = G.diagonal().real();
                Qm = PT;
                g = tt.array() + 2.0 * b_rate;
                ml = -c * g.array().log().sum();
                return;
            }
            Eigen::MatrixXcd H(M, M), X(Q, M), PTa(M, B);
            for (int i = 0; i < M; ++i)
            {
                for (int j = 0; j < M; ++j)
                    H(i, j) = G(active[i], active[j]);
                H(i, i) += alpha[i];
                X.col(i) = G.col(active[i]);
                PTa.row(i) = PT.row(active[i]);
            }
            Eigen::LLT<Eigen::MatrixXcd> llt(H);
            if (llt.info() != Eigen::Success)
                throw NumericalRankError("mt_bcs_solve: posterior precision lost definiteness", 0.0);
            const Eigen::MatrixXcd Sig = llt.solve(Eigen::MatrixXcd::Identity(M, M));
            const Eigen::MatrixXcd mu = Sig * PTa;
            const Eigen::MatrixXcd XS = X * Sig;
            S = G.diagonal().real() - (XS.array() * X.conjugate().array()).rowwise().sum().real().matrix();
            Qm = PT - X * mu;
            for (int b = 0; b < B; ++b)
                g(b) = tt(b) - (PTa.col(b).adjoint() * mu.col(b))(0, 0).real() + 2.0 * b_rate;
            double logdet_h = 0.0;
            for (int i = 0; i < M; ++i)
                logdet_h += 2.0 * std::log(std::real(llt.matrixL()(i, i)));
            double log_alpha = 0.0;
            for (double x : alpha)
                log_alpha += std::log(x);
            ml = -B * (logdet_h - log_alpha) - c * g.array().log().sum();
        };

        refresh();
        const double ml_empty = ml;
        SolveResult res;
        res.diagnostics.evidence_trace.push_back(ml);

        std::vector<double> r(B);
        int it = 0;
        bool converged = false;
        for (; it < config.max_iter; ++it)
        {
            int best = -1;
            double best_gain = -kInf, best_z = 0.0, best_s = 0.0;
            for (int m = 0; m < Q; ++m)
            {
                double s = S(m);
                double z_now = 0.0;
                const int k = slot[m];
                double scale = 1.0, shift = 0.0;
                if (k >= 0)
                {
                    const double al = alpha[k];
                    const double den = al - S(m);
                    if (!(den > 0.0))
                        continue;
                    s = al * S(m) / den;
                    scale = al / den;
                    shift = 1.0 / den;
                    z_now = s / (s + al);
                }
                if (!(s > 0.0))
                    continue;
                for (int b = 0; b < B; ++b)
                {
                    const double qa = std::norm(Qm(m, b));
                    const double gp = g(b) + (k >= 0 ? qa * shift : 0.0);
                    r[b] = std::min(qa * scale * scale / (gp * s), 1.0 - 1e-15);
                }
                const double z = coordinate_root(r.data(), B, c);
                const double gain = coordinate_objective(z, r.data(), B, c) -
                                    coordinate_objective(z_now, r.data(), B, c);
                if (gain > best_gain)
                {
                    best_gain = gain;
                    best = m;
                    best_z = z;
                    best_s = s;
                }
            }
            if (best < 0 || best_gain <= config.tol * std::abs(ml - ml_empty))
            {
                converged = true;
                break;
            }

            const int k = slot[best];
            if (k >= 0 && best_z == 0.0)
            {
                active.erase(active.begin() + k);
                alpha.erase(alpha.begin() + k);
                std::fill(slot.begin(), slot.end(), -1);
                for (size_t i = 0; i < active.size(); ++i)
                    slot[active[i]] = static_cast<int>(i);
                ++res.diagnostics.deletes;
            }
            else if (k >= 0)
            {
                alpha[k] = best_s * (1.0 - best_z) / best_z;
                ++res.diagnostics.reestimates;
            }
            else
            {
                slot[best] = static_cast<int>(active.size());
                active.push_back(best);
                alpha.push_back(best_s * (1.0 - best_z) / best_z);
                ++res.diagnostics.adds;
            }

            const double prev = ml;
            refresh();
            if (ml < prev - 1e-9 * std::abs(prev))
                ++res.diagnostics.monotone_violations;
            res.diagnostics.evidence_trace.push_back(ml);
        }

        if (active.empty())
            throw DegenerateSolutionError("mt_bcs_solve: no basis carries evidence (empty support)");

        // ascending lattice order
        std::vector<int> order(active.size());
        for (size_t i = 0; i < order.size(); ++i)
            order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int x, int y) { return active[x] < active[y]; });
        const int M = static_cast<int>(active.size());

        // excitations from the realified posterior mean on the retained columns
        Eigen::MatrixXd sub(2 * K, 2 * M);
        Eigen::VectorXd hyp(M);
        ExcitationSet &ex = res.excitations;
        for (int i = 0; i < M; ++i)
        {
            const int q = active[order[i]];
            sub.col(i) = matrix.realified.col(q);
            sub.col(M + i) = matrix.realified.col(Q + q);
            hyp(i) = alpha[order[i]];
            ex.support.push_back(q);
            ex.positions.push_back(matrix.positions[q]);
        }
        ex.beams.assign(B, std::vector<cdouble>(M));
        for (int b = 0; b < B; ++b)
        {
            const Eigen::VectorXd w = posterior_mean(sub, hyp, targets[b]);
            for (int i = 0; i < M; ++i)
                ex.beams[b][i] = cdouble(w(i), w(M + i));
            res.diagnostics.residual_norms.push_back((targets[b] - sub * w).norm());
        }

        SolverDiagnostics &d = res.diagnostics;
        d.hyperparameters = Eigen::VectorXd::Constant(Q, kInf);
        for (int i = 0; i < M; ++i)
            d.hyperparameters(active[i]) = alpha[i];
        d.iterations = it;
        d.log_evidence = ml;
        d.converged = converged;
        return res;
    }

    SparsifyResult sparsify(std::span<const PatternCut> reference_patterns, const CandidateLattice &lattice,
                            const SolverConfig &config, std::span<const PatternCut> chi_references)
    {
        config.validate();
        if (reference_patterns.empty())
            throw std::invalid_argument("sparsify: need at least one reference pattern");
        const std::vector<double> &angles = reference_patterns.front().angles_deg;
        for (const auto &cut : reference_patterns)
        {
            cut.validate();
            if (cut.angles_deg != angles)
                throw std::invalid_argument("sparsify: reference cuts must share one angle grid");
        }
        if (!chi_references.empty() && chi_references.size() != reference_patterns.size())
            throw std::invalid_argument("sparsify: chi references must match the beam count");
        if (lattice.count() < 1)
            throw std::invalid_argument("sparsify: lattice is empty");

        const int B = static_cast<int>(reference_patterns.size());
        std::vector<Eigen::VectorXd> targets;
        for (const auto &cut : reference_patterns)
            targets.push_back(realify(cut.values));

        const SteeringMatrix full = build_steering_matrix(lattice, angles, reference_patterns.front().wavelength);
        SolveResult sol = mt_bcs_solve(full, targets, config);
        SparsifyResult out;
        ExcitationSet ex = select(sol.excitations, prune(sol.excitations, config.prune_threshold));
        out.first_pass_size = ex.size();

        // Positions closer than the merge distance act as sub-cell corrections
        // of one physical element: fold each group into the lattice cell nearest
        // its weighted centroid and re-solve on the folded support.
        for (int round = 0; round < 8 && config.merge_distance > 0.0; ++round)
        {
            const auto groups = clusters(ex, config.merge_distance);
            if (static_cast<int>(groups.size()) == ex.size())
                break;
            std::vector<int> cells;
            for (const auto &grp : groups)
            {
                double num = 0.0, den = 0.0;
                for (int m : grp)
                {
                    double wsum = 0.0;
                    for (int b = 0; b < B; ++b)
                        wsum += std::abs(ex.beams[b][m]);
                    num += wsum * ex.support[m];
                    den += wsum;
                }
                const double centroid = den > 0.0 ? num / den : ex.support[grp.front()];
                cells.push_back(static_cast<int>(std::lround(centroid)));
            }
            CandidateLattice restricted;
            for (int q : cells)
                restricted.positions.push_back(lattice.positions[q]);
            const SteeringMatrix sub = build_steering_matrix(restricted, angles, full.wavelength);
            SolveResult again = mt_bcs_solve(sub, targets, config);

            // back to full-lattice indices
            for (size_t i = 0; i < again.excitations.support.size(); ++i)
                again.excitations.support[i] = cells[again.excitations.support[i]];
            Eigen::VectorXd hyper = Eigen::VectorXd::Constant(lattice.count(), kInf);
            for (int i = 0; i < sub.cols(); ++i)
                hyper(cells[i]) = again.diagnostics.hyperparameters(i);
            again.diagnostics.hyperparameters = hyper;
            sol = std::move(again);
            ex = select(sol.excitations, prune(sol.excitations, config.prune_threshold));
            ++out.merge_rounds;
        }
        if (ex.size() == 0)
            throw DegenerateSolutionError("sparsify: every position was pruned");
        for (int q = 0; q < lattice.count(); ++q)
            if (std::find(ex.support.begin(), ex.support.end(), q) == ex.support.end())
                sol.diagnostics.hyperparameters(q) = kInf;

        // unit synthesized peak per beam
        for (int b = 0; b < B; ++b)
        {
            const double pk = peak_magnitude(ex.positions, ex.beams[b]);
            if (pk > 0.0)
                for (auto &w : ex.beams[b])
                    w /= pk;
        }

        out.origin_offset = ex.positions.front();
        for (double p : ex.positions)
            out.layout.positions.push_back(p - out.origin_offset);
        out.layout.positions.front() = 0.0;

        for (int b = 0; b < B; ++b)
        {
            const PatternCut &refc = chi_references.empty() ? reference_patterns[b] : chi_references[b];
            const PatternCut synth =
                array_factor_cut(out.layout, ex.beams[b], refc.angles_deg, refc.wavelength);
            out.chi_per_beam.push_back(chi_cut(peak_normalized(refc), peak_normalized(synth)));
        }
        double sum = 0.0;
        for (double x : out.chi_per_beam)
            sum += x;
        out.chi = sum / B;
        out.excitations = std::move(ex);
        out.diagnostics = std::move(sol.diagnostics);
        return out;
    }

    SparsifyResult sparsify_reference(const ReferenceProblem &problem, int q, const SolverConfig &config)
    {
        config.validate();
        const std::vector<double> angles = solver_sample_angles(config.k_samples, config.sampling);
        const std::vector<double> dense = elevation_grid(problem.chi_samples);
        std::vector<PatternCut> targets, refs;
        for (double steer : problem.plan.steer_deg)
        {
            targets.push_back(reference_pattern(problem.layout, problem.taper, steer, angles));
            refs.push_back(reference_pattern(problem.layout, problem.taper, steer, dense));
        }
        const CandidateLattice lattice = CandidateLattice::uniform(q, problem.plank_length);
        return sparsify(targets, lattice, config, refs);
    }

    std::vector<size_t> pareto_frontier(const std::vector<SweepPoint> &points)
    {
        std::vector<size_t> out;
        for (size_t i = 0; i < points.size(); ++i)
        {
            if (!points[i].ok)
                continue;
            bool dominated = false;
            for (size_t j = 0; j < points.size() && !dominated; ++j)
            {
                if (j == i || !points[j].ok)
                    continue;
                const bool le = points[j].m <= points[i].m && points[j].chi <= points[i].chi;
                const bool lt = points[j].m < points[i].m || points[j].chi < points[i].chi;
                // identical points: keep the first in grid order
                dominated = le && (lt || j < i);
            }
            if (!dominated)
                out.push_back(i);
        }
        std::stable_sort(out.begin(), out.end(),
                         [&](size_t a, size_t b) { return points[a].m < points[b].m; });
        return out;
    }

    ParetoResult pareto_sweep(const ReferenceProblem &problem, const std::vector<SweepItem> &grid, int workers)
    {
        if (grid.empty())
            throw std::invalid_argument("pareto_sweep: grid is empty");
        ParetoResult res;
        res.points.resize(grid.size());
        unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        const size_t pool = std::min<size_t>(grid.size(), workers > 0 ? static_cast<size_t>(workers) : hw);

        std::atomic<size_t> next{0};
        auto work = [&]()
        {
            for (size_t i = next++; i < grid.size(); i = next++)
            {
                SweepPoint p;
                p.item = grid[i];
                try
                {
                    const SparsifyResult s = sparsify_reference(problem, grid[i].q, grid[i].config);
                    p.m = s.excitations.size();
                    p.chi = s.chi;
                    p.converged = s.diagnostics.converged;
                    p.ok = true;
                }
                catch (const std::exception &e)
                {
                    p.error = e.what();
                }
                res.points[i] = std::move(p); // each slot written by one worker
            }
        };
        if (pool <= 1)
            work();
        else
        {
            std::vector<std::thread> threads;
            for (size_t t = 0; t < pool; ++t)
                threads.emplace_back(work);
            for (auto &t : threads)
                t.join();
        }
        res.frontier = pareto_frontier(res.points);
        return res;
    }
}
