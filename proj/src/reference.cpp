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

#include "cpa/reference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cpa
{
    TaperWeights taylor_taper(int count, double sll_db, int n_bar)
    {
        if (count < 2)
            throw std::invalid_argument("taylor_taper: count must be at least 2");
        if (!(sll_db < 0.0))
            throw std::invalid_argument("taylor_taper: sidelobe level must be negative dB");
        if (n_bar < 2)
            throw std::invalid_argument("taylor_taper: n_bar must be at least 2");
        if (n_bar > count)
            throw std::invalid_argument("taylor_taper: n_bar " + std::to_string(n_bar) +
                                        " too large for a " + std::to_string(count) + "-element aperture");

        const double eta = std::pow(10.0, -sll_db / 20.0);
        const double A = std::acosh(eta) / kPi;
        const double sigma2 = n_bar * n_bar / (A * A + (n_bar - 0.5) * (n_bar - 0.5));

        std::vector<double> F(n_bar, 0.0);
        for (int m = 1; m < n_bar; ++m)
        {
            double num = 1.0, den = 1.0;
            for (int n = 1; n < n_bar; ++n)
            {
                num *= 1.0 - m * m / (sigma2 * (A * A + (n - 0.5) * (n - 0.5)));
                if (n != m)
                    den *= 1.0 - static_cast<double>(m * m) / (n * n);
            }
            F[m] = ((m % 2) ? 1.0 : -1.0) * num / (2.0 * den);
        }

        TaperWeights t;
        t.sll_db = sll_db;
        t.n_bar = n_bar;
        t.amplitudes.resize(count);
        for (int i = 0; i < count; ++i)
        {
            const double x = (i - 0.5 * (count - 1)) / count;
            double g = 1.0;
            for (int m = 1; m < n_bar; ++m)
                g += 2.0 * F[m] * std::cos(kTwoPi * m * x);
            t.amplitudes[i] = g;
        }
        const double peak = *std::max_element(t.amplitudes.begin(), t.amplitudes.end());
        for (double &a : t.amplitudes)
        {
            a /= peak;
            if (!(a > 0.0))
                throw std::invalid_argument("taylor_taper: n_bar " + std::to_string(n_bar) +
                                            " produces non-positive amplitudes for this aperture");
        }
        // exact mirror symmetry
        for (int i = 0; i < count / 2; ++i)
        {
            const double s = 0.5 * (t.amplitudes[i] + t.amplitudes[count - 1 - i]);
            t.amplitudes[i] = t.amplitudes[count - 1 - i] = s;
        }
        return t;
    }

    std::vector<cdouble> reference_excitation(const PlankLayout &layout, const TaperWeights &taper,
                                              double steer_deg, double wavelength)
    {
        if (layout.positions.size() != taper.amplitudes.size())
            throw std::invalid_argument("reference: layout and taper counts differ");
        double sum = 0.0;
        for (double a : taper.amplitudes)
            sum += a;
        if (!(sum > 0.0))
            throw std::invalid_argument("reference: taper carries no amplitude");
        const double ku = kTwoPi / wavelength * std::cos(deg2rad(steer_deg));
        std::vector<cdouble> w(layout.positions.size());
        for (size_t i = 0; i < w.size(); ++i)
            w[i] = taper.amplitudes[i] / sum * std::polar(1.0, -ku * layout.positions[i]);
        return w;
    }

    PatternCut reference_pattern(const PlankLayout &layout, const TaperWeights &taper, double steer_deg,
                                 std::span<const double> sample_angles_deg, double wavelength)
    {
        if (layout.positions.size() != taper.amplitudes.size())
            throw std::invalid_argument("reference_pattern: layout and taper counts differ");
        double sum = 0.0;
        for (double a : taper.amplitudes)
            sum += a;
        std::vector<cdouble> w(taper.amplitudes.begin(), taper.amplitudes.end());
        for (auto &x : w)
            x /= sum;
        return array_factor_cut(layout, w, sample_angles_deg, wavelength, steer_deg);
    }

    double halfpower_width_u(const PatternCut &cut)
    {
        cut.validate();
        const std::vector<double> pw = cut.power();
        const size_t seed = std::max_element(pw.begin(), pw.end()) - pw.begin();
        const LobeInfo lobe = analyze_lobe(cut.angles_deg, pw, seed);
        return 0.5 * (std::cos(deg2rad(lobe.left_3db)) - std::cos(deg2rad(lobe.right_3db)));
    }

    BeamPlan stack_beams_du(double delta_u, double start_left_edge_deg, int count)
    {
        if (count < 1)
            throw std::invalid_argument("stack_beams: beam count must be at least 1");
        if (!(start_left_edge_deg > 0.0 && start_left_edge_deg < 180.0))
            throw std::invalid_argument("stack_beams: start edge must lie in (0, 180) degrees");
        if (!(delta_u > 0.0))
            throw std::invalid_argument("stack_beams: half-power width must be positive");

        BeamPlan plan;
        plan.delta_u = delta_u;
        const double u_start = std::cos(deg2rad(start_left_edge_deg));
        double prev_right = start_left_edge_deg;
        for (int b = 1; b <= count; ++b)
        {
            const double ub = u_start - (2 * b - 1) * delta_u;
            const double u_right = ub - delta_u;
            if (ub < -1.0 || ub > 1.0 || u_right < -1.0)
                throw CoverageInfeasibleError("beam " + std::to_string(b) + " falls outside the visible range");
            const double right = rad2deg(std::acos(u_right));
            plan.steer_deg.push_back(rad2deg(std::acos(ub)));
            plan.left_edge_deg.push_back(prev_right); // shared crossover
            plan.right_edge_deg.push_back(right);
            plan.hpbw_deg.push_back(right - prev_right);
            prev_right = right;
        }
        plan.coverage_deg = plan.right_edge_deg.back() - plan.left_edge_deg.front();
        return plan;
    }

    BeamPlan stack_beams(const PatternCut &cut_broadside, double start_left_edge_deg, int count)
    {
        return stack_beams_du(halfpower_width_u(cut_broadside), start_left_edge_deg, count);
    }

    std::vector<double> elevation_grid(int count)
    {
        return linspace(0.0, 180.0, count);
    }

    std::vector<double> elevation_grid_step(double step_deg)
    {
        if (!(step_deg > 0.0))
            throw std::invalid_argument("angular step must be positive");
        const int n = static_cast<int>(std::lround(180.0 / step_deg)) + 1;
        return linspace(0.0, 180.0, n);
    }
}
