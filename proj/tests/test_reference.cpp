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

#include <catch_amalgamated.hpp>

#include "cpa/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace cpa;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    TaperWeights uniform_taper(int count)
    {
        return {std::vector<double>(count, 1.0), 0.0, 0};
    }

    // |sin(N x/2) / (N sin(x/2))|^2 with x = pi u for half-wavelength spacing
    double dirichlet_power(int n, double u)
    {
        const double x = kPi * u;
        if (std::abs(std::sin(0.5 * x)) < 1e-15)
            return 1.0;
        const double f = std::sin(0.5 * n * x) / (n * std::sin(0.5 * x));
        return f * f;
    }
}

TEST_CASE("Taylor taper shape", "[reference]")
{
    const TaperWeights t = taylor_taper(22, -30.0, 6);
    REQUIRE(t.count() == 22);
    CHECK(t.sll_db == -30.0);
    CHECK(t.n_bar == 6);
    CHECK_THAT(*std::max_element(t.amplitudes.begin(), t.amplitudes.end()), WithinAbs(1.0, 1e-15));
    for (int i = 0; i < 22; ++i)
    {
        CHECK(t.amplitudes[i] > 0.0);
        CHECK(t.amplitudes[i] == t.amplitudes[21 - i]);
    }
    // amplitudes fall from the centre outwards
    for (int i = 11; i < 21; ++i)
        CHECK(t.amplitudes[i + 1] <= t.amplitudes[i] + 1e-12);
}

TEST_CASE("Taylor taper rejects bad parameters", "[reference][errors]")
{
    CHECK_THROWS_AS(taylor_taper(1, -30.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(taylor_taper(22, 0.0, 6), std::invalid_argument);
    CHECK_THROWS_AS(taylor_taper(22, 5.0, 6), std::invalid_argument);
    CHECK_THROWS_AS(taylor_taper(22, -30.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(taylor_taper(22, -30.0, 23), std::invalid_argument);
}

TEST_CASE("uniform plank matches the Dirichlet kernel", "[reference][oracle]")
{
    for (int n : {2, 5, 22})
    {
        const PlankLayout layout = PlankLayout::uniform(n, 0.5);
        const auto grid = elevation_grid(3601);
        const PatternCut cut = reference_pattern(layout, uniform_taper(n), 90.0, grid);
        const auto pw = cut.power();
        for (size_t i = 0; i < grid.size(); ++i)
            CHECK_THAT(pw[i], WithinAbs(dirichlet_power(n, std::cos(deg2rad(grid[i]))), 1e-12));
    }
}

TEST_CASE("uniform plank descriptors", "[reference][oracle]")
{
    const PlankLayout layout = PlankLayout::uniform(22, 0.5);
    const PatternCut cut = reference_pattern(layout, uniform_taper(22), 90.0, elevation_grid_step(0.01));
    const BeamMetrics m = metrics(cut, 90.0);
    REQUIRE(m.sll_db);
    CHECK_THAT(*m.sll_db, WithinAbs(-13.2, 0.1));
    CHECK_THAT(m.directivity_dbi, WithinAbs(10.0 * std::log10(22.0), 0.3));

    // -3 dB half-width against a bisection of the closed form
    const double half = std::pow(10.0, -0.3);
    double lo = 0.0, hi = 2.0 / 22.0;
    for (int it = 0; it < 200; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        (dirichlet_power(22, mid) > half ? lo : hi) = mid;
    }
    CHECK_THAT(halfpower_width_u(cut), WithinAbs(lo, 1e-6));
}

TEST_CASE("Taylor reference descriptors", "[reference][benchmark]")
{
    const PlankLayout layout = PlankLayout::uniform(22, 0.5);
    const TaperWeights t = taylor_taper(22, -30.0, 6);
    const PatternCut cut = reference_pattern(layout, t, 90.0, elevation_grid_step(0.01));
    const BeamMetrics m = metrics(cut, 90.0);
    REQUIRE(m.sll_db);
    CHECK_THAT(*m.sll_db, WithinAbs(-30.00, 0.1));
    CHECK_THAT(m.directivity_dbi, WithinAbs(12.77, 0.1));
    CHECK_THAT(cut.peak_power(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("steered reference is a shift in u", "[reference][property]")
{
    const PlankLayout layout = PlankLayout::uniform(22, 0.5);
    const TaperWeights t = taylor_taper(22, -30.0, 6);
    const auto grid = elevation_grid(721);
    for (double steer : {60.0, 73.0, 108.5, 130.0})
    {
        const double u0 = std::cos(deg2rad(steer));
        const PatternCut steered = reference_pattern(layout, t, steer, grid);
        std::vector<double> angles;
        for (double a : grid)
        {
            // angle whose broadside u equals u - u0, when visible
            const double u = std::cos(deg2rad(a)) - u0;
            angles.push_back(std::abs(u) <= 1.0 ? rad2deg(std::acos(u)) : 90.0);
        }
        const PatternCut broad = reference_pattern(layout, t, 90.0, angles);
        for (size_t i = 0; i < grid.size(); ++i)
        {
            const double u = std::cos(deg2rad(grid[i])) - u0;
            if (std::abs(u) <= 1.0)
                CHECK_THAT(std::abs(steered.values[i]), WithinAbs(std::abs(broad.values[i]), 1e-12));
        }
    }
}

TEST_CASE("reference excitation reproduces the reference pattern", "[reference]")
{
    const PlankLayout layout = PlankLayout::uniform(22, 0.5);
    const TaperWeights t = taylor_taper(22, -30.0, 6);
    const auto grid = elevation_grid(181);
    const auto w = reference_excitation(layout, t, 80.0);
    const PatternCut a = array_factor_cut(layout, w, grid);
    const PatternCut b = reference_pattern(layout, t, 80.0, grid);
    for (size_t i = 0; i < grid.size(); ++i)
        CHECK_THAT(std::abs(a.values[i]), WithinAbs(std::abs(b.values[i]), 1e-12));
}

TEST_CASE("beam stacking reproduces the benchmark plan", "[reference][benchmark]")
{
    const PlankLayout layout = PlankLayout::uniform(22, 0.5);
    const TaperWeights t = taylor_taper(22, -30.0, 6);
    const PatternCut cut = reference_pattern(layout, t, 90.0, elevation_grid_step(0.01));
    const BeamPlan plan = stack_beams(cut, 70.0, 7);
    REQUIRE(plan.count() == 7);

    const double steer[] = {73.07, 79.06, 84.93, 90.75, 96.57, 102.46, 108.47};
    const double hpbw[] = {6.08, 5.92, 5.83, 5.81, 5.85, 5.95, 6.13};
    for (int b = 0; b < 7; ++b)
    {
        CHECK_THAT(plan.steer_deg[b], WithinAbs(steer[b], 0.05));
        CHECK_THAT(plan.hpbw_deg[b], WithinAbs(hpbw[b], 0.05));
        if (b > 0)
            CHECK(plan.left_edge_deg[b] == plan.right_edge_deg[b - 1]);
    }
    CHECK(plan.left_edge_deg[0] == 70.0);
    CHECK_THAT(plan.right_edge_deg[6], WithinAbs(111.55, 0.1));

    // each steered beam is 3 dB down at its planned edges
    const double half = std::pow(10.0, -0.3);
    for (int b = 0; b < 7; ++b)
    {
        const double edges[] = {plan.left_edge_deg[b], plan.right_edge_deg[b]};
        const PatternCut e = reference_pattern(layout, t, plan.steer_deg[b], edges);
        for (const auto &v : e.values)
            CHECK_THAT(std::norm(v), WithinAbs(half, 1e-4));
    }
}

TEST_CASE("single beam plan spans twice the half-width", "[reference]")
{
    const double du = 0.05;
    const BeamPlan plan = stack_beams_du(du, 80.0, 1);
    REQUIRE(plan.count() == 1);
    const double span_u = std::cos(deg2rad(plan.left_edge_deg[0])) - std::cos(deg2rad(plan.right_edge_deg[0]));
    CHECK_THAT(span_u, WithinAbs(2 * du, 1e-12));
    CHECK_THAT(std::cos(deg2rad(plan.steer_deg[0])), WithinAbs(std::cos(deg2rad(80.0)) - du, 1e-12));
}

TEST_CASE("beam stacking errors", "[reference][errors]")
{
    CHECK_THROWS_AS(stack_beams_du(0.05, 70.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(stack_beams_du(0.05, 0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(stack_beams_du(0.0, 70.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(stack_beams_du(0.05, 70.0, 40), CoverageInfeasibleError);
}
