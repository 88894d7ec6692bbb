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

#include "cpa/geometry.hpp"
#include "cpa/pattern.hpp"

#include <cmath>
#include <random>

using namespace cpa;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("cone radii follow the circumference relation", "[geometry]")
{
    const ConeRadii c = cone_radii(204, 0.5, 10.5, 70.0);
    CHECK_THAT(c.R - c.r, WithinAbs(10.5 * std::cos(deg2rad(70.0)), 1e-12));
    CHECK_THAT(c.R - c.r, WithinAbs(3.591, 5e-4));
    CHECK_THAT(c.r, WithinRel(204 * 0.5 / (2 * kPi), 1e-15));

    // radii of the benchmark cone, 2% regression band
    CHECK_THAT(c.r, WithinRel(15.92, 0.02));
    CHECK_THAT(c.R, WithinRel(19.51, 0.02));

    const ConeRadii small = cone_radii(6, 1.0, 0.0, 45.0);
    CHECK_THAT(small.r, WithinAbs(0.9549296585513720, 1e-15));
    CHECK(small.R == small.r);
}

TEST_CASE("cone radii reject non-positive inputs", "[geometry][errors]")
{
    CHECK_THROWS_AS(cone_radii(0, 0.5, 10.5, 70.0), std::invalid_argument);
    CHECK_THROWS_AS(cone_radii(204, 0.0, 10.5, 70.0), std::invalid_argument);
    CHECK_THROWS_AS(cone_radii(204, 0.5, -1.0, 70.0), std::invalid_argument);
    CHECK_THROWS_AS(cone_radii(204, 0.5, 10.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(cone_radii(204, 0.5, 10.5, 90.0), std::invalid_argument);
    CHECK_THROWS_AS(ConeGeometry::make(2, 0.5, 10.5, 70.0), std::invalid_argument);
    CHECK_THROWS_AS(ConeGeometry::make(204, 0.5, 10.5, 70.0, -1.0), std::invalid_argument);
}

TEST_CASE("minor radius override keeps the slant relation", "[geometry]")
{
    const ConeGeometry g = ConeGeometry::make(204, 0.5, 10.5, 70.0, 15.92);
    CHECK(g.r == 15.92);
    CHECK_THAT(g.R, WithinAbs(15.92 + 10.5 * std::cos(deg2rad(70.0)), 1e-12));
    CHECK_THAT(g.psi_c * g.n_planks, WithinAbs(2 * kPi, 1e-12));
}

TEST_CASE("element positions on the cone surface", "[geometry]")
{
    const ConeGeometry g = ConeGeometry::make(204, 0.5, 10.5, 70.0);
    const std::vector<double> offsets = {0.0, 10.5};

    // plank N sits on the x-axis
    const auto p = plank_element_positions(g, offsets, 204);
    CHECK_THAT(p[0].x, WithinAbs(g.R, 1e-12));
    CHECK_THAT(p[0].y, WithinAbs(0.0, 1e-12));
    CHECK(p[0].z == 0.0);
    CHECK_THAT(std::hypot(p[1].x, p[1].y), WithinAbs(g.r, 1e-12));
    CHECK_THAT(p[1].z, WithinAbs(9.867, 5e-4));
    CHECK_THAT(p[1].z, WithinAbs(10.5 * std::sin(deg2rad(70.0)), 1e-12));
}

TEST_CASE("element positions validate their offsets", "[geometry][errors]")
{
    const ConeGeometry g = ConeGeometry::make(204, 0.5, 10.5, 70.0);
    const std::vector<double> beyond = {0.0, 10.6};
    const std::vector<double> negative = {-0.1};
    const std::vector<double> unsorted = {1.0, 0.5};
    const std::vector<double> ok = {0.0};
    CHECK_THROWS_AS(plank_element_positions(g, beyond, 1), std::out_of_range);
    CHECK_THROWS_AS(plank_element_positions(g, negative, 1), std::out_of_range);
    CHECK_THROWS_AS(plank_element_positions(g, unsorted, 1), std::invalid_argument);
    CHECK_THROWS_AS(plank_element_positions(g, ok, 0), std::out_of_range);
    CHECK_THROWS_AS(plank_element_positions(g, ok, 205), std::out_of_range);
}

TEST_CASE("planks are congruent under rotation", "[geometry][property]")
{
    const ConeGeometry g = ConeGeometry::make(204, 0.5, 10.5, 70.0);
    std::vector<double> offsets;
    for (int i = 0; i < 22; ++i)
        offsets.push_back(0.5 * i);
    const auto base = plank_element_positions(g, offsets, 204);
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pick(1, 204);
    for (int trial = 0; trial < 50; ++trial)
    {
        const int n = pick(rng);
        const auto p = plank_element_positions(g, offsets, n);
        const double a = n * g.psi_c;
        for (size_t m = 0; m < p.size(); ++m)
        {
            const double x = base[m].x * std::cos(a) - base[m].y * std::sin(a);
            const double y = base[m].x * std::sin(a) + base[m].y * std::cos(a);
            const double scale = std::hypot(base[m].x, base[m].y);
            CHECK(std::abs(p[m].x - x) <= 1e-12 * scale);
            CHECK(std::abs(p[m].y - y) <= 1e-12 * scale);
            CHECK(p[m].z == base[m].z);
            // surface relation of the element
            const double rho = g.R - offsets[m] * std::cos(deg2rad(g.theta_s_deg));
            CHECK_THAT(p[m].x * p[m].x + p[m].y * p[m].y, WithinRel(rho * rho, 1e-12));
        }
    }
}

TEST_CASE("steering phase examples", "[geometry]")
{
    CHECK(steering_phase({0, 0, 0}, 37.0, 123.0, 1.0) == 0.0);
    CHECK_THAT(steering_phase({0, 0, 0.5}, 90.0, 10.0, 1.0), WithinAbs(0.0, 1e-15));
    // -pi lands on the +pi end of the half-open wrap interval
    const double ph = steering_phase({0.5, 0, 0}, 90.0, 0.0, 1.0);
    CHECK_THAT(std::abs(ph), WithinAbs(kPi, 1e-12));
    CHECK_THAT(std::abs(std::exp(cdouble(0, ph)) - cdouble(-1, 0)), WithinAbs(0.0, 1e-12));
    CHECK_THROWS_AS(steering_phase({1, 0, 0}, 90.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("steering phase agrees with the unwrapped form", "[geometry][property]")
{
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coord(-20.0, 20.0), th(0.0, 180.0), ph(-180.0, 180.0);
    for (int i = 0; i < 200; ++i)
    {
        const ElementPosition p{coord(rng), coord(rng), coord(rng)};
        const double t = deg2rad(th(rng)), f = deg2rad(ph(rng));
        const double lam = 0.7;
        const double raw = -kTwoPi / lam *
                           (p.x * std::sin(t) * std::cos(f) + p.y * std::sin(t) * std::sin(f) + p.z * std::cos(t));
        const double w = steering_phase(p, rad2deg(t), rad2deg(f), lam);
        CHECK(w > -kPi);
        CHECK(w <= kPi);
        CHECK(std::abs(std::exp(cdouble(0, w)) - std::exp(cdouble(0, raw))) < 1e-10);
    }
}

TEST_CASE("co-phased array peaks at the steering direction", "[geometry][property]")
{
    // small cone: 12 planks, 5 elements each, uniform amplitude
    const ConeGeometry g = ConeGeometry::make(12, 0.5, 2.0, 60.0);
    std::vector<double> offsets = {0.0, 0.5, 1.0, 1.5, 2.0};
    struct Dir
    {
        double theta, phi;
    };
    for (const Dir b : {Dir{40.0, 0.0}, Dir{75.0, 120.0}, Dir{20.0, -60.0}})
    {
        ArraySource src;
        std::vector<cdouble> w;
        for (int n = 1; n <= g.n_planks; ++n)
            for (const auto &p : plank_element_positions(g, offsets, n))
            {
                src.positions.push_back(p);
                src.element_azimuth_rad.push_back(0.0);
                w.push_back(std::exp(cdouble(0, steering_phase(p, b.theta, b.phi, 1.0))));
            }
        src.weights = Eigen::Map<Eigen::VectorXcd>(w.data(), static_cast<Eigen::Index>(w.size()));

        std::vector<double> th, ph;
        for (double t = 0.0; t <= 180.0; t += 0.5)
            for (double f = -180.0; f < 180.0; f += 0.5)
            {
                th.push_back(deg2rad(t));
                ph.push_back(deg2rad(f));
            }
        const Eigen::MatrixXcd field = evaluate_field(src, th, ph, 1.0, ElementPattern::isotropic());
        Eigen::Index best = 0;
        field.col(0).cwiseAbs2().maxCoeff(&best);
        CHECK_THAT(rad2deg(th[best]), WithinAbs(b.theta, 1e-9));
        CHECK_THAT(std::remainder(rad2deg(ph[best]) - b.phi, 360.0), WithinAbs(0.0, 1e-9));
        CHECK_THAT(std::abs(field(best, 0)), WithinRel(static_cast<double>(w.size()), 1e-12));
    }
}
