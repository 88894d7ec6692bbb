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

#include "cpa/assembly.hpp"

#include <cmath>
#include <sstream>

using namespace cpa;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    const double kF0 = 1.282e9;

    struct Bench
    {
        ConeGeometry geom = ConeGeometry::make(204, 0.5, 10.5, 70.0, 15.92);
        PlankLayout layout = PlankLayout::uniform(22, 0.5);
        TaperWeights taper = taylor_taper(22, -30.0, 6);
        BeamPlan plan;
        ExcitationSet fp;

        Bench()
        {
            plan = stack_beams(reference_pattern(layout, taper, 90.0, elevation_grid_step(0.01)), 70.0, 7);
            for (int i = 0; i < layout.count(); ++i)
            {
                fp.support.push_back(i);
                fp.positions.push_back(layout.positions[i]);
            }
            for (double s : plan.steer_deg)
                fp.beams.push_back(reference_excitation(layout, taper, s));
        }
    };

    const Bench &bench()
    {
        static const Bench b;
        return b;
    }

    EvaluationSpec coarse_spec()
    {
        EvaluationSpec s;
        s.grid = {101, 101};
        return s;
    }
}

TEST_CASE("sector partitions of the benchmark cone", "[assembly][benchmark]")
{
    const auto &g = bench().geom;
    struct Row
    {
        double psi;
        int s, nc;
    };
    for (const Row r : {Row{30, 12, 17}, Row{60, 6, 34}, Row{90, 4, 51}})
    {
        const SectorConfig c = SectorConfig::make(g, r.psi);
        CHECK(c.sector_count == r.s);
        CHECK(c.planks_per_sector == r.nc);
        CHECK(c.sector_count * c.planks_per_sector == g.n_planks);
        // sectors tile the ring without overlap
        std::vector<int> seen(g.n_planks + 1, 0);
        for (int s = 0; s < c.sector_count; ++s)
            for (int n : c.planks(s))
                ++seen[n];
        for (int n = 1; n <= g.n_planks; ++n)
            CHECK(seen[n] == 1);
    }
    CHECK(g.n_planks * bench().layout.count() == 4488);

    const SectorConfig c = SectorConfig::make(g, 30.0);
    CHECK(c.planks(0).front() == 1);
    CHECK(c.planks(0).back() == 17);
    CHECK(c.planks(1).front() == 18);
    CHECK_THAT(c.sector_azimuths_deg[0], WithinAbs(9.0 * 360.0 / 204.0, 1e-12));
}

TEST_CASE("sector configuration errors", "[assembly][errors]")
{
    const auto &g = bench().geom;
    CHECK_THROWS_AS(SectorConfig::make(g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SectorConfig::make(g, 25.0), std::invalid_argument);
    CHECK_THROWS_AS(SectorConfig::make(g, 30.0, taylor_taper(16, -30.0, 4)), std::invalid_argument);
    const SectorConfig c = SectorConfig::make(g, 30.0);
    CHECK_THROWS_AS(c.planks(12), std::invalid_argument);
    CHECK_THROWS_AS(c.planks(-1), std::invalid_argument);
    CHECK_THROWS_AS((FrequencyPlan{0.0, {kF0}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((FrequencyPlan{kF0, {}}.validate()), std::invalid_argument);
}

TEST_CASE("plank elevation maps to the global polar angle", "[assembly]")
{
    CHECK(plank_to_global_theta(90.0, 70.0) == 70.0);
    CHECK_THAT(plank_to_global_theta(73.064, 70.0), WithinAbs(53.064, 1e-12));
}

TEST_CASE("assembled weights co-phase the sector", "[assembly]")
{
    const auto &b = bench();
    const SectorConfig sec = SectorConfig::make(b.geom, 30.0);
    const SectorAssembly a = assemble_sector(b.geom, b.layout, b.fp, sec, b.plan, 3, kF0);
    CHECK(a.sector_index == 3);
    CHECK(a.elements.size() == 17u * 22u);
    CHECK(a.beam_count() == 7);
    CHECK_THAT(a.facing_azimuth_deg, WithinAbs(sec.sector_azimuths_deg[3], 1e-12));
    const double lam = wavelength_m(kF0);
    for (int beam = 0; beam < 7; ++beam)
    {
        CHECK_THAT(a.beam_theta_deg[beam], WithinAbs(b.plan.steer_deg[beam] - 20.0, 1e-12));
        CHECK(a.beam_phi_deg[beam] == a.facing_azimuth_deg);
        // every element contributes in phase toward the beam direction
        const double th = deg2rad(a.beam_theta_deg[beam]), ph = deg2rad(a.beam_phi_deg[beam]);
        for (const auto &e : a.elements)
        {
            const double k = kTwoPi / lam;
            const double arg = k * (e.position_m.x * std::sin(th) * std::cos(ph) +
                                    e.position_m.y * std::sin(th) * std::sin(ph) + e.position_m.z * std::cos(th));
            const cdouble term = e.weights[beam] * std::polar(1.0, arg);
            CHECK_THAT(std::arg(term), WithinAbs(0.0, 1e-9));
        }
    }
    for (const auto &e : a.elements)
    {
        CHECK_THAT(e.position_m.x, WithinAbs(e.position_lambda.x * lam, 1e-12));
        CHECK_THAT(e.position_m.z, WithinAbs(e.position_lambda.z * lam, 1e-12));
    }
}

TEST_CASE("azimuth taper scales the plank amplitudes", "[assembly]")
{
    const auto &b = bench();
    const TaperWeights az = taylor_taper(17, -30.0, 4);
    const SectorConfig flat = SectorConfig::make(b.geom, 30.0);
    const SectorConfig tapered = SectorConfig::make(b.geom, 30.0, az);
    const SectorAssembly a = assemble_sector(b.geom, b.layout, b.fp, flat, b.plan, 0, kF0);
    const SectorAssembly t = assemble_sector(b.geom, b.layout, b.fp, tapered, b.plan, 0, kF0);
    REQUIRE(a.elements.size() == t.elements.size());
    for (size_t i = 0; i < a.elements.size(); ++i)
    {
        const int n = a.elements[i].plank - 1; // sector 0 starts at plank 1
        for (int beam = 0; beam < 7; ++beam)
            CHECK(std::abs(t.elements[i].weights[beam] - az.amplitudes[n] * a.elements[i].weights[beam]) < 1e-14);
    }
}

TEST_CASE("assembly validates its inputs", "[assembly][errors]")
{
    const auto &b = bench();
    const SectorConfig sec = SectorConfig::make(b.geom, 30.0);
    CHECK_THROWS_AS(assemble_sector(b.geom, b.layout, b.fp, sec, b.plan, 12, kF0), std::invalid_argument);
    ExcitationSet few = b.fp;
    few.beams.pop_back();
    CHECK_THROWS_AS(assemble_sector(b.geom, b.layout, few, sec, b.plan, 0, kF0), std::invalid_argument);
    CHECK_THROWS_AS(assemble_sector(b.geom, PlankLayout::uniform(21, 0.5), b.fp, sec, b.plan, 0, kF0),
                    std::invalid_argument);
}

TEST_CASE("single isotropic element has 0 dBi directivity", "[assembly]")
{
    SectorAssembly a;
    a.f0_hz = kF0;
    a.beam_theta_deg = {90.0};
    a.beam_phi_deg = {0.0};
    AssembledElement e;
    e.plank = 1;
    e.weights = {cdouble(1.0)};
    a.elements.push_back(e);
    // a flat pattern has no main lobe, so go through the sphere integral directly
    const ArraySource src = a.source();
    const double lam = wavelength_m(kF0);
    const double pw = sphere_power(src, lam, ElementPattern::isotropic(), 1.0)[0];
    CHECK_THAT(directivity_dbi(1.0, pw), WithinAbs(0.0, 1e-3));
}

TEST_CASE("sector beams point where they were steered", "[assembly]")
{
    const auto &b = bench();
    const SectorConfig sec = SectorConfig::make(b.geom, 30.0);
    const SectorAssembly a = assemble_sector(b.geom, b.layout, b.fp, sec, b.plan, 0, kF0);
    const std::vector<int> beams = {0, 3, 6};
    const auto ev = evaluate_assembly(a, kF0, ElementPattern::isotropic(), coarse_spec(), beams);
    REQUIRE(ev.size() == 3);
    for (const auto &e : ev)
    {
        CHECK(e.pattern.beam == e.beam);
        CHECK_THAT(e.metrics.peak_angle_deg, WithinAbs(a.beam_theta_deg[e.beam], 0.02));
        CHECK(e.metrics.hpbw_az_deg);
        CHECK(e.metrics.sll_db);
        // untapered azimuth aperture behaves as a uniform array
        CHECK_THAT(*e.metrics.sll_db, WithinAbs(-13.2, 0.6));
    }
}

TEST_CASE("self comparison yields a zero chi column", "[assembly][chi]")
{
    const auto &b = bench();
    const SectorConfig sec = SectorConfig::make(b.geom, 30.0);
    const SectorAssembly a = assemble_sector(b.geom, b.layout, b.fp, sec, b.plan, 0, kF0);
    const auto rows = frequency_sweep(a, a, FrequencyPlan{kF0, {kF0}}, ElementPattern::isotropic(), coarse_spec());
    REQUIRE(rows.size() == 7);
    for (const auto &r : rows)
        CHECK(r.chi == 0.0);
}

TEST_CASE("three frequencies give three rows per beam", "[assembly]")
{
    const auto &b = bench();
    ExcitationSet one = b.fp;
    one.beams.resize(1);
    BeamPlan plan = b.plan;
    plan.steer_deg.resize(1);
    const SectorConfig sec = SectorConfig::make(b.geom, 30.0);
    const SectorAssembly a = assemble_sector(b.geom, b.layout, one, sec, plan, 0, kF0);
    const auto rows = frequency_sweep(a, a, FrequencyPlan{kF0, {1.215e9, kF0, 1.350e9}},
                                      ElementPattern::isotropic(), coarse_spec());
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].frequency_hz == 1.215e9);
    CHECK(rows[2].frequency_hz == 1.350e9);
    // fixed metric positions: the aperture grows electrically with frequency
    CHECK(rows[2].metrics.hpbw_el_deg < rows[1].metrics.hpbw_el_deg);
    CHECK(rows[1].metrics.hpbw_el_deg < rows[0].metrics.hpbw_el_deg);
}

TEST_CASE("wider sectors narrow the azimuth beam", "[assembly][benchmark]")
{
    const auto &b = bench();
    std::vector<double> hpbw;
    for (double psi : {30.0, 90.0})
    {
        const SectorConfig sec = SectorConfig::make(b.geom, psi);
        const SectorAssembly a = assemble_sector(b.geom, b.layout, b.fp, sec, b.plan, 0, kF0);
        const std::vector<int> centre = {3};
        const auto ev = evaluate_assembly(a, kF0, ElementPattern::isotropic(), coarse_spec(), centre);
        REQUIRE(ev[0].metrics.hpbw_az_deg);
        hpbw.push_back(*ev[0].metrics.hpbw_az_deg);
    }
    // about one third when tripling the sector width
    CHECK_THAT(hpbw[1] / hpbw[0], WithinAbs(1.0 / 3.0, 0.05));
}

TEST_CASE("element pattern CSV parsing", "[assembly][element]")
{
    const ElementPattern e = load_element_pattern(CPA_TEST_DATA_DIR "/element_cos30.csv");
    CHECK_FALSE(e.is_isotropic());
    CHECK(e.theta_deg().size() == 7);
    CHECK_THAT(std::abs(e(60.0, 0.0)), WithinAbs(std::cos(deg2rad(10.0)), 1e-6));
    CHECK_THAT(std::abs(e(90.0, 180.0)), WithinAbs(std::abs(e(90.0, -180.0)), 1e-12));
    // phi wraps across the open end of the table
    CHECK_THAT(std::abs(e(60.0, 165.0)), WithinAbs(0.5 * (std::abs(e(60.0, 150.0)) + std::abs(e(60.0, 180.0))), 1e-12));

    std::istringstream flat("theta_deg,phi_deg,mag_db,phase_deg\n0,0,0,0\n0,90,0,0\n180,0,0,0\n180,90,0,0\n");
    const ElementPattern f = parse_element_pattern(flat);
    CHECK_THAT(std::abs(f(45.0, 30.0) - cdouble(1.0)), WithinAbs(0.0, 1e-15));
}

TEST_CASE("element pattern parse errors carry the line number", "[assembly][element][errors]")
{
    try
    {
        load_element_pattern(CPA_TEST_DATA_DIR "/element_missing_point.csv");
        FAIL("expected ParseError");
    }
    catch (const ParseError &e)
    {
        CHECK(e.line == 47);
    }

    auto parse = [](const std::string &text) { std::istringstream in(text); return parse_element_pattern(in); };
    const std::string h = "theta_deg,phi_deg,mag_db,phase_deg\n";
    try
    {
        parse(h + "0,0,0,0\n0,90,0,0\n90,0,0,0\n");
        FAIL("expected ParseError");
    }
    catch (const ParseError &e)
    {
        CHECK(e.line == 4); // final row stops after one point
    }
    CHECK_THROWS_AS(parse(h + "0,0,abc,0\n"), ParseError);
    CHECK_THROWS_AS(parse(h + "0,0,0\n"), ParseError);
    CHECK_THROWS_AS(parse(h + "0,0,0,0,1\n"), ParseError);
    CHECK_THROWS_AS(parse("theta,phi\n0,0\n"), ParseError);
    CHECK_THROWS_AS(parse(h + "0,0,0,0\n0,90,0,0\n0,180,0,0\n90,0,0,0\n90,90,0,0\n90,180,0,0\n90,270,0,0\n"),
                    ParseError);
    CHECK_THROWS_AS(parse(h + "0,0,0,0\n0,90,0,0\n90,0,0,0\n90,45,0,0\n"), FormatError);
    CHECK_THROWS_AS(parse(h + "90,0,0,0\n90,90,0,0\n0,0,0,0\n0,90,0,0\n"), FormatError);
    CHECK_THROWS_AS(load_element_pattern(CPA_TEST_DATA_DIR "/does_not_exist.csv"), IoError);
}
