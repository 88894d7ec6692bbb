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

#include "cpa/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cpa
{
    SectorConfig SectorConfig::make(const ConeGeometry &geom, double width_deg,
                                    std::optional<TaperWeights> azimuth_taper)
    {
        if (!(width_deg > 0.0 && width_deg <= 360.0))
            throw std::invalid_argument("sector width must lie in (0, 360] degrees");
        const double s = 360.0 / width_deg;
        if (std::abs(s - std::round(s)) > 1e-9)
            throw std::invalid_argument("sector width must divide 360 degrees");
        SectorConfig c;
        c.width_deg = width_deg;
        c.sector_count = static_cast<int>(std::lround(s));
        c.planks_per_sector = static_cast<int>(std::lround(geom.n_planks * width_deg / 360.0));
        if (c.planks_per_sector < 1 || c.sector_count * c.planks_per_sector > geom.n_planks)
            throw std::invalid_argument("sector width does not partition the plank ring");
        if (azimuth_taper && azimuth_taper->count() != c.planks_per_sector)
            throw std::invalid_argument("azimuth taper length must equal the planks per sector");
        c.azimuth_taper = std::move(azimuth_taper);
        for (int sidx = 0; sidx < c.sector_count; ++sidx)
        {
            // mean of the unreduced plank angles n * psi_c
            const double first = sidx * c.planks_per_sector + 1;
            const double last = (sidx + 1) * c.planks_per_sector;
            double az = std::fmod(rad2deg(0.5 * (first + last) * geom.psi_c), 360.0);
            c.sector_azimuths_deg.push_back(az);
        }
        return c;
    }

    std::vector<int> SectorConfig::planks(int sector_index) const
    {
        if (sector_index < 0 || sector_index >= sector_count)
            throw std::invalid_argument("sector index " + std::to_string(sector_index) + " outside 0.." +
                                        std::to_string(sector_count - 1));
        std::vector<int> out;
        for (int i = 1; i <= planks_per_sector; ++i)
            out.push_back(sector_index * planks_per_sector + i);
        return out;
    }

    void FrequencyPlan::validate() const
    {
        if (!(f0_hz > 0.0))
            throw std::invalid_argument("design frequency must be positive");
        if (frequencies_hz.empty())
            throw std::invalid_argument("frequency plan is empty");
        for (double f : frequencies_hz)
            if (!(f > 0.0))
                throw std::invalid_argument("evaluation frequencies must be positive");
    }

    ArraySource SectorAssembly::source() const
    {
        ArraySource src;
        src.weights.resize(elements.size(), beam_count());
        for (size_t i = 0; i < elements.size(); ++i)
        {
            src.positions.push_back(elements[i].position_m);
            src.element_azimuth_rad.push_back(elements[i].azimuth_rad);
            for (int b = 0; b < beam_count(); ++b)
                src.weights(i, b) = elements[i].weights[b];
        }
        return src;
    }

    double plank_to_global_theta(double theta_plank_deg, double theta_s_deg)
    {
        return theta_plank_deg - (90.0 - theta_s_deg);
    }

    SectorAssembly assemble_sector(const ConeGeometry &geom, const PlankLayout &layout,
                                   const ExcitationSet &excitations, const SectorConfig &sector,
                                   const BeamPlan &beams, int sector_index, double f0_hz)
    {
        const std::vector<int> planks = sector.planks(sector_index);
        if (excitations.beam_count() != beams.count())
            throw std::invalid_argument("assemble_sector: excitation and beam plan counts differ");
        for (const auto &w : excitations.beams)
            if (static_cast<int>(w.size()) != layout.count())
                throw std::invalid_argument("assemble_sector: excitation support does not match the layout");
        const double lambda0 = wavelength_m(f0_hz);

        SectorAssembly out;
        out.sector_index = sector_index;
        out.facing_azimuth_deg = sector.sector_azimuths_deg[sector_index];
        out.f0_hz = f0_hz;
        for (double t : beams.steer_deg)
        {
            out.beam_theta_deg.push_back(plank_to_global_theta(t, geom.theta_s_deg));
            out.beam_phi_deg.push_back(out.facing_azimuth_deg);
        }

        const int B = beams.count();
        // plank-level weights with the plank-axis progression removed
        std::vector<std::vector<cdouble>> base(B, std::vector<cdouble>(layout.count()));
        for (int b = 0; b < B; ++b)
        {
            const double u = std::cos(deg2rad(beams.steer_deg[b]));
            for (int m = 0; m < layout.count(); ++m)
                base[b][m] = excitations.beams[b][m] * std::polar(1.0, kTwoPi * layout.positions[m] * u);
        }

        for (size_t n = 0; n < planks.size(); ++n)
        {
            const double taper = sector.azimuth_taper ? sector.azimuth_taper->amplitudes[n] : 1.0;
            const std::vector<ElementPosition> pos = plank_element_positions(geom, layout.positions, planks[n]);
            for (int m = 0; m < layout.count(); ++m)
            {
                AssembledElement el;
                el.plank = planks[n];
                el.element = m;
                el.position_lambda = pos[m];
                el.position_m = pos[m].scaled(lambda0);
                el.azimuth_rad = geom.plank_azimuth(planks[n]);
                for (int b = 0; b < B; ++b)
                {
                    const double shift = steering_phase(pos[m], out.beam_theta_deg[b], out.beam_phi_deg[b], 1.0);
                    el.weights.push_back(base[b][m] * taper * std::polar(1.0, shift));
                }
                out.elements.push_back(std::move(el));
            }
        }
        return out;
    }

    std::vector<BeamEvaluation> evaluate_assembly(const SectorAssembly &assembly, double frequency_hz,
                                                  const ElementPattern &element, const EvaluationSpec &spec,
                                                  std::span<const int> beams)
    {
        if (assembly.elements.empty())
            throw std::invalid_argument("evaluate_assembly: assembly is empty");
        std::vector<int> which(beams.begin(), beams.end());
        if (which.empty())
            for (int b = 0; b < assembly.beam_count(); ++b)
                which.push_back(b);
        for (int b : which)
            if (b < 0 || b >= assembly.beam_count())
                throw std::invalid_argument("evaluate_assembly: beam index out of range");

        const double lambda = wavelength_m(frequency_hz);
        const ArraySource src = assembly.source();
        const double phi_s = assembly.facing_azimuth_deg;

        const std::vector<Pattern2D> grids = pattern_2d(src, spec.grid, lambda, element, phi_s);
        const std::vector<double> power = sphere_power(src, lambda, element, spec.sphere_step_deg);

        // elevation cut in the sector's vertical half-plane, shared by all beams
        const std::vector<double> el_deg = elevation_grid_step(spec.cut_step_deg);
        std::vector<double> el_th(el_deg.size()), el_ph(el_deg.size(), deg2rad(phi_s));
        for (size_t i = 0; i < el_deg.size(); ++i)
            el_th[i] = deg2rad(el_deg[i]);
        const Eigen::MatrixXcd el_field = evaluate_field(src, el_th, el_ph, lambda, element);

        const int naz = static_cast<int>(std::lround(180.0 / spec.cut_step_deg)) + 1;
        const std::vector<double> az_deg = linspace(-90.0, 90.0, naz);

        std::vector<BeamEvaluation> out;
        for (int b : which)
        {
            BeamEvaluation ev;
            ev.beam = b;
            ev.frequency_hz = frequency_hz;
            ev.pattern = grids[b];
            ev.pattern.frequency_hz = frequency_hz;

            ev.elevation_cut.angles_deg = el_deg;
            ev.elevation_cut.wavelength = lambda;
            ev.elevation_cut.values.resize(el_deg.size());
            for (size_t i = 0; i < el_deg.size(); ++i)
                ev.elevation_cut.values[i] = el_field(i, b);
            const std::vector<double> el_pw = ev.elevation_cut.power();
            const size_t seed = static_cast<size_t>(std::lround(assembly.beam_theta_deg[b] / spec.cut_step_deg));
            const LobeInfo el = analyze_lobe(el_deg, el_pw, std::min(seed, el_deg.size() - 1));
            const double theta_pk = el_deg[el.peak];

            std::vector<double> az_th(naz, deg2rad(theta_pk)), az_ph(naz);
            for (int i = 0; i < naz; ++i)
                az_ph[i] = deg2rad(phi_s + az_deg[i]);
            const Eigen::MatrixXcd az_field = evaluate_field(src, az_th, az_ph, lambda, element);
            ev.azimuth_cut.angles_deg = az_deg;
            ev.azimuth_cut.wavelength = lambda;
            ev.azimuth_cut.values.resize(naz);
            for (int i = 0; i < naz; ++i)
                ev.azimuth_cut.values[i] = az_field(i, b);
            const std::vector<double> az_pw = ev.azimuth_cut.power();
            const LobeInfo az = analyze_lobe(az_deg, az_pw, static_cast<size_t>(naz / 2));

            double peak = std::max(ev.pattern.peak_power(), el_pw[el.peak]);
            peak = std::max(peak, az_pw[az.peak]);

            ev.metrics.sll_db = sidelobe_level_2d(ev.pattern).sll_db;
            ev.metrics.sll_el_db = el.sll_db;
            ev.metrics.hpbw_el_deg = el.right_3db - el.left_3db;
            ev.metrics.hpbw_az_deg = az.right_3db - az.left_3db;
            ev.metrics.peak_angle_deg = theta_pk;
            ev.metrics.directivity_dbi = directivity_dbi(peak, power[b]);
            out.push_back(std::move(ev));
        }
        return out;
    }

    std::vector<SweepRow> frequency_sweep(const SectorAssembly &assembly, const SectorAssembly &reference,
                                          const FrequencyPlan &plan, const ElementPattern &element,
                                          const EvaluationSpec &spec)
    {
        plan.validate();
        if (assembly.beam_count() != reference.beam_count() ||
            std::abs(assembly.facing_azimuth_deg - reference.facing_azimuth_deg) > 1e-9)
            throw std::invalid_argument("frequency_sweep: assemblies do not share sector and beam plan");
        for (int b = 0; b < assembly.beam_count(); ++b)
            if (std::abs(assembly.beam_theta_deg[b] - reference.beam_theta_deg[b]) > 1e-9)
                throw std::invalid_argument("frequency_sweep: assemblies do not share the beam plan");

        std::vector<SweepRow> rows;
        for (double f : plan.frequencies_hz)
        {
            const auto act = evaluate_assembly(assembly, f, element, spec);
            const auto ref = evaluate_assembly(reference, f, element, spec);
            for (size_t b = 0; b < act.size(); ++b)
            {
                SweepRow row;
                row.beam = act[b].beam + 1;
                row.frequency_hz = f;
                row.chi = chi_2d(peak_normalized(ref[b].pattern), peak_normalized(act[b].pattern));
                row.metrics = act[b].metrics;
                row.metrics.chi = row.chi;
                rows.push_back(row);
            }
        }
        return rows;
    }

    ElementPattern parse_element_pattern(std::istream &in, const std::string &name)
    {
        std::string line;
        int line_no = 0;
        auto fail = [&](const std::string &msg, int at) -> ParseError
        { return ParseError(name + ":" + std::to_string(at) + ": " + msg, at); };

        // header, skipping comments
        bool have_header = false;
        while (std::getline(in, line))
        {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty() || line[0] == '#')
                continue;
            std::string h;
            for (char ch : line)
                if (!std::isspace(static_cast<unsigned char>(ch)))
                    h.push_back(ch);
            if (h != "theta_deg,phi_deg,mag_db,phase_deg")
                throw fail("expected header theta_deg,phi_deg,mag_db,phase_deg", line_no);
            have_header = true;
            break;
        }
        if (!have_header)
            throw fail("missing header", line_no);

        std::vector<double> theta, phi;
        std::vector<cdouble> values;
        size_t col = 0;         // position within the current theta row
        bool first_row = true;
        int row_start_line = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty() || line[0] == '#')
                continue;
            double f[4];
            std::stringstream ss(line);
            std::string tok;
            int nf = 0;
            while (std::getline(ss, tok, ','))
            {
                if (nf >= 4)
                    throw fail("expected 4 fields", line_no);
                try
                {
                    size_t used = 0;
                    f[nf] = std::stod(tok, &used);
                    while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used])))
                        ++used;
                    if (used != tok.size())
                        throw std::invalid_argument(tok);
                }
                catch (const std::exception &)
                {
                    throw fail("malformed number '" + tok + "'", line_no);
                }
                ++nf;
            }
            if (nf != 4)
                throw fail("expected 4 fields", line_no);
            if (!std::isfinite(f[0]) || !std::isfinite(f[1]) || !std::isfinite(f[2]) || !std::isfinite(f[3]))
                throw fail("non-finite value", line_no);

            const bool new_row = theta.empty() || f[0] != theta.back();
            if (new_row)
            {
                if (!theta.empty())
                {
                    if (first_row)
                        first_row = false;
                    else if (col != phi.size())
                        throw fail("incomplete grid row for theta " + std::to_string(theta.back()) +
                                       " (started at line " + std::to_string(row_start_line) + ")",
                                   line_no);
                    if (!(f[0] > theta.back()))
                        throw FormatError(name + ":" + std::to_string(line_no) + ": theta rows must increase");
                }
                theta.push_back(f[0]);
                col = 0;
                row_start_line = line_no;
            }
            if (first_row)
            {
                if (!phi.empty() && !(f[1] > phi.back()))
                    throw FormatError(name + ":" + std::to_string(line_no) + ": phi must increase within a row");
                phi.push_back(f[1]);
            }
            else
            {
                if (col >= phi.size())
                    throw fail("grid row longer than the first row", line_no);
                if (std::abs(f[1] - phi[col]) > 1e-9)
                {
                    if (f[1] > phi[col])
                        throw fail("missing grid point at phi " + std::to_string(phi[col]), line_no);
                    throw FormatError(name + ":" + std::to_string(line_no) + ": phi axis differs between rows");
                }
            }
            ++col;
            values.push_back(std::polar(std::pow(10.0, f[2] / 20.0), deg2rad(f[3])));
        }
        if (theta.empty())
            throw fail("no data rows", line_no);
        if (!first_row && col != phi.size())
            throw fail("incomplete final grid row", line_no);
        if (theta.size() < 2 || phi.size() < 2)
            throw FormatError(name + ": grid needs at least 2 samples per axis");
        return ElementPattern::tabulated(std::move(theta), std::move(phi), std::move(values));
    }

    ElementPattern load_element_pattern(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open element pattern file " + path);
        return parse_element_pattern(in, path);
    }
}
