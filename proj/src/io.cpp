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

#include "cpa/io.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace cpa::io
{
    namespace
    {
        json load_json(const std::string &path)
        {
            const std::string text = read_text(path);
            try
            {
                return json::parse(text);
            }
            catch (const json::parse_error &e)
            {
                throw ParseError(path + ": " + e.what(), 0);
            }
        }

        void save_json(const std::string &path, const json &doc)
        {
            write_text(path, doc.dump(2) + "\n");
        }

        template <typename T>
        T field(const json &doc, const char *key, const std::string &path)
        {
            if (!doc.contains(key))
                throw FormatError(path + ": missing field '" + key + "'");
            try
            {
                return doc.at(key).get<T>();
            }
            catch (const json::exception &)
            {
                throw FormatError(path + ": field '" + std::string(key) + "' has the wrong type");
            }
        }

        double or_nan(const std::optional<double> &x)
        {
            return x ? *x : std::numeric_limits<double>::quiet_NaN();
        }

        std::optional<double> from_nan(double x)
        {
            return std::isnan(x) ? std::nullopt : std::optional<double>(x);
        }

        double power_db(double p)
        {
            return 10.0 * std::log10(std::max(p, 1e-300));
        }

        json plan_json(const BeamPlan &plan, const std::vector<double> &measured)
        {
            json beams = json::array();
            for (int b = 0; b < plan.count(); ++b)
            {
                json e = {{"beam", b + 1},
                          {"steer_deg", plan.steer_deg[b]},
                          {"left_edge_deg", plan.left_edge_deg[b]},
                          {"right_edge_deg", plan.right_edge_deg[b]},
                          {"hpbw_deg", plan.hpbw_deg[b]}};
                if (b < static_cast<int>(measured.size()))
                    e["hpbw_measured_deg"] = measured[b];
                beams.push_back(e);
            }
            return {{"count", plan.count()},
                    {"delta_u", plan.delta_u},
                    {"coverage_deg", plan.coverage_deg},
                    {"beams", beams}};
        }

        BeamPlan plan_from_json(const json &doc, const std::string &path)
        {
            BeamPlan plan;
            plan.delta_u = field<double>(doc, "delta_u", path);
            plan.coverage_deg = field<double>(doc, "coverage_deg", path);
            for (const auto &e : field<json>(doc, "beams", path))
            {
                plan.steer_deg.push_back(field<double>(e, "steer_deg", path));
                plan.left_edge_deg.push_back(field<double>(e, "left_edge_deg", path));
                plan.right_edge_deg.push_back(field<double>(e, "right_edge_deg", path));
                plan.hpbw_deg.push_back(field<double>(e, "hpbw_deg", path));
            }
            if (plan.count() != field<int>(doc, "count", path))
                throw FormatError(path + ": beam count does not match the beam list");
            return plan;
        }

        json geometry_json(const ConeGeometry &g)
        {
            return {{"n_planks", g.n_planks},
                    {"theta_s_deg", g.theta_s_deg},
                    {"d_c_wavelengths", g.d_c},
                    {"plank_length_wavelengths", g.plank_length},
                    {"r_wavelengths", g.r},
                    {"R_wavelengths", g.R},
                    {"psi_c_rad", g.psi_c}};
        }
    }

    // -------------------------------------------------------------------- text

    void write_text(const std::string &path, const std::string &text)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw IoError("cannot open " + path + " for writing");
        out << text;
        if (!out)
            throw IoError("failed writing " + path);
    }

    std::string read_text(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot open " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::string format_number(double x)
    {
        if (std::isnan(x))
            return "nan";
        if (std::isinf(x))
            return x > 0 ? "inf" : "-inf";
        return fmt::format("{}", x);
    }

    // --------------------------------------------------------------------- CSV

    int CsvTable::column(const std::string &name) const
    {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name)
                return static_cast<int>(i);
        throw FormatError("CSV column '" + name + "' not found");
    }

    std::vector<double> CsvTable::values(const std::string &name) const
    {
        const int c = column(name);
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto &r : rows)
            out.push_back(r[c]);
        return out;
    }

    void write_csv(const std::string &path, const CsvTable &table)
    {
        std::string text;
        for (const auto &[k, v] : table.meta)
            text += "# " + k + "=" + v + "\n";
        for (size_t i = 0; i < table.header.size(); ++i)
            text += (i ? "," : "") + table.header[i];
        text += "\n";
        for (const auto &row : table.rows)
        {
            for (size_t i = 0; i < row.size(); ++i)
            {
                if (i)
                    text += ',';
                text += format_number(row[i]);
            }
            text += '\n';
        }
        write_text(path, text);
    }

    CsvTable read_csv(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open " + path);
        CsvTable t;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty())
                continue;
            if (line[0] == '#')
            {
                const auto eq = line.find('=');
                if (eq != std::string::npos)
                {
                    std::string key = line.substr(1, eq - 1);
                    key.erase(0, key.find_first_not_of(' '));
                    t.meta.emplace_back(key, line.substr(eq + 1));
                }
                continue;
            }
            std::stringstream ss(line);
            std::string tok;
            if (t.header.empty())
            {
                while (std::getline(ss, tok, ','))
                    t.header.push_back(tok);
                continue;
            }
            std::vector<double> row;
            while (std::getline(ss, tok, ','))
            {
                try
                {
                    size_t used = 0;
                    row.push_back(std::stod(tok, &used));
                    if (used != tok.size())
                        throw std::invalid_argument(tok);
                }
                catch (const std::exception &)
                {
                    throw ParseError(path + ":" + std::to_string(line_no) + ": malformed number '" + tok + "'",
                                     line_no);
                }
            }
            if (row.size() != t.header.size())
                throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                                     std::to_string(t.header.size()) + " fields",
                                 line_no);
            t.rows.push_back(std::move(row));
        }
        if (t.header.empty())
            throw ParseError(path + ": missing header", line_no);
        return t;
    }

    namespace
    {
        std::string meta_value(const CsvTable &t, const std::string &key, const std::string &path)
        {
            for (const auto &[k, v] : t.meta)
                if (k == key)
                    return v;
            throw FormatError(path + ": missing metadata '" + key + "'");
        }
    }

    // -------------------------------------------------------------- documents

    void write_beam_plan(const std::string &path, const BeamPlan &plan, const std::vector<double> &hpbw_measured)
    {
        save_json(path, plan_json(plan, hpbw_measured));
    }

    BeamPlan read_beam_plan(const std::string &path)
    {
        return plan_from_json(load_json(path), path);
    }

    void write_taper(const std::string &path, const TaperWeights &taper)
    {
        save_json(path, {{"kind", "taylor"},
                         {"count", taper.count()},
                         {"sll_db", taper.sll_db},
                         {"n_bar", taper.n_bar},
                         {"amplitudes", taper.amplitudes}});
    }

    TaperWeights read_taper(const std::string &path)
    {
        const json doc = load_json(path);
        TaperWeights t;
        t.sll_db = field<double>(doc, "sll_db", path);
        t.n_bar = field<int>(doc, "n_bar", path);
        t.amplitudes = field<std::vector<double>>(doc, "amplitudes", path);
        if (t.count() != field<int>(doc, "count", path))
            throw FormatError(path + ": amplitude count mismatch");
        return t;
    }

    void write_layout(const std::string &path, const PlankLayout &layout, double f0_hz, double origin_offset)
    {
        const double lambda0 = wavelength_m(f0_hz);
        std::vector<double> meters;
        for (double p : layout.positions)
            meters.push_back(p * lambda0);
        save_json(path, {{"count", layout.count()},
                         {"f0_hz", f0_hz},
                         {"origin_offset_wavelengths", origin_offset},
                         {"aperture_wavelengths", layout.length()},
                         {"min_gap_wavelengths", layout.count() > 1 ? layout.min_gap() : 0.0},
                         {"max_gap_wavelengths", layout.max_gap()},
                         {"positions_wavelengths", layout.positions},
                         {"positions_m", meters}});
    }

    PlankLayout read_layout(const std::string &path)
    {
        const json doc = load_json(path);
        PlankLayout l;
        l.positions = field<std::vector<double>>(doc, "positions_wavelengths", path);
        if (l.count() != field<int>(doc, "count", path))
            throw FormatError(path + ": position count mismatch");
        try
        {
            l.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw FormatError(path + ": " + e.what());
        }
        return l;
    }

    void write_excitations(const std::string &path, const ExcitationSet &ex, const PlankLayout &layout,
                           double f0_hz)
    {
        if (layout.count() != ex.size())
            throw std::invalid_argument("write_excitations: layout and support sizes differ");
        const double lambda0 = wavelength_m(f0_hz);
        std::vector<double> meters;
        for (double p : layout.positions)
            meters.push_back(p * lambda0);
        json beams = json::array();
        for (int b = 0; b < ex.beam_count(); ++b)
        {
            std::vector<double> amp, ph, re, im;
            for (int m = 0; m < ex.size(); ++m)
            {
                amp.push_back(ex.amplitude(b, m));
                ph.push_back(ex.phase_deg(b, m));
                re.push_back(ex.beams[b][m].real());
                im.push_back(ex.beams[b][m].imag());
            }
            beams.push_back({{"beam", b + 1}, {"amplitude", amp}, {"phase_deg", ph}, {"re", re}, {"im", im}});
        }
        save_json(path, {{"count", ex.size()},
                         {"beam_count", ex.beam_count()},
                         {"f0_hz", f0_hz},
                         {"support", ex.support},
                         {"lattice_positions_wavelengths", ex.positions},
                         {"positions_wavelengths", layout.positions},
                         {"positions_m", meters},
                         {"beams", beams}});
    }

    ExcitationSet read_excitations(const std::string &path)
    {
        const json doc = load_json(path);
        ExcitationSet ex;
        ex.support = field<std::vector<int>>(doc, "support", path);
        ex.positions = field<std::vector<double>>(doc, "lattice_positions_wavelengths", path);
        for (const auto &b : field<json>(doc, "beams", path))
        {
            const auto re = field<std::vector<double>>(b, "re", path);
            const auto im = field<std::vector<double>>(b, "im", path);
            if (re.size() != ex.support.size() || im.size() != ex.support.size())
                throw FormatError(path + ": beam weight count does not match the support");
            std::vector<cdouble> w;
            for (size_t m = 0; m < re.size(); ++m)
                w.emplace_back(re[m], im[m]);
            ex.beams.push_back(std::move(w));
        }
        if (ex.size() != field<int>(doc, "count", path) || ex.beam_count() != field<int>(doc, "beam_count", path))
            throw FormatError(path + ": excitation counts are inconsistent");
        return ex;
    }

    void write_diagnostics(const std::string &path, const SolverDiagnostics &d, int merge_rounds,
                           int first_pass_size)
    {
        std::vector<json> hyper;
        for (Eigen::Index i = 0; i < d.hyperparameters.size(); ++i)
            if (std::isfinite(d.hyperparameters(i)))
                hyper.push_back({{"index", i}, {"alpha", d.hyperparameters(i)}});
        save_json(path, {{"iterations", d.iterations},
                         {"converged", d.converged},
                         {"log_evidence", d.log_evidence},
                         {"monotone_violations", d.monotone_violations},
                         {"adds", d.adds},
                         {"deletes", d.deletes},
                         {"reestimates", d.reestimates},
                         {"merge_rounds", merge_rounds},
                         {"first_pass_size", first_pass_size},
                         {"residual_norms", d.residual_norms},
                         {"finite_hyperparameters", hyper},
                         {"evidence_trace", d.evidence_trace}});
    }

    void write_geometry(const std::string &path, const ConeGeometry &geom, const PlankLayout &layout, double f0_hz)
    {
        const double lambda0 = wavelength_m(f0_hz);
        json elements = json::array();
        for (int n = 1; n <= geom.n_planks; ++n)
        {
            const auto pos = plank_element_positions(geom, layout.positions, n);
            for (size_t m = 0; m < pos.size(); ++m)
            {
                const ElementPosition p = pos[m].scaled(lambda0);
                elements.push_back({{"plank", n}, {"element", m}, {"x_m", p.x}, {"y_m", p.y}, {"z_m", p.z}});
            }
        }
        json doc = geometry_json(geom);
        doc["f0_hz"] = f0_hz;
        doc["elements_per_plank"] = layout.count();
        doc["element_count"] = elements.size();
        doc["elements"] = elements;
        save_json(path, doc);
    }

    std::vector<GeometryElement> read_geometry(const std::string &path)
    {
        const json doc = load_json(path);
        std::vector<GeometryElement> out;
        for (const auto &e : field<json>(doc, "elements", path))
            out.push_back({field<int>(e, "plank", path), field<int>(e, "element", path), field<double>(e, "x_m", path),
                           field<double>(e, "y_m", path), field<double>(e, "z_m", path)});
        if (out.size() != field<size_t>(doc, "element_count", path))
            throw FormatError(path + ": element count mismatch");
        return out;
    }

    void write_assembly(const std::string &manifest_path, const std::string &table_path, const ConeGeometry &geom,
                        const SectorConfig &sector, const BeamPlan &plan, const SectorAssembly &assembly)
    {
        json beams = json::array();
        for (int b = 0; b < assembly.beam_count(); ++b)
            beams.push_back({{"beam", b + 1}, {"theta_deg", assembly.beam_theta_deg[b]}, {"phi_deg", assembly.beam_phi_deg[b]}});
        json taper = sector.azimuth_taper ? json(sector.azimuth_taper->amplitudes) : json(nullptr);
        std::string table_name = table_path.substr(table_path.find_last_of('/') + 1);
        save_json(manifest_path, {{"geometry", geometry_json(geom)},
                                  {"sector",
                                   {{"width_deg", sector.width_deg},
                                    {"sector_count", sector.sector_count},
                                    {"planks_per_sector", sector.planks_per_sector},
                                    {"index", assembly.sector_index},
                                    {"azimuth_deg", assembly.facing_azimuth_deg},
                                    {"azimuth_taper", taper}}},
                                  {"beam_plan", plan_json(plan, {})},
                                  {"beams_global", beams},
                                  {"f0_hz", assembly.f0_hz},
                                  {"element_count", assembly.elements.size()},
                                  {"element_table", table_name}});

        CsvTable t;
        t.header = {"plank", "element", "x_m", "y_m", "z_m", "x_lambda", "y_lambda", "z_lambda", "azimuth_rad"};
        for (int b = 1; b <= assembly.beam_count(); ++b)
        {
            t.header.push_back(fmt::format("w{}_re", b));
            t.header.push_back(fmt::format("w{}_im", b));
        }
        for (const auto &e : assembly.elements)
        {
            std::vector<double> row = {static_cast<double>(e.plank), static_cast<double>(e.element),
                                       e.position_m.x, e.position_m.y, e.position_m.z,
                                       e.position_lambda.x, e.position_lambda.y, e.position_lambda.z, e.azimuth_rad};
            for (const auto &w : e.weights)
            {
                row.push_back(w.real());
                row.push_back(w.imag());
            }
            t.rows.push_back(std::move(row));
        }
        write_csv(table_path, t);
    }

    SectorAssembly read_assembly(const std::string &manifest_path, const std::string &table_path)
    {
        const json doc = load_json(manifest_path);
        SectorAssembly a;
        const json sector = field<json>(doc, "sector", manifest_path);
        a.sector_index = field<int>(sector, "index", manifest_path);
        a.facing_azimuth_deg = field<double>(sector, "azimuth_deg", manifest_path);
        a.f0_hz = field<double>(doc, "f0_hz", manifest_path);
        for (const auto &b : field<json>(doc, "beams_global", manifest_path))
        {
            a.beam_theta_deg.push_back(field<double>(b, "theta_deg", manifest_path));
            a.beam_phi_deg.push_back(field<double>(b, "phi_deg", manifest_path));
        }
        const CsvTable t = read_csv(table_path);
        const int B = a.beam_count();
        for (const auto &r : t.rows)
        {
            if (static_cast<int>(r.size()) != 9 + 2 * B)
                throw FormatError(table_path + ": weight columns do not match the beam count");
            AssembledElement e;
            e.plank = static_cast<int>(r[0]);
            e.element = static_cast<int>(r[1]);
            e.position_m = {r[2], r[3], r[4]};
            e.position_lambda = {r[5], r[6], r[7]};
            e.azimuth_rad = r[8];
            for (int b = 0; b < B; ++b)
                e.weights.emplace_back(r[9 + 2 * b], r[10 + 2 * b]);
            a.elements.push_back(std::move(e));
        }
        if (a.elements.size() != field<size_t>(doc, "element_count", manifest_path))
            throw FormatError(manifest_path + ": element count does not match the table");
        return a;
    }

    // ------------------------------------------------------------ CSV exports

    void write_cut(const std::string &path, const PatternCut &cut, const std::string &angle_name)
    {
        CsvTable t;
        t.meta = {{"wavelength", format_number(cut.wavelength)}};
        t.header = {angle_name, "re", "im", "power_db"};
        for (size_t i = 0; i < cut.size(); ++i)
            t.rows.push_back({cut.angles_deg[i], cut.values[i].real(), cut.values[i].imag(),
                              power_db(std::norm(cut.values[i]))});
        write_csv(path, t);
    }

    PatternCut read_cut(const std::string &path)
    {
        const CsvTable t = read_csv(path);
        if (t.header.size() != 4)
            throw FormatError(path + ": expected 4 columns");
        PatternCut c;
        c.wavelength = std::stod(meta_value(t, "wavelength", path));
        for (const auto &r : t.rows)
        {
            c.angles_deg.push_back(r[0]);
            c.values.emplace_back(r[1], r[2]);
        }
        return c;
    }

    void write_pattern_2d(const std::string &path, const Pattern2D &p)
    {
        CsvTable t;
        t.meta = {{"nv", std::to_string(p.nv)},
                  {"nw", std::to_string(p.nw)},
                  {"frequency_hz", format_number(p.frequency_hz)},
                  {"beam", std::to_string(p.beam + 1)},
                  {"facing_azimuth_deg", format_number(p.facing_azimuth_deg)},
                  {"wavelength_m", format_number(p.wavelength)}};
        t.header = {"iv", "iw", "v", "w", "re", "im", "power_db_norm"};
        const double pk = p.peak_power();
        for (int iw = 0; iw < p.nw; ++iw)
            for (int iv = 0; iv < p.nv; ++iv)
            {
                const size_t i = p.index(iv, iw);
                if (!p.mask[i])
                    continue;
                const cdouble v = p.values[i];
                t.rows.push_back({static_cast<double>(iv), static_cast<double>(iw), p.v[iv], p.w[iw], v.real(),
                                  v.imag(), power_db(pk > 0 ? std::norm(v) / pk : 0.0)});
            }
        write_csv(path, t);
    }

    Pattern2D read_pattern_2d(const std::string &path)
    {
        const CsvTable t = read_csv(path);
        Pattern2D p;
        p.nv = std::stoi(meta_value(t, "nv", path));
        p.nw = std::stoi(meta_value(t, "nw", path));
        p.frequency_hz = std::stod(meta_value(t, "frequency_hz", path));
        p.beam = std::stoi(meta_value(t, "beam", path)) - 1;
        p.facing_azimuth_deg = std::stod(meta_value(t, "facing_azimuth_deg", path));
        p.wavelength = std::stod(meta_value(t, "wavelength_m", path));
        p.v = linspace(-1.0, 1.0, p.nv);
        p.w = linspace(-1.0, 1.0, p.nw);
        p.values.assign(static_cast<size_t>(p.nv) * p.nw, cdouble(0.0));
        p.mask.assign(p.values.size(), 0);
        const int civ = t.column("iv"), ciw = t.column("iw"), cre = t.column("re"), cim = t.column("im");
        for (const auto &r : t.rows)
        {
            const int iv = static_cast<int>(r[civ]), iw = static_cast<int>(r[ciw]);
            if (iv < 0 || iv >= p.nv || iw < 0 || iw >= p.nw)
                throw FormatError(path + ": grid index out of range");
            p.values[p.index(iv, iw)] = cdouble(r[cre], r[cim]);
            p.mask[p.index(iv, iw)] = 1;
        }
        return p;
    }

    void write_mismatch(const std::string &path, const MismatchMap &map, int beam, double frequency_hz)
    {
        CsvTable t;
        t.meta = {{"nv", std::to_string(map.nv)},
                  {"nw", std::to_string(map.nw)},
                  {"beam", std::to_string(beam)},
                  {"frequency_hz", format_number(frequency_hz)}};
        t.header = {"v", "w", "delta"};
        for (int iw = 0; iw < map.nw; ++iw)
            for (int iv = 0; iv < map.nv; ++iv)
            {
                const double v = map.v[iv], w = map.w[iw];
                if (v * v + w * w > 1.0 + 1e-12)
                    continue;
                t.rows.push_back({v, w, map.values[static_cast<size_t>(iw) * map.nv + iv]});
            }
        write_csv(path, t);
    }

    void write_pareto(const std::string &path, const ParetoResult &result)
    {
        CsvTable t;
        t.header = {"M", "chi", "Q", "K", "sigma", "beta1", "beta2", "converged", "frontier", "ok"};
        std::vector<char> on_front(result.points.size(), 0);
        for (size_t i : result.frontier)
            on_front[i] = 1;
        for (size_t i = 0; i < result.points.size(); ++i)
        {
            const SweepPoint &p = result.points[i];
            const SolverConfig &c = p.item.config;
            t.rows.push_back({static_cast<double>(p.m), p.ok ? p.chi : std::numeric_limits<double>::quiet_NaN(),
                              static_cast<double>(p.item.q), static_cast<double>(c.k_samples), c.sigma, c.beta1,
                              c.beta2, p.converged ? 1.0 : 0.0, on_front[i] ? 1.0 : 0.0, p.ok ? 1.0 : 0.0});
        }
        write_csv(path, t);
    }

    std::vector<SweepPoint> read_pareto(const std::string &path)
    {
        const CsvTable t = read_csv(path);
        std::vector<SweepPoint> out;
        for (const auto &r : t.rows)
        {
            SweepPoint p;
            p.m = static_cast<int>(r[t.column("M")]);
            p.chi = r[t.column("chi")];
            p.item.q = static_cast<int>(r[t.column("Q")]);
            p.item.config.k_samples = static_cast<int>(r[t.column("K")]);
            p.item.config.sigma = r[t.column("sigma")];
            p.item.config.beta1 = r[t.column("beta1")];
            p.item.config.beta2 = r[t.column("beta2")];
            p.converged = r[t.column("converged")] != 0.0;
            p.ok = r[t.column("ok")] != 0.0;
            out.push_back(p);
        }
        return out;
    }

    void write_sweep(const std::string &path, const std::vector<SweepRow> &rows)
    {
        CsvTable t;
        t.header = {"beam", "frequency_hz", "chi", "sll_db", "sll_el_db", "d_dbi", "hpbw_az_deg", "hpbw_el_deg"};
        for (const auto &r : rows)
            t.rows.push_back({static_cast<double>(r.beam), r.frequency_hz, r.chi, or_nan(r.metrics.sll_db),
                              or_nan(r.metrics.sll_el_db), r.metrics.directivity_dbi, or_nan(r.metrics.hpbw_az_deg),
                              r.metrics.hpbw_el_deg});
        write_csv(path, t);
    }

    std::vector<SweepRow> read_sweep(const std::string &path)
    {
        const CsvTable t = read_csv(path);
        if (t.header.size() != 8)
            throw FormatError(path + ": expected 8 sweep columns");
        std::vector<SweepRow> out;
        for (const auto &r : t.rows)
        {
            SweepRow s;
            s.beam = static_cast<int>(r[0]);
            s.frequency_hz = r[1];
            s.chi = r[2];
            s.metrics.chi = r[2];
            s.metrics.sll_db = from_nan(r[3]);
            s.metrics.sll_el_db = from_nan(r[4]);
            s.metrics.directivity_dbi = r[5];
            s.metrics.hpbw_az_deg = from_nan(r[6]);
            s.metrics.hpbw_el_deg = r[7];
            out.push_back(s);
        }
        return out;
    }

    void write_report(const std::string &path, const std::vector<ReportRow> &rows)
    {
        CsvTable t;
        t.header = {"beam", "sll_db", "d_dbi", "hpbw_deg", "chi"};
        for (const auto &r : rows)
            t.rows.push_back({static_cast<double>(r.beam), r.sll_db, r.d_dbi, r.hpbw_deg, r.chi});
        write_csv(path, t);
    }

    std::vector<ReportRow> read_report(const std::string &path)
    {
        const CsvTable t = read_csv(path);
        if (t.header.size() != 5)
            throw FormatError(path + ": expected 5 report columns");
        std::vector<ReportRow> out;
        for (const auto &r : t.rows)
            out.push_back({static_cast<int>(r[0]), r[1], r[2], r[3], r[4]});
        return out;
    }
}
