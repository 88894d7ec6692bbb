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

#include "cpa/config.hpp"

#include "cpa/common.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

using nlohmann::ordered_json;

namespace cpa
{
    namespace
    {
        // Reads one JSON object, remembering which keys were consumed so that
        // leftovers can be reported as unknown
        class Block
        {
        public:
            Block(const ordered_json &node, std::string path) : node_(node), path_(std::move(path))
            {
                if (!node_.is_object())
                    throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
            }

            std::string at(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

            bool has(const std::string &key)
            {
                seen_.insert(key);
                return node_.contains(key) && !node_.at(key).is_null();
            }

            template <typename T>
            void get(const std::string &key, T &out)
            {
                if (!has(key))
                    return;
                out = convert<T>(node_.at(key), at(key));
            }

            template <typename T>
            void get(const std::string &key, std::optional<T> &out)
            {
                seen_.insert(key);
                if (!node_.contains(key))
                    return;
                if (node_.at(key).is_null())
                    out.reset();
                else
                    out = convert<T>(node_.at(key), at(key));
            }

            template <typename T>
            void get_list(const std::string &key, std::vector<T> &out)
            {
                if (!has(key))
                    return;
                const auto &v = node_.at(key);
                if (!v.is_array())
                    throw ConfigError(at(key), "expected an array");
                out.clear();
                for (size_t i = 0; i < v.size(); ++i)
                    out.push_back(convert<T>(v[i], at(key) + "[" + std::to_string(i) + "]"));
            }

            Block child(const std::string &key)
            {
                seen_.insert(key);
                return Block(node_.at(key), at(key));
            }

            void finish() const
            {
                for (const auto &item : node_.items())
                    if (!seen_.count(item.key()))
                        throw ConfigError(at(item.key()), "unknown field");
            }

        private:
            template <typename T>
            static T convert(const ordered_json &v, const std::string &path)
            {
                if constexpr (std::is_same_v<T, bool>)
                {
                    if (!v.is_boolean())
                        throw ConfigError(path, "expected a boolean");
                    return v.get<bool>();
                }
                else if constexpr (std::is_integral_v<T>)
                {
                    if (!v.is_number_integer())
                        throw ConfigError(path, "expected an integer");
                    return v.get<T>();
                }
                else if constexpr (std::is_floating_point_v<T>)
                {
                    if (!v.is_number())
                        throw ConfigError(path, "expected a number");
                    return v.get<T>();
                }
                else
                {
                    if (!v.is_string())
                        throw ConfigError(path, "expected a string");
                    return v.get<std::string>();
                }
            }

            const ordered_json &node_;
            std::string path_;
            std::set<std::string> seen_;
        };

        void read_taper(Block b, TaperBlock &t)
        {
            b.get("sll_db", t.sll_db);
            b.get("n_bar", t.n_bar);
            b.finish();
        }

        const char *sampling_name(SampleSpacing s)
        {
            return s == SampleSpacing::uniform_theta ? "uniform_theta" : "uniform_u";
        }

        void require(bool ok, const std::string &path, const std::string &message)
        {
            if (!ok)
                throw ConfigError(path, message);
        }

        ordered_json taper_json(const TaperBlock &t)
        {
            ordered_json j;
            j["sll_db"] = t.sll_db;
            j["n_bar"] = t.n_bar;
            return j;
        }
    }

    ConeGeometry GeometryBlock::make() const
    {
        return ConeGeometry::make(n_planks, d_c_wavelengths, plank_length_wavelengths, theta_s_deg,
                                  minor_radius_wavelengths);
    }

    std::vector<SweepItem> SweepBlock::items(const SolverConfig &base) const
    {
        std::vector<SweepItem> out;
        for (int q_ : q)
            for (int k : k_samples)
                for (double s : sigma)
                    for (double b1 : beta1)
                        for (double b2 : beta2)
                        {
                            SweepItem it{q_, base};
                            it.config.k_samples = k;
                            it.config.sigma = s;
                            it.config.beta1 = b1;
                            it.config.beta2 = b2;
                            out.push_back(it);
                        }
        return out;
    }

    EvaluationSpec EvaluationBlock::spec() const
    {
        EvaluationSpec s;
        s.grid = {grid_nv, grid_nw};
        s.cut_step_deg = cut_step_deg;
        s.sphere_step_deg = sphere_step_deg;
        return s;
    }

    void RunConfig::validate() const
    {
        const auto &g = geometry;
        require(g.n_planks >= 3, "geometry.n_planks", "must be at least 3");
        require(g.d_c_wavelengths > 0, "geometry.d_c_wavelengths", "must be positive");
        require(g.plank_length_wavelengths > 0, "geometry.plank_length_wavelengths", "must be positive");
        require(g.theta_s_deg > 0 && g.theta_s_deg < 90, "geometry.theta_s_deg", "must lie in (0, 90)");
        require(!g.minor_radius_wavelengths || *g.minor_radius_wavelengths > 0, "geometry.minor_radius_wavelengths",
                "must be positive");

        const auto &r = reference;
        require(r.element_count >= 2, "reference.element_count", "must be at least 2");
        require(r.spacing_wavelengths > 0, "reference.spacing_wavelengths", "must be positive");
        require((r.element_count - 1) * r.spacing_wavelengths <= g.plank_length_wavelengths + 1e-12,
                "reference.spacing_wavelengths", "reference aperture exceeds the plank length");
        require(r.taper.sll_db < 0, "reference.taper.sll_db", "must be negative");
        require(r.taper.n_bar >= 2 && r.taper.n_bar <= r.element_count, "reference.taper.n_bar",
                "must lie in [2, element_count]");
        require(r.plan_cut_step_deg > 0 && r.plan_cut_step_deg <= 1, "reference.plan_cut_step_deg",
                "must lie in (0, 1]");
        require(r.chi_samples >= 3, "reference.chi_samples", "must be at least 3");

        require(beams.count >= 1, "beams.count", "must be at least 1");
        require(beams.start_left_edge_deg > 0 && beams.start_left_edge_deg < 180, "beams.start_left_edge_deg",
                "must lie in (0, 180)");

        const auto &s = solver.config;
        require(solver.q >= 2, "solver.q", "must be at least 2");
        require(s.k_samples >= 1, "solver.k_samples", "must be at least 1");
        require(s.sigma > 0, "solver.sigma", "must be positive");
        require(s.beta1 > 0, "solver.beta1", "must be positive");
        require(s.beta2 > 0, "solver.beta2", "must be positive");
        require(s.tol >= 0, "solver.tol", "must be nonnegative");
        require(s.max_iter >= 1, "solver.max_iter", "must be positive");
        require(s.prune_threshold >= 0, "solver.prune_threshold", "must be nonnegative");
        require(s.merge_distance >= 0, "solver.merge_distance_wavelengths", "must be nonnegative");

        require(!sweep.q.empty(), "sweep.q", "must not be empty");
        require(!sweep.k_samples.empty(), "sweep.k_samples", "must not be empty");
        require(!sweep.sigma.empty(), "sweep.sigma", "must not be empty");
        require(!sweep.beta1.empty(), "sweep.beta1", "must not be empty");
        require(!sweep.beta2.empty(), "sweep.beta2", "must not be empty");
        for (int q : sweep.q)
            require(q >= 2, "sweep.q", "entries must be at least 2");
        for (int k : sweep.k_samples)
            require(k >= 1, "sweep.k_samples", "entries must be positive");
        for (double x : sweep.sigma)
            require(x > 0, "sweep.sigma", "entries must be positive");
        for (double x : sweep.beta1)
            require(x > 0, "sweep.beta1", "entries must be positive");
        for (double x : sweep.beta2)
            require(x > 0, "sweep.beta2", "entries must be positive");
        require(sweep.workers >= 0, "sweep.workers", "must be nonnegative");

        require(sector.width_deg > 0 && sector.width_deg <= 360, "sector.width_deg", "must lie in (0, 360]");
        require(sector.index >= 0, "sector.index", "must be nonnegative");
        if (sector.azimuth_taper)
        {
            require(sector.azimuth_taper->sll_db < 0, "sector.azimuth_taper.sll_db", "must be negative");
            require(sector.azimuth_taper->n_bar >= 2, "sector.azimuth_taper.n_bar", "must be at least 2");
        }

        require(frequency.f0_hz > 0, "frequency.f0_hz", "must be positive");
        require(!frequency.evaluation_hz.empty(), "frequency.evaluation_hz", "must not be empty");
        for (double f : frequency.evaluation_hz)
            require(f > 0, "frequency.evaluation_hz", "entries must be positive");

        const auto &e = evaluation;
        require(e.grid_nv >= 3 && e.grid_nw >= 3, "evaluation.grid_nv", "grid must be at least 3 x 3");
        require(e.cut_step_deg > 0 && e.cut_step_deg <= 1, "evaluation.cut_step_deg", "must lie in (0, 1]");
        require(e.sphere_step_deg > 0 && e.sphere_step_deg <= 10, "evaluation.sphere_step_deg",
                "must lie in (0, 10]");
        for (int b : e.beams)
            require(b >= 1 && b <= beams.count, "evaluation.beams", "entries must lie in [1, beams.count]");
        require(e.compare == "fp" || e.compare == "self", "evaluation.compare", "must be \"fp\" or \"self\"");

        require(!output.directory.empty(), "output.directory", "must not be empty");
    }

    RunConfig parse_config(const std::string &json_text)
    {
        ordered_json doc;
        try
        {
            doc = ordered_json::parse(json_text);
        }
        catch (const ordered_json::parse_error &e)
        {
            throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
        }

        RunConfig c;
        Block root(doc, "");
        if (root.has("geometry"))
        {
            Block b = root.child("geometry");
            b.get("n_planks", c.geometry.n_planks);
            b.get("d_c_wavelengths", c.geometry.d_c_wavelengths);
            b.get("plank_length_wavelengths", c.geometry.plank_length_wavelengths);
            b.get("theta_s_deg", c.geometry.theta_s_deg);
            b.get("minor_radius_wavelengths", c.geometry.minor_radius_wavelengths);
            b.finish();
        }
        if (root.has("reference"))
        {
            Block b = root.child("reference");
            b.get("element_count", c.reference.element_count);
            b.get("spacing_wavelengths", c.reference.spacing_wavelengths);
            if (!b.has("taper"))
                throw ConfigError(b.at("taper"), "required field is missing");
            read_taper(b.child("taper"), c.reference.taper);
            b.get("plan_cut_step_deg", c.reference.plan_cut_step_deg);
            b.get("chi_samples", c.reference.chi_samples);
            b.finish();
        }
        if (root.has("beams"))
        {
            Block b = root.child("beams");
            b.get("count", c.beams.count);
            b.get("start_left_edge_deg", c.beams.start_left_edge_deg);
            b.finish();
        }
        if (root.has("solver"))
        {
            Block b = root.child("solver");
            auto &s = c.solver.config;
            b.get("q", c.solver.q);
            b.get("k_samples", s.k_samples);
            b.get("sigma", s.sigma);
            b.get("beta1", s.beta1);
            b.get("beta2", s.beta2);
            b.get("tol", s.tol);
            b.get("max_iter", s.max_iter);
            b.get("prune_threshold", s.prune_threshold);
            b.get("merge_distance_wavelengths", s.merge_distance);
            std::string sampling = sampling_name(s.sampling);
            b.get("sampling", sampling);
            if (sampling == "uniform_theta")
                s.sampling = SampleSpacing::uniform_theta;
            else if (sampling == "uniform_u")
                s.sampling = SampleSpacing::uniform_u;
            else
                throw ConfigError(b.at("sampling"), "must be \"uniform_theta\" or \"uniform_u\"");
            b.finish();
        }
        if (root.has("sweep"))
        {
            Block b = root.child("sweep");
            b.get_list("q", c.sweep.q);
            b.get_list("k_samples", c.sweep.k_samples);
            b.get_list("sigma", c.sweep.sigma);
            b.get_list("beta1", c.sweep.beta1);
            b.get_list("beta2", c.sweep.beta2);
            b.get("workers", c.sweep.workers);
            b.finish();
        }
        if (root.has("sector"))
        {
            Block b = root.child("sector");
            b.get("width_deg", c.sector.width_deg);
            b.get("index", c.sector.index);
            if (b.has("azimuth_taper"))
            {
                TaperBlock t;
                t.n_bar = 4;
                read_taper(b.child("azimuth_taper"), t);
                c.sector.azimuth_taper = t;
            }
            b.finish();
        }
        if (root.has("frequency"))
        {
            Block b = root.child("frequency");
            b.get("f0_hz", c.frequency.f0_hz);
            b.get_list("evaluation_hz", c.frequency.evaluation_hz);
            b.finish();
        }
        if (root.has("evaluation"))
        {
            Block b = root.child("evaluation");
            b.get("grid_nv", c.evaluation.grid_nv);
            b.get("grid_nw", c.evaluation.grid_nw);
            b.get("cut_step_deg", c.evaluation.cut_step_deg);
            b.get("sphere_step_deg", c.evaluation.sphere_step_deg);
            b.get_list("beams", c.evaluation.beams);
            b.get("element_pattern", c.evaluation.element_pattern);
            b.get("compare", c.evaluation.compare);
            b.finish();
        }
        if (root.has("output"))
        {
            Block b = root.child("output");
            b.get("directory", c.output.directory);
            b.finish();
        }
        root.finish();
        c.validate();
        return c;
    }

    RunConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("--config", "cannot open " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str());
    }

    std::string dump_config(const RunConfig &c)
    {
        ordered_json j;
        auto &g = j["geometry"];
        g["n_planks"] = c.geometry.n_planks;
        g["d_c_wavelengths"] = c.geometry.d_c_wavelengths;
        g["plank_length_wavelengths"] = c.geometry.plank_length_wavelengths;
        g["theta_s_deg"] = c.geometry.theta_s_deg;
        g["minor_radius_wavelengths"] =
            c.geometry.minor_radius_wavelengths ? ordered_json(*c.geometry.minor_radius_wavelengths) : ordered_json();

        auto &r = j["reference"];
        r["element_count"] = c.reference.element_count;
        r["spacing_wavelengths"] = c.reference.spacing_wavelengths;
        r["taper"] = taper_json(c.reference.taper);
        r["plan_cut_step_deg"] = c.reference.plan_cut_step_deg;
        r["chi_samples"] = c.reference.chi_samples;

        j["beams"]["count"] = c.beams.count;
        j["beams"]["start_left_edge_deg"] = c.beams.start_left_edge_deg;

        auto &s = j["solver"];
        const auto &sc = c.solver.config;
        s["q"] = c.solver.q;
        s["k_samples"] = sc.k_samples;
        s["sigma"] = sc.sigma;
        s["beta1"] = sc.beta1;
        s["beta2"] = sc.beta2;
        s["tol"] = sc.tol;
        s["max_iter"] = sc.max_iter;
        s["prune_threshold"] = sc.prune_threshold;
        s["merge_distance_wavelengths"] = sc.merge_distance;
        s["sampling"] = sampling_name(sc.sampling);

        auto &w = j["sweep"];
        w["q"] = c.sweep.q;
        w["k_samples"] = c.sweep.k_samples;
        w["sigma"] = c.sweep.sigma;
        w["beta1"] = c.sweep.beta1;
        w["beta2"] = c.sweep.beta2;
        w["workers"] = c.sweep.workers;

        auto &sec = j["sector"];
        sec["width_deg"] = c.sector.width_deg;
        sec["index"] = c.sector.index;
        sec["azimuth_taper"] = c.sector.azimuth_taper ? taper_json(*c.sector.azimuth_taper) : ordered_json();

        j["frequency"]["f0_hz"] = c.frequency.f0_hz;
        j["frequency"]["evaluation_hz"] = c.frequency.evaluation_hz;

        auto &e = j["evaluation"];
        e["grid_nv"] = c.evaluation.grid_nv;
        e["grid_nw"] = c.evaluation.grid_nw;
        e["cut_step_deg"] = c.evaluation.cut_step_deg;
        e["sphere_step_deg"] = c.evaluation.sphere_step_deg;
        e["beams"] = c.evaluation.beams;
        e["element_pattern"] = c.evaluation.element_pattern;
        e["compare"] = c.evaluation.compare;

        j["output"]["directory"] = c.output.directory;
        return j.dump(2) + "\n";
    }
}
