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

#include "cli.hpp"

#include "cpa/pipeline.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>

namespace fs = std::filesystem;

namespace cpa::cli
{
    namespace
    {
        enum class Level
        {
            error = 0,
            warn = 1,
            info = 2,
            debug = 3
        };

        Level level_from_env()
        {
            const char *v = std::getenv("CPA_LOG_LEVEL");
            if (!v)
                return Level::info;
            const std::string s = v;
            if (s == "error")
                return Level::error;
            if (s == "warn")
                return Level::warn;
            if (s == "debug")
                return Level::debug;
            return Level::info;
        }

        // Console messages carry no timestamps; run.log in the output
        // directory does, so data files stay reproducible
        class Log
        {
        public:
            Log(std::ostream &err) : err_(err), level_(level_from_env()) {}

            void open(const fs::path &dir) { file_.open(dir / "run.log", std::ios::app); }

            void write(Level lv, const std::string &msg)
            {
                static const char *names[] = {"error", "warn", "info", "debug"};
                const char *tag = names[static_cast<int>(lv)];
                if (lv <= level_)
                    err_ << "[" << tag << "] " << msg << "\n";
                if (file_)
                {
                    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
                    char stamp[32];
                    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
                    file_ << stamp << " [" << tag << "] " << msg << "\n";
                }
            }

            void error(const std::string &m) { write(Level::error, m); }
            void warn(const std::string &m) { write(Level::warn, m); }
            void info(const std::string &m) { write(Level::info, m); }
            void debug(const std::string &m) { write(Level::debug, m); }

        private:
            std::ostream &err_;
            Level level_;
            std::ofstream file_;
        };

        struct Options
        {
            std::string config_path;
            bool emit_config = false;
            std::optional<std::string> out_dir;
            std::optional<double> minor_radius, sigma, beta1, beta2, sector_width, azimuth_taper;
            std::optional<int> q, k, sector_index, workers;
            std::optional<std::string> element_pattern, compare;
            std::vector<double> freqs;
            std::vector<int> beams;
            std::string layout_path, excitations_path;
            bool fp = false;
            bool sweep = false;
        };

        RunConfig resolve(const Options &o)
        {
            RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
            if (o.out_dir)
                c.output.directory = *o.out_dir;
            if (o.minor_radius)
                c.geometry.minor_radius_wavelengths = *o.minor_radius;
            if (o.sigma)
                c.solver.config.sigma = *o.sigma;
            if (o.beta1)
                c.solver.config.beta1 = *o.beta1;
            if (o.beta2)
                c.solver.config.beta2 = *o.beta2;
            if (o.q)
                c.solver.q = *o.q;
            if (o.k)
                c.solver.config.k_samples = *o.k;
            if (o.sector_width)
                c.sector.width_deg = *o.sector_width;
            if (o.sector_index)
                c.sector.index = *o.sector_index;
            if (o.azimuth_taper)
                c.sector.azimuth_taper = TaperBlock{*o.azimuth_taper, 4};
            if (o.workers)
                c.sweep.workers = *o.workers;
            if (o.element_pattern)
                c.evaluation.element_pattern = *o.element_pattern;
            if (o.compare)
                c.evaluation.compare = *o.compare;
            if (!o.freqs.empty())
                c.frequency.evaluation_hz = o.freqs;
            if (!o.beams.empty())
                c.evaluation.beams = o.beams;
            c.validate();
            return c;
        }

        class Runner
        {
        public:
            Runner(const RunConfig &c, const Options &o, std::ostream &out, Log &log)
                : c_(c), o_(o), out_(out), log_(log), dir_(c.output.directory)
            {
            }

            void reference()
            {
                const ReferenceOutputs ref = make_reference();
                const double f0 = c_.frequency.f0_hz;
                io::write_layout(file("reference_layout.json"), ref.layout, f0);
                io::write_taper(file("taper.json"), ref.taper);
                write_plan(ref);
                io::write_cut(file("reference_broadside.csv"), ref.broadside);
                for (int b = 0; b < ref.plan.count(); ++b)
                    io::write_cut(file(fmt::format("reference_beam_{}.csv", b + 1)), ref.beams[b]);

                std::vector<io::ReportRow> rows;
                const auto &m0 = ref.broadside_metrics;
                rows.push_back({0, m0.sll_db.value_or(NAN), m0.directivity_dbi, m0.hpbw_el_deg, 0.0});
                for (int b = 0; b < ref.plan.count(); ++b)
                {
                    const auto &m = ref.beam_metrics[b];
                    rows.push_back({b + 1, m.sll_db.value_or(NAN), m.directivity_dbi, m.hpbw_el_deg, 0.0});
                }
                io::write_report(file("reference_report.csv"), rows);
                out_ << fmt::format("reference: I={} SLL={:.2f} dB D={:.2f} dBi HPBW={:.3f} deg\n",
                                    ref.layout.count(), m0.sll_db.value_or(NAN), m0.directivity_dbi,
                                    m0.hpbw_el_deg);
                print_plan(ref);
            }

            void stack()
            {
                const ReferenceOutputs ref = make_reference();
                write_plan(ref);
                print_plan(ref);
            }

            void sparsify()
            {
                const ReferenceOutputs ref = make_reference();
                warn_coarse(c_.solver.q);
                const auto t0 = std::chrono::steady_clock::now();
                const SparsifyResult s = sparsify_reference(reference_problem(c_, ref), c_.solver.q,
                                                            c_.solver.config);
                const double secs =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                log_.info(fmt::format("sparsify: Q={} K={} took {:.2f} s", c_.solver.q,
                                      c_.solver.config.k_samples, secs));
                if (!s.diagnostics.converged)
                    log_.warn("sparsify: evidence maximization stopped at max_iter before converging");
                if (s.diagnostics.monotone_violations > 0)
                    log_.warn(fmt::format("sparsify: {} evidence decreases", s.diagnostics.monotone_violations));

                const double f0 = c_.frequency.f0_hz;
                io::write_layout(file("layout.json"), s.layout, f0, s.origin_offset);
                io::write_excitations(file("excitations.json"), s.excitations, s.layout, f0);
                io::write_diagnostics(file("diagnostics.json"), s.diagnostics, s.merge_rounds, s.first_pass_size);

                std::vector<PatternCut> cuts;
                const auto rows = sparse_report(c_, ref, s.layout, s.excitations, &cuts);
                io::write_report(file("report.csv"), rows);
                for (size_t b = 0; b < cuts.size(); ++b)
                    io::write_cut(file(fmt::format("sparse_beam_{}.csv", b + 1)), cuts[b]);

                const int I = ref.layout.count();
                out_ << fmt::format("sparsify: M={} (I={}, reduction {:.1f}%) chi={:.3e} iterations={}{}\n",
                                    s.layout.count(), I, 100.0 * (I - s.layout.count()) / I, s.chi,
                                    s.diagnostics.iterations, s.diagnostics.converged ? "" : " (not converged)");
                out_ << "beam  SLL[dB]  D[dBi]  HPBW[deg]  chi\n";
                for (const auto &r : rows)
                    out_ << fmt::format("{:>4}  {:7.2f}  {:6.2f}  {:9.3f}  {:.2e}\n",
                                        r.beam == 0 ? std::string("ref") : std::to_string(r.beam), r.sll_db,
                                        r.d_dbi, r.hpbw_deg, r.chi);
                if (o_.sweep)
                    sweep(ref);
            }

            void sweep() { sweep(make_reference()); }

            void assemble()
            {
                const Design d = load_design();
                const ConeGeometry geom = c_.geometry.make();
                const SectorAssembly a = build_assembly(c_, geom, d.layout, d.ex, d.ref.plan);
                write_assembly(geom, d, a);
                out_ << fmt::format("assemble: sector {} of {} at {:.3f} deg, {} planks, {} elements\n", a.sector_index,
                                    sector_config(c_, geom).sector_count, a.facing_azimuth_deg,
                                    sector_config(c_, geom).planks_per_sector, a.elements.size());
            }

            void evaluate()
            {
                const Design d = load_design();
                const ConeGeometry geom = c_.geometry.make();
                const SectorAssembly a = build_assembly(c_, geom, d.layout, d.ex, d.ref.plan);
                write_assembly(geom, d, a);

                std::optional<SectorAssembly> fp;
                if (c_.evaluation.compare == "fp" && !o_.fp)
                    fp = build_assembly(c_, geom, d.ref.layout, full_excitations(d.ref), d.ref.plan);
                const SectorAssembly &ref = fp ? *fp : a;

                const ElementPattern element = c_.evaluation.element_pattern.empty()
                                                   ? ElementPattern::isotropic()
                                                   : load_input_pattern(c_.evaluation.element_pattern);
                std::vector<int> beams;
                for (int b : c_.evaluation.beams)
                    beams.push_back(b - 1);
                const FrequencyPlan plan{c_.frequency.f0_hz, c_.frequency.evaluation_hz};

                std::vector<SweepRow> rows;
                const std::string prefix = d.prefix;
                evaluate_band(a, ref, plan, element, c_.evaluation.spec(), beams, [&](const BandResult &r)
                              {
                    const int b = r.actual.beam + 1;
                    const std::string tag = fmt::format("b{}_f{}", b, io::format_number(r.actual.frequency_hz / 1e6));
                    io::write_pattern_2d(file(prefix + "pattern_" + tag + ".csv"), r.actual.pattern);
                    io::write_mismatch(file(prefix + "delta_" + tag + ".csv"), r.mismatch, b, r.actual.frequency_hz);
                    io::write_cut(file(prefix + "cut_el_" + tag + ".csv"), r.actual.elevation_cut, "theta_deg");
                    io::write_cut(file(prefix + "cut_az_" + tag + ".csv"), r.actual.azimuth_cut, "phi_deg");
                    rows.push_back({b, r.actual.frequency_hz, r.chi, r.actual.metrics});
                    log_.debug(fmt::format("evaluate: beam {} at {} Hz chi={:.3e}", b, r.actual.frequency_hz, r.chi)); });
                io::write_sweep(file(prefix + "sweep.csv"), rows);

                out_ << "beam  f[GHz]  chi       SLL[dB]  D[dBi]  HPBW_el  HPBW_az\n";
                for (const auto &r : rows)
                    out_ << fmt::format("{:>4}  {:6.3f}  {:.2e}  {:7.2f}  {:6.2f}  {:7.3f}  {:7.3f}\n", r.beam,
                                        r.frequency_hz / 1e9, r.chi, r.metrics.sll_db.value_or(NAN),
                                        r.metrics.directivity_dbi, r.metrics.hpbw_el_deg,
                                        r.metrics.hpbw_az_deg.value_or(NAN));
            }

            void exporter()
            {
                const Design d = load_design();
                const ConeGeometry geom = c_.geometry.make();
                io::write_geometry(file(d.prefix + "geometry.json"), geom, d.layout, c_.frequency.f0_hz);
                out_ << fmt::format("export: {} planks x {} elements = {} elements, r={:.4f} R={:.4f} wavelengths\n",
                                    geom.n_planks, d.layout.count(), geom.n_planks * d.layout.count(), geom.r,
                                    geom.R);
            }

        private:
            struct Design
            {
                ReferenceOutputs ref;
                PlankLayout layout;
                ExcitationSet ex;
                std::string prefix;
            };

            std::string file(const std::string &name) const { return (dir_ / name).string(); }

            ReferenceOutputs make_reference() const { return run_reference(c_); }

            void write_plan(const ReferenceOutputs &ref)
            {
                std::vector<double> measured;
                for (const auto &m : ref.beam_metrics)
                    measured.push_back(m.hpbw_el_deg);
                io::write_beam_plan(file("beam_plan.json"), ref.plan, measured);
            }

            void print_plan(const ReferenceOutputs &ref)
            {
                out_ << "beam  steer[deg]  left[deg]  right[deg]  HPBW[deg]\n";
                for (int b = 0; b < ref.plan.count(); ++b)
                    out_ << fmt::format("{:>4}  {:10.3f}  {:9.3f}  {:10.3f}  {:9.3f}\n", b + 1, ref.plan.steer_deg[b],
                                        ref.plan.left_edge_deg[b], ref.plan.right_edge_deg[b],
                                        ref.beam_metrics[b].hpbw_el_deg);
            }

            void warn_coarse(int q) const
            {
                if (q < c_.reference.element_count)
                    log_.warn(fmt::format("Q={} is below I={}: the candidate lattice is coarser than the reference "
                                          "plank",
                                          q, c_.reference.element_count));
            }

            void sweep(const ReferenceOutputs &ref)
            {
                const auto grid = c_.sweep.items(c_.solver.config);
                for (const auto &it : grid)
                    warn_coarse(it.q);
                log_.info(fmt::format("sweep: {} grid points", grid.size()));
                const ParetoResult res = pareto_sweep(reference_problem(c_, ref), grid, c_.sweep.workers);
                for (const auto &p : res.points)
                    if (!p.ok)
                        log_.warn(fmt::format("sweep: Q={} K={} sigma={} failed: {}", p.item.q,
                                              p.item.config.k_samples, p.item.config.sigma, p.error));
                io::write_pareto(file("pareto.csv"), res);
                out_ << fmt::format("sweep: {} points, {} on the frontier\n", res.points.size(), res.frontier.size());
                for (size_t i : res.frontier)
                    out_ << fmt::format("  M={} chi={:.3e} Q={} K={}\n", res.points[i].m, res.points[i].chi,
                                        res.points[i].item.q, res.points[i].item.config.k_samples);
            }

            static void require_file(const std::string &flag, const std::string &path)
            {
                if (!fs::exists(path))
                    throw ConfigError(flag, "file not found: " + path);
            }

            ElementPattern load_input_pattern(const std::string &path) const
            {
                require_file("evaluation.element_pattern", path);
                return load_element_pattern(path);
            }

            Design load_design() const
            {
                Design d;
                d.ref = make_reference();
                if (o_.fp)
                {
                    d.layout = d.ref.layout;
                    d.ex = full_excitations(d.ref);
                    d.prefix = "fp_";
                    return d;
                }
                const std::string lp = o_.layout_path.empty() ? file("layout.json") : o_.layout_path;
                const std::string ep = o_.excitations_path.empty() ? file("excitations.json") : o_.excitations_path;
                require_file("--layout", lp);
                require_file("--excitations", ep);
                d.layout = io::read_layout(lp);
                d.ex = io::read_excitations(ep);
                if (d.ex.size() != d.layout.count())
                    throw ConfigError("--excitations", "support size does not match the layout");
                if (d.ex.beam_count() != d.ref.plan.count())
                    throw ConfigError("--excitations", "beam count does not match beams.count");
                return d;
            }

            void write_assembly(const ConeGeometry &geom, const Design &d, const SectorAssembly &a)
            {
                io::write_assembly(file(d.prefix + "assembly.json"), file(d.prefix + "assembly_elements.csv"), geom,
                                   sector_config(c_, geom), d.ref.plan, a);
            }

            const RunConfig &c_;
            const Options &o_;
            std::ostream &out_;
            Log &log_;
            fs::path dir_;
        };
    }

    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Sparse multi-beam conical phased array synthesis", "cpa_synth"};
        Options o;
        app.add_option("--config", o.config_path, "JSON run configuration");
        app.add_flag("--emit-config", o.emit_config, "Print the resolved configuration and exit");
        app.add_option("--out", o.out_dir, "Output directory");
        app.add_option("--minor-radius", o.minor_radius, "Override the minor-base radius [wavelengths]");
        app.add_option("--sigma", o.sigma, "Noise variance");
        app.add_option("--beta1", o.beta1, "Gamma shape of the noise precision prior");
        app.add_option("--beta2", o.beta2, "Gamma rate factor of the noise precision prior");
        app.add_option("--q", o.q, "Candidate lattice size");
        app.add_option("--k", o.k, "Pattern samples per beam");
        app.add_option("--workers", o.workers, "Sweep worker threads, 0 for all cores");
        app.add_option("--sector-width", o.sector_width, "Sector width [deg]");
        app.add_option("--sector-index", o.sector_index, "Sector index, 0-based");
        app.add_option("--azimuth-taper", o.azimuth_taper, "Taylor azimuth taper SLL [dB] with n-bar 4");
        app.add_option("--element-pattern", o.element_pattern, "Element pattern CSV");
        app.add_option("--compare", o.compare, "Reference for chi and delta: fp or self");
        app.add_option("--freq", o.freqs, "Evaluation frequencies [Hz]");
        app.add_option("--beams", o.beams, "Beams to evaluate, 1-based");
        app.add_option("--layout", o.layout_path, "Layout JSON (default <out>/layout.json)");
        app.add_option("--excitations", o.excitations_path, "Excitations JSON (default <out>/excitations.json)");
        app.add_flag("--fp", o.fp, "Use the fully populated reference plank");

        auto *c_ref = app.add_subcommand("reference", "Reference plank, taper, beam plan and patterns");
        auto *c_stack = app.add_subcommand("stack", "Beam plan from -3 dB stacking");
        auto *c_sparse = app.add_subcommand("sparsify", "Multi-beam sparse synthesis");
        c_sparse->add_flag("--sweep", o.sweep, "Also run the Pareto sweep");
        auto *c_sweep = app.add_subcommand("sweep", "Pareto sweep over the solver grid");
        auto *c_asm = app.add_subcommand("assemble", "Sector assembly manifest");
        auto *c_eval = app.add_subcommand("evaluate", "2D patterns, mismatch maps and band sweep");
        auto *c_exp = app.add_subcommand("export", "Full cone geometry");
        for (auto *s : {c_ref, c_stack, c_sparse, c_sweep, c_asm, c_eval, c_exp})
            s->fallthrough();
        app.require_subcommand(0, 1);

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try
        {
            app.parse(reversed);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? kOk : kInputError;
        }

        Log log(err);
        try
        {
            const RunConfig config = resolve(o);
            if (o.emit_config)
            {
                out << dump_config(config);
                return kOk;
            }
            if (app.get_subcommands().empty())
            {
                err << "a subcommand is required\n" << app.help();
                return kInputError;
            }
            const fs::path dir = config.output.directory;
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec)
                throw IoError("cannot create " + dir.string() + ": " + ec.message());
            log.open(dir);
            auto *sub = app.get_subcommands().front();
            log.info("command: " + sub->get_name());
            log.debug("config:\n" + dump_config(config));

            Runner r(config, o, out, log);
            if (sub == c_ref)
                r.reference();
            else if (sub == c_stack)
                r.stack();
            else if (sub == c_sparse)
                r.sparsify();
            else if (sub == c_sweep)
                r.sweep();
            else if (sub == c_asm)
                r.assemble();
            else if (sub == c_eval)
                r.evaluate();
            else
                r.exporter();
            return kOk;
        }
        catch (const ConfigError &e)
        {
            log.error(std::string("config: ") + e.what());
            return kInputError;
        }
        catch (const ParseError &e)
        {
            log.error(std::string("parse: ") + e.what());
            return kInputError;
        }
        catch (const FormatError &e)
        {
            log.error(std::string("format: ") + e.what());
            return kInputError;
        }
        catch (const CoverageInfeasibleError &e)
        {
            log.error(std::string("beam plan: ") + e.what());
            return kInputError;
        }
        catch (const DegenerateSolutionError &e)
        {
            log.error(std::string("solver: ") + e.what());
            return kSolverError;
        }
        catch (const NumericalRankError &e)
        {
            log.error(std::string("solver: ") + e.what());
            return kSolverError;
        }
        catch (const DegeneratePatternError &e)
        {
            log.error(std::string("pattern: ") + e.what());
            return kSolverError;
        }
        catch (const IoError &e)
        {
            log.error(std::string("io: ") + e.what());
            return kIoError;
        }
        catch (const fs::filesystem_error &e)
        {
            log.error(std::string("io: ") + e.what());
            return kIoError;
        }
        catch (const std::invalid_argument &e)
        {
            log.error(std::string("input: ") + e.what());
            return kInputError;
        }
        catch (const std::out_of_range &e)
        {
            log.error(std::string("input: ") + e.what());
            return kInputError;
        }
    }
}
