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

#include "cli.hpp"
#include "cpa/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace cpa;
namespace fs = std::filesystem;

namespace
{
    struct TempDir
    {
        fs::path path;
        TempDir()
        {
            std::random_device rd;
            path = fs::temp_directory_path() / ("cpa_cli_" + std::to_string(rd()));
            fs::create_directories(path);
        }
        ~TempDir() { fs::remove_all(path); }
        std::string str(const std::string &name = "") const { return (path / name).string(); }
    };

    struct Run
    {
        int code = 0;
        std::string out, err;
    };

    Run run(std::vector<std::string> args)
    {
        std::ostringstream out, err;
        Run r;
        r.code = cli::run(args, out, err);
        r.out = out.str();
        r.err = err.str();
        return r;
    }

    void write(const std::string &path, const std::string &text)
    {
        std::ofstream f(path);
        f << text;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream f(p, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    // coarse evaluation so the end-to-end runs stay fast
    const char *kFastEval = R"({
        "evaluation": {"grid_nv": 41, "grid_nw": 41, "cut_step_deg": 0.1, "sphere_step_deg": 2.0, "beams": [4]},
        "frequency": {"f0_hz": 1.282e9, "evaluation_hz": [1.282e9]}
    })";
}

TEST_CASE("help and usage errors", "[cli]")
{
    CHECK(run({"--help"}).code == cli::kOk);
    CHECK(run({}).code == cli::kInputError);
    CHECK(run({"--bogus", "reference"}).code == cli::kInputError);
    CHECK(run({"frobnicate"}).code == cli::kInputError);
    CHECK(run({"--q", "abc", "sparsify"}).code == cli::kInputError);
}

TEST_CASE("emitted configuration parses back to itself", "[cli][config]")
{
    TempDir dir;
    const Run a = run({"--emit-config", "--q", "350", "--sector-width", "60"});
    REQUIRE(a.code == cli::kOk);
    const auto doc = nlohmann::json::parse(a.out);
    CHECK(doc["solver"]["q"] == 350);
    CHECK(doc["sector"]["width_deg"] == 60.0);
    write(dir.str("c.json"), a.out);
    const Run b = run({"--config", dir.str("c.json"), "--emit-config"});
    REQUIRE(b.code == cli::kOk);
    CHECK(b.out == a.out);
}

TEST_CASE("configuration errors name the offending field", "[cli][config][errors]")
{
    TempDir dir;
    write(dir.str("taper.json"), R"({"reference": {"element_count": 22, "spacing_wavelengths": 0.5}})");
    Run r = run({"--config", dir.str("taper.json"), "reference"});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("reference.taper") != std::string::npos);

    write(dir.str("unknown.json"), R"({"solver": {"qq": 5}})");
    r = run({"--config", dir.str("unknown.json"), "reference"});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("solver.qq") != std::string::npos);

    write(dir.str("type.json"), R"({"beams": {"count": "seven"}})");
    r = run({"--config", dir.str("type.json"), "stack"});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("beams.count") != std::string::npos);

    write(dir.str("syntax.json"), "{\"beams\": ");
    CHECK(run({"--config", dir.str("syntax.json"), "stack"}).code == cli::kInputError);
    CHECK(run({"--config", dir.str("absent.json"), "stack"}).code == cli::kInputError);
    CHECK(run({"--out", dir.str(), "--sigma", "-1", "sparsify"}).code == cli::kInputError);
    CHECK(run({"--out", dir.str(), "--sector-width", "25", "assemble", "--fp"}).code == cli::kInputError);
    CHECK(run({"--out", dir.str(), "--sector-index", "12", "assemble", "--fp"}).code == cli::kInputError);
}

TEST_CASE("reference and stack outputs", "[cli]")
{
    TempDir dir;
    REQUIRE(run({"--out", dir.str(), "reference"}).code == cli::kOk);
    for (const char *f : {"reference_layout.json", "taper.json", "beam_plan.json", "reference_broadside.csv",
                          "reference_beam_1.csv", "reference_beam_7.csv", "reference_report.csv"})
        CHECK(fs::exists(dir.path / f));
    const BeamPlan plan = io::read_beam_plan(dir.str("beam_plan.json"));
    CHECK(plan.count() == 7);

    write(dir.str("one.json"), R"({"beams": {"count": 1, "start_left_edge_deg": 87.0}})");
    TempDir single;
    REQUIRE(run({"--config", dir.str("one.json"), "--out", single.str(), "stack"}).code == cli::kOk);
    const BeamPlan p1 = io::read_beam_plan(single.str("beam_plan.json"));
    REQUIRE(p1.count() == 1);
    CHECK(p1.left_edge_deg[0] == 87.0);
}

TEST_CASE("sparsify warns on a coarse lattice and maps solver failures", "[cli][solver]")
{
    TempDir dir;
    Run r = run({"--out", dir.str(), "--q", "11", "sparsify"});
    CHECK(r.code == cli::kOk);
    CHECK(r.err.find("[warn] Q=11 is below I=22") != std::string::npos);

    r = run({"--out", dir.str(), "--sigma", "1e6", "sparsify"});
    CHECK(r.code == cli::kSolverError);
}

TEST_CASE("a one-point sweep writes a single pareto row", "[cli][sweep]")
{
    TempDir dir;
    const Run r = run({"--out", dir.str(), "sparsify", "--sweep"});
    REQUIRE(r.code == cli::kOk);
    const auto pts = io::read_pareto(dir.str("pareto.csv"));
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].ok);
    const ExcitationSet ex = io::read_excitations(dir.str("excitations.json"));
    CHECK(pts[0].m == ex.size());
}

TEST_CASE("missing and unwritable inputs", "[cli][errors]")
{
    TempDir dir;
    CHECK(run({"--out", dir.str(), "--layout", dir.str("nope.json"), "evaluate"}).code == cli::kInputError);
    CHECK(run({"--out", dir.str(), "assemble"}).code == cli::kInputError);
    write(dir.str("file"), "x");
    CHECK(run({"--out", dir.str("file/sub"), "reference"}).code == cli::kIoError);
}

TEST_CASE("end-to-end runs are byte-identical", "[cli]")
{
    TempDir a, b, cfg;
    write(cfg.str("fast.json"), kFastEval);
    for (const TempDir *d : {&a, &b})
        for (const char *cmd : {"reference", "sparsify", "assemble", "evaluate", "export"})
        {
            std::vector<std::string> args = {"--config", cfg.str("fast.json"), "--out", d->str(), cmd};
            const Run r = run(args);
            INFO(cmd << ": " << r.err);
            REQUIRE(r.code == cli::kOk);
        }
    for (const char *f : {"assembly.json", "assembly_elements.csv", "geometry.json", "cut_az_b4_f1282.csv",
                          "pattern_b4_f1282.csv", "delta_b4_f1282.csv", "sweep.csv"})
        CHECK(fs::exists(a.path / f));
    int compared = 0;
    for (const auto &e : fs::directory_iterator(a.path))
    {
        if (e.path().filename() == "run.log")
            continue;
        INFO(e.path().filename().string());
        CHECK(slurp(e.path()) == slurp(b.path / e.path().filename()));
        ++compared;
    }
    CHECK(compared > 20);

    const auto rows = io::read_sweep(a.str("sweep.csv"));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].beam == 4);
    CHECK(rows[0].chi > 0.0);
}

TEST_CASE("self comparison reports zero mismatch", "[cli]")
{
    TempDir dir, cfg;
    write(cfg.str("fast.json"), kFastEval);
    REQUIRE(run({"--config", cfg.str("fast.json"), "--out", dir.str(), "--compare", "self", "--fp", "evaluate"})
                .code == cli::kOk);
    const auto rows = io::read_sweep(dir.str("fp_sweep.csv"));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].chi == 0.0);
}
