// Copyright 2026 The zeno-dynamics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "zeno/config.hpp"
#include "zeno/experiment.hpp"

namespace zeno {
namespace {

using namespace cli;

const char* kMinimal = R"(# resonant
omega_a = 1
omega = 1
g = 0.1
T = 5
N = 100
field.kind = coherent
field.alpha_re = 1
)";

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct CsvRow {
    std::vector<std::string> cells;
    double num(int i) const { return std::stod(cells[i]); }
};

std::vector<CsvRow> data_rows(const std::string& text) {
    std::vector<CsvRow> rows;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) { header_seen = true; continue; }
        CsvRow r;
        std::stringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) r.cells.push_back(c);
        rows.push_back(r);
    }
    return rows;
}

std::filesystem::path temp_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("zeno_test_" + name);
    std::filesystem::create_directories(p);
    return p;
}

void expect_config_error(const std::string& text, const std::string& key, int line) {
    try {
        parse_config(text);
        ADD_FAILURE() << "expected ConfigError for key " << key;
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.key(), key) << e.what();
        EXPECT_EQ(e.line(), line) << e.what();
        EXPECT_NE(std::string(e.what()).find(key), std::string::npos);
    }
}

TEST(ParseConfig, MinimalFillsDefaults) {
    const auto spec = parse_config(kMinimal);
    EXPECT_EQ(spec.run.params, (JCParams{1, 1, 0.1}));
    EXPECT_EQ(spec.run.total_time, 5);
    EXPECT_EQ(spec.run.num_measurements, 100);
    EXPECT_EQ(spec.run.field, FieldStateSpec(states::Coherent{{1, 0}}));
    EXPECT_EQ(spec.run.atom, AtomicStateSpec(states::Ground{}));
    EXPECT_FALSE(spec.run.truncation.has_value());
    EXPECT_EQ(spec.routes, (std::vector<Route>{Route::Exact, Route::Superoperator, Route::Effective}));
    EXPECT_TRUE(spec.sweep.empty());
    EXPECT_EQ(spec.output_format, OutputFormat::Csv);
    EXPECT_EQ(spec.output_path, "zeno_trace.csv");
}

TEST(ParseConfig, NegativeFockIndexNamesKey) {
    expect_config_error("omega_a=1\nomega=1\ng=0.1\nT=5\nN=10\nfield.kind=fock\nfield.n=-1\n", "field.n", 7);
}

TEST(ParseConfig, Errors) {
    const std::string base = kMinimal;
    expect_config_error(base + "colour = blue\n", "colour", 9);
    expect_config_error(base + "g = 0.2\n", "g", 9);
    expect_config_error(std::string("omega_a = 1\nomega = x1\n"), "omega", 2);
    expect_config_error(base + "sweep = [64, 32]\n", "sweep", 9);
    expect_config_error(base + "routes = [exact, warp]\n", "routes", 9);
    expect_config_error(base + "field.n = 3\n", "field.n", 9);
    expect_config_error(base + "truncation = 1\n", "truncation", 9);
    expect_config_error("omega_a = 1\nomega = 1\ng = 0.1\nT = 5\nN = 0\nfield.kind = fock\nfield.n = 1\n", "N", 5);
    expect_config_error("omega_a = 1\nomega = 1\ng = 0.1\nT = 5\nfield.kind = fock\nfield.n = 1\n", "N", 0);
    expect_config_error("omega_a = 1\nomega = 1\ng = -0.1\nT = 5\nN = 3\nfield.kind = fock\nfield.n = 1\n", "g", 3);
    expect_config_error("omega_a = 1\nomega = 1\ng = 0.1\nT = 5\nN = 3\nfield.kind = laser\n", "field.kind", 6);
    expect_config_error("omega_a = 1\nomega = 1\ng = 0.1\nT = 5\nN = 2.5\nfield.kind = fock\nfield.n = 0\n", "N", 5);
    expect_config_error(base + "just text\n", "", 9);
}

TEST(ParseConfig, ListsKindsAndComments) {
    const auto spec = parse_config(std::string(kMinimal) +
                                   "atom.kind = bloch  # equator\natom.polar = 1.5\nsweep = 8, 16,32\n"
                                   "routes = [super, effective]\ntruncation = 40\noutput.format = json\nseed = 9\n");
    EXPECT_EQ(spec.run.atom, AtomicStateSpec(states::BlochVector{1.5, 0.0}));
    EXPECT_EQ(spec.sweep, (std::vector<int>{8, 16, 32}));
    EXPECT_EQ(spec.routes, (std::vector<Route>{Route::Superoperator, Route::Effective}));
    EXPECT_EQ(spec.run.truncation, 40);
    EXPECT_EQ(spec.output_format, OutputFormat::Json);
    EXPECT_EQ(spec.output_path, "zeno_trace.json");
    EXPECT_EQ(spec.seed, 9u);
    EXPECT_EQ(spec.n_values(), spec.sweep);
}

TEST(ParseConfig, RoundTripProperty) {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> ur(-1e3, 1e3);
    std::uniform_int_distribution<int> kind(0, 2), small(0, 30);
    for (int rep = 0; rep < 200; ++rep) {
        ExperimentSpec spec;
        spec.run.params = {ur(rng), ur(rng), std::abs(ur(rng))};
        spec.run.total_time = std::abs(ur(rng)) + 1e-9;
        spec.run.num_measurements = 1 + small(rng);
        switch (kind(rng)) {
            case 0: spec.run.field = states::Fock{small(rng)}; break;
            case 1: spec.run.field = states::Coherent{{ur(rng), ur(rng)}}; break;
            default: spec.run.field = states::SuperposedFock{small(rng), ur(rng), ur(rng)};
        }
        switch (kind(rng)) {
            case 0: spec.run.atom = states::Excited{}; break;
            case 1: spec.run.atom = states::Ground{}; break;
            default: spec.run.atom = states::BlochVector{ur(rng), ur(rng)};
        }
        if (kind(rng) == 0) spec.run.truncation = 2 + small(rng);
        if (kind(rng) == 1) spec.sweep = {1 + rep, 100 + rep, 1000 + rep};
        if (kind(rng) == 2) spec.routes = {Route::Effective};
        spec.output_format = kind(rng) == 0 ? OutputFormat::Json : OutputFormat::Csv;
        spec.output_path = "runs/out-" + std::to_string(rep) + ".txt";
        if (kind(rng) == 0) spec.seed = rng();
        const auto text = serialize_config(spec);
        EXPECT_EQ(parse_config(text), spec) << text;
    }
}

TEST(Plan, SweepSharesOneHamiltonian) {
    const auto spec = parse_config(std::string(kMinimal) + "sweep = [64,128,256]\n");
    const auto plan = plan_experiment(spec);
    EXPECT_EQ(plan.n_values, (std::vector<int>{64, 128, 256}));
    EXPECT_EQ(plan.run_count(), 9u);
    ASSERT_TRUE(plan.hamiltonians);
    EXPECT_EQ(plan.hamiltonians->layout.field_dim(), 19);
    EXPECT_EQ(plan.hamiltonians.use_count(), 1);
    const auto single = plan_experiment(parse_config(kMinimal));
    EXPECT_EQ(single.n_values, (std::vector<int>{100}));
}

TEST(RunExperiment, EffectiveFockExcitedIsFrozen) {
    const auto dir = temp_dir("fock");
    auto spec = parse_config("omega_a=1\nomega=1\ng=0.1\nT=5\nN=50\nfield.kind=fock\nfield.n=3\natom.kind=excited\n"
                             "routes=effective\n");
    spec.output_path = (dir / "trace.csv").string();
    std::ostringstream out, err;
    ASSERT_EQ(run_experiment(spec, out, err), status_ok) << err.str();
    const auto text = read_file(spec.output_path);
    EXPECT_NE(text.find(std::string(TRACE_COLUMNS) + "\n"), std::string::npos);
    const auto rows = data_rows(text);
    ASSERT_EQ(rows.size(), 50u);
    for (const auto& r : rows) {
        EXPECT_EQ(r.cells[0], "effective");
        EXPECT_EQ(r.num(4), 1.0);
    }
}

TEST(RunExperiment, DecoupledExactRouteKeepsSurvival) {
    const auto dir = temp_dir("g0");
    auto spec = parse_config("omega_a=1\nomega=1\ng=0\nT=5\nN=40\nfield.kind=fock\nfield.n=2\natom.kind=bloch\n"
                             "atom.polar=1.0\nroutes=exact\n");
    spec.output_path = (dir / "trace.csv").string();
    std::ostringstream out, err;
    ASSERT_EQ(run_experiment(spec, out, err), status_ok) << err.str();
    for (const auto& r : data_rows(read_file(spec.output_path))) EXPECT_NEAR(r.num(9), 1.0, 1e-12);
}

TEST(RunExperiment, SweepFitsFirstOrder) {
    const auto dir = temp_dir("sweep");
    auto spec = parse_config(std::string(kMinimal) + "sweep = [64,128,256,512]\nroutes = [exact, effective]\n");
    spec.output_path = (dir / "trace.csv").string();
    std::ostringstream out, err;
    ASSERT_EQ(run_experiment(spec, out, err), status_ok) << err.str();
    const auto conv = read_file(convergence_path(spec.output_path));
    EXPECT_NE(conv.find("N,trace_distance_final\n"), std::string::npos);
    const auto pos = conv.find("fitted_order,");
    ASSERT_NE(pos, std::string::npos);
    const double order = std::stod(conv.substr(pos + 13));
    EXPECT_GE(order, -1.2);
    EXPECT_LE(order, -0.8);

    const auto rows = data_rows(read_file(spec.output_path));
    EXPECT_EQ(rows.size(), 2u * (64 + 128 + 256 + 512));
    for (const auto& r : rows) {
        const double ee = r.num(4), gg = r.num(5), re = r.num(6), im = r.num(7);
        EXPECT_NEAR(ee + gg, 1.0, 1e-9);
        EXPECT_LE(re * re + im * im, ee * gg + 1e-9);
    }
    EXPECT_NE(out.str().find("fitted order"), std::string::npos);
}

TEST(RunExperiment, OutputIsDeterministic) {
    const auto dir = temp_dir("det");
    auto spec = parse_config(std::string(kMinimal) + "sweep = [8,16,32]\n");
    std::ostringstream out, err;
    spec.output_path = (dir / "a.csv").string();
    ASSERT_EQ(run_experiment(spec, out, err), status_ok);
    const auto first = read_file(spec.output_path);
    const auto first_conv = read_file(convergence_path(spec.output_path));
    ASSERT_EQ(run_experiment(spec, out, err), status_ok);
    EXPECT_EQ(read_file(spec.output_path), first);
    EXPECT_EQ(read_file(convergence_path(spec.output_path)), first_conv);
    EXPECT_EQ(first.find('\r'), std::string::npos);
}

TEST(RunExperiment, JsonContainsTraceAndConvergence) {
    const auto dir = temp_dir("json");
    auto spec = parse_config(std::string(kMinimal) + "sweep = [4, 8, 12]\noutput.format = json\n");
    spec.output_path = (dir / "t.json").string();
    std::ostringstream out, err;
    ASSERT_EQ(run_experiment(spec, out, err), status_ok) << err.str();
    const auto doc = nlohmann::json::parse(read_file(spec.output_path));
    EXPECT_EQ(doc["trace"].size(), 3u * (4 + 8 + 12));
    const auto& row = doc["trace"][0];
    for (const char* key : {"route", "N", "step", "time", "rho_ee", "rho_gg", "re_rho_eg", "im_rho_eg",
                            "step_survival", "cum_survival", "purity"})
        EXPECT_TRUE(row.contains(key)) << key;
    EXPECT_EQ(doc["convergence"]["rows"].size(), 3u);
    EXPECT_TRUE(doc["convergence"]["fitted_order"].is_number());
    EXPECT_EQ(parse_config(doc["config"].get<std::string>()), spec);
}

TEST(RunExperiment, IoAndAbortStatus) {
    auto spec = parse_config(kMinimal);
    spec.routes = {Route::Effective};
    spec.output_path = "/nonexistent-dir/zeno/trace.csv";
    std::ostringstream out, err;
    EXPECT_EQ(run_experiment(spec, out, err), status_io);

    auto abort = parse_config("omega_a=1\nomega=1\ng=0.1\nT=15.707963267948966\nN=1\nfield.kind=fock\nfield.n=0\n"
                              "atom.kind=excited\nroutes=exact\n");
    abort.output_path = (temp_dir("abort") / "t.csv").string();
    std::ostringstream err2;
    EXPECT_EQ(run_experiment(abort, out, err2), status_abort);
    EXPECT_NE(err2.str().find("step 1"), std::string::npos);
}

}  // namespace
}  // namespace zeno
