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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zeno/checks.hpp"
#include "zeno/config.hpp"
#include "zeno/experiment.hpp"

namespace {

using namespace zeno;

struct RunOptions {
    std::string config_path;
    std::vector<std::string> routes;
    std::string out;
    std::string format;
};

int load_spec(const RunOptions& opt, cli::ExperimentSpec& spec) {
    std::ifstream in(opt.config_path, std::ios::binary);
    if (!in) {
        std::cerr << "zeno: cannot read " << opt.config_path << '\n';
        return cli::status_io;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        spec = cli::parse_config(buf.str());
    } catch (const ConfigError& e) {
        std::cerr << "zeno: " << opt.config_path << ": " << e.what() << '\n';
        return cli::status_config;
    }
    if (!opt.routes.empty()) {
        spec.routes.clear();
        for (const auto& r : opt.routes) {
            auto route = cli::parse_route(r);
            if (!route) {
                std::cerr << "zeno: unknown route '" << r << "'\n";
                return cli::status_usage;
            }
            if (std::find(spec.routes.begin(), spec.routes.end(), *route) == spec.routes.end())
                spec.routes.push_back(*route);
        }
    }
    if (!opt.format.empty()) {
        spec.output_format = opt.format == "json" ? cli::OutputFormat::Json : cli::OutputFormat::Csv;
        if (opt.out.empty())
            spec.output_path =
                std::filesystem::path(spec.output_path).replace_extension(opt.format).string();
    }
    if (!opt.out.empty()) spec.output_path = opt.out;
    return cli::status_ok;
}

void add_output_options(CLI::App* cmd, RunOptions& opt) {
    cmd->add_option("config", opt.config_path, "Configuration file (key = value lines)")->required();
    cmd->add_option("--route", opt.routes, "Evolution route: exact, super or effective (repeatable)")
        ->check(CLI::IsMember({"exact", "super", "superoperator", "effective"}));
    cmd->add_option("--out", opt.out, "Output path (overrides output.path)");
    cmd->add_option("--format", opt.format, "Output format (overrides output.format)")
        ->check(CLI::IsMember({"csv", "json"}));
}

int run_check(std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    const auto results = checks::run_invariant_suite(seed);
    int failed = 0;
    for (const auto& r : results) {
        std::printf("[%s] %-9s %s: %s\n", r.passed ? "PASS" : "FAIL", r.module.c_str(), r.name.c_str(),
                    r.detail.c_str());
        failed += r.passed ? 0 : 1;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%zu checks, %d failed, %.2f s\n", results.size(), failed, secs);
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Zeno dynamics of the Jaynes-Cummings model"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Run one experiment from a configuration file");
    add_output_options(run, run_opt);

    RunOptions sweep_opt;
    std::vector<int> sweep_n;
    auto* sweep = app.add_subcommand("sweep", "Run an N-sweep and fit the convergence order");
    add_output_options(sweep, sweep_opt);
    sweep->add_option("--n", sweep_n, "Comma-separated measurement counts, strictly increasing")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);

    std::uint64_t seed = checks::DEFAULT_SEED;
    auto* check = app.add_subcommand("check", "Run the built-in invariant suite");
    check->add_option("--seed", seed, "Seed for randomized checks");

    CLI11_PARSE(app, argc, argv);

    if (check->parsed()) return run_check(seed);

    cli::ExperimentSpec spec;
    const RunOptions& opt = run->parsed() ? run_opt : sweep_opt;
    if (int rc = load_spec(opt, spec); rc != cli::status_ok) return rc;
    if (sweep->parsed()) {
        if (!sweep_n.empty()) {
            for (std::size_t i = 1; i < sweep_n.size(); ++i)
                if (sweep_n[i] <= sweep_n[i - 1]) {
                    std::cerr << "zeno: --n values must be strictly increasing\n";
                    return cli::status_usage;
                }
            spec.sweep = sweep_n;
        }
        if (spec.sweep.empty()) {
            std::cerr << "zeno: sweep needs --n or a sweep key in the configuration\n";
            return cli::status_usage;
        }
    }
    return cli::run_experiment(spec, std::cout, std::cerr);
}
