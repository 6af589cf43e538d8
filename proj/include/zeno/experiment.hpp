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

#pragma once

// Experiment execution and result tables for the command-line front end.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "zeno/analysis.hpp"
#include "zeno/config.hpp"
#include "zeno/engine.hpp"

namespace zeno {
namespace cli {

inline constexpr const char* TRACE_COLUMNS =
    "route,N,step,time,rho_ee,rho_gg,re_rho_eg,im_rho_eg,step_survival,cum_survival,purity";

/// One realized Hamiltonian shared by every (route, N) run of an experiment.
struct RunPlan {
    std::shared_ptr<const HamiltonianSet> hamiltonians;
    std::vector<int> n_values;
    std::vector<Route> routes;

    std::size_t run_count() const { return n_values.size() * routes.size(); }
};

inline RunPlan plan_experiment(const ExperimentSpec& spec) {
    spec.run.validate();
    if (spec.routes.empty()) throw DomainError("experiment needs at least one route");
    return {std::make_shared<const HamiltonianSet>(spec.run.hamiltonians()), spec.n_values(), spec.routes};
}

struct SweepEntry {
    int n = 0;
    std::vector<ZenoTrace> traces;  // same order as RunPlan::routes
    // Final-state trace distance between the compared protocol route and the
    // effective route.
    std::optional<double> trace_distance_final;
};

struct ExperimentResult {
    std::vector<SweepEntry> entries;  // ascending N
    std::optional<Route> compared_route;
    std::optional<analysis::ConvergenceReport> convergence;
};

inline std::optional<Route> comparison_route(const std::vector<Route>& routes) {
    for (Route preferred : {Route::Exact, Route::Superoperator})
        for (Route r : routes)
            if (r == preferred) return r;
    return std::nullopt;
}

/// Runs every (route, N) pair. Distinct N values execute concurrently.
inline ExperimentResult execute_plan(const ExperimentSpec& spec, const RunPlan& plan) {
    ExperimentResult result;
    result.compared_route = comparison_route(plan.routes);
    const auto& hs = *plan.hamiltonians;

    auto run_one = [&](int n) {
        ZenoRunConfig cfg = spec.run;
        cfg.num_measurements = n;
        SweepEntry entry;
        entry.n = n;
        std::optional<ZenoTrace> effective;
        for (Route r : plan.routes) {
            entry.traces.push_back(engine::run_route(r, cfg, hs));
            if (r == Route::Effective) effective = entry.traces.back();
        }
        if (result.compared_route) {
            if (!effective) effective = engine::run_effective(cfg, hs, 1);
            for (std::size_t i = 0; i < plan.routes.size(); ++i)
                if (plan.routes[i] == *result.compared_route)
                    entry.trace_distance_final =
                        analysis::trace_distance(entry.traces[i].final_state(), effective->final_state());
        }
        return entry;
    };

    std::vector<std::future<SweepEntry>> jobs;
    for (int n : plan.n_values) jobs.push_back(std::async(std::launch::async, run_one, n));
    for (auto& j : jobs) result.entries.push_back(j.get());

    if (!spec.sweep.empty() && result.compared_route && result.entries.size() >= 3) {
        std::vector<analysis::ConvergencePoint> pts;
        for (const auto& e : result.entries) pts.push_back({double(e.n), *e.trace_distance_final});
        result.convergence = analysis::fit_convergence_order(pts);
    }
    return result;
}

namespace detail {

inline void write_metadata(std::ostream& out, const ExperimentSpec& spec) {
    std::istringstream cfg(serialize_config(spec));
    std::string line;
    while (std::getline(cfg, line)) out << "# " << line << '\n';
}

inline std::string fitted_order_text(const ExperimentResult& r) {
    if (!r.convergence) return "nan";
    if (r.convergence->exact) return "exact";
    return format_double(r.convergence->fitted_order);
}

}  // namespace detail

inline void write_trace_csv(std::ostream& out, const ExperimentSpec& spec, const ExperimentResult& result) {
    detail::write_metadata(out, spec);
    out << TRACE_COLUMNS << '\n';
    for (const auto& entry : result.entries)
        for (const auto& tr : entry.traces)
            for (const auto& s : tr.steps) {
                const auto& m = s.rho_atom.matrix();
                out << engine::route_name(tr.route) << ',' << entry.n << ',' << s.step << ','
                    << format_double(s.time) << ',' << format_double(m(0, 0).real()) << ','
                    << format_double(m(1, 1).real()) << ',' << format_double(m(0, 1).real()) << ','
                    << format_double(m(0, 1).imag()) << ',' << format_double(s.step_survival) << ','
                    << format_double(s.cumulative_survival) << ','
                    << format_double(analysis::purity(s.rho_atom)) << '\n';
            }
}

inline void write_convergence_csv(std::ostream& out, const ExperimentSpec& spec,
                                  const ExperimentResult& result) {
    detail::write_metadata(out, spec);
    out << "N,trace_distance_final\n";
    for (const auto& e : result.entries)
        out << e.n << ',' << (e.trace_distance_final ? format_double(*e.trace_distance_final) : "nan") << '\n';
    out << "fitted_order," << detail::fitted_order_text(result) << '\n';
}

inline nlohmann::json to_json(const ExperimentSpec& spec, const ExperimentResult& result) {
    nlohmann::json doc;
    doc["config"] = serialize_config(spec);
    auto& rows = doc["trace"] = nlohmann::json::array();
    for (const auto& entry : result.entries)
        for (const auto& tr : entry.traces)
            for (const auto& s : tr.steps) {
                const auto& m = s.rho_atom.matrix();
                rows.push_back({{"route", engine::route_name(tr.route)},
                                {"N", entry.n},
                                {"step", s.step},
                                {"time", s.time},
                                {"rho_ee", m(0, 0).real()},
                                {"rho_gg", m(1, 1).real()},
                                {"re_rho_eg", m(0, 1).real()},
                                {"im_rho_eg", m(0, 1).imag()},
                                {"step_survival", s.step_survival},
                                {"cum_survival", s.cumulative_survival},
                                {"purity", analysis::purity(s.rho_atom)}});
            }
    if (!spec.sweep.empty()) {
        nlohmann::json conv;
        conv["rows"] = nlohmann::json::array();
        for (const auto& e : result.entries) {
            nlohmann::json row{{"N", e.n}};
            row["trace_distance_final"] =
                e.trace_distance_final ? nlohmann::json(*e.trace_distance_final) : nlohmann::json(nullptr);
            conv["rows"].push_back(row);
        }
        if (result.convergence && !result.convergence->exact) {
            conv["fitted_order"] = result.convergence->fitted_order;
            conv["fit_residual"] = result.convergence->fit_residual;
        } else {
            conv["fitted_order"] = detail::fitted_order_text(result);
        }
        doc["convergence"] = std::move(conv);
    }
    return doc;
}

inline void print_summary(std::ostream& out, const ExperimentSpec& spec, const ExperimentResult& result) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "zeno: T=%g  omega_a=%g  omega=%g  g=%g  D=%d\n", spec.run.total_time,
                  spec.run.params.omega_a, spec.run.params.omega, spec.run.params.g,
                  spec.run.resolved_truncation());
    out << buf;
    for (const auto& e : result.entries) {
        for (const auto& tr : e.traces) {
            const auto& m = tr.final_state().matrix();
            std::snprintf(buf, sizeof buf, "N=%-6d %-13s rho_ee=%.10f  survival=%.10f  purity=%.12f\n", e.n,
                          std::string(engine::route_name(tr.route)).c_str(), m(0, 0).real(),
                          engine::survival_probability(tr), analysis::purity(tr.final_state()));
            out << buf;
        }
        if (e.trace_distance_final) {
            std::snprintf(buf, sizeof buf, "N=%-6d trace distance (%s vs effective) = %.6e\n", e.n,
                          std::string(engine::route_name(*result.compared_route)).c_str(),
                          *e.trace_distance_final);
            out << buf;
        }
    }
    if (result.convergence) {
        out << "fitted order: " << detail::fitted_order_text(result);
        if (!result.convergence->exact) out << "  (residual " << format_double(result.convergence->fit_residual) << ")";
        out << '\n';
    }
}

/// foo/bar.csv -> foo/bar_convergence.csv
inline std::string convergence_path(const std::string& trace_path) {
    std::filesystem::path p(trace_path);
    auto stem = p.stem().string() + "_convergence";
    return (p.parent_path() / (stem + p.extension().string())).string();
}

enum ExitStatus : int { status_ok = 0, status_usage = 1, status_config = 2, status_abort = 3, status_io = 4 };

/// Runs the experiment, writes the result files and prints a summary.
inline int run_experiment(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
    ExperimentResult result;
    try {
        result = execute_plan(spec, plan_experiment(spec));
    } catch (const SurvivalCutoff& e) {
        err << "zeno: run aborted at step " << e.step() << ": " << e.what() << '\n';
        return status_abort;
    } catch (const Error& e) {
        err << "zeno: " << e.what() << '\n';
        return status_abort;
    }

    auto write = [&](const std::string& path, auto&& body) {
        std::ofstream f(path, std::ios::binary);
        if (!f) return false;
        body(f);
        f.flush();
        return static_cast<bool>(f);
    };
    bool ok = true;
    if (spec.output_format == OutputFormat::Csv) {
        ok = write(spec.output_path, [&](std::ostream& f) { write_trace_csv(f, spec, result); });
        if (ok && !spec.sweep.empty())
            ok = write(convergence_path(spec.output_path),
                       [&](std::ostream& f) { write_convergence_csv(f, spec, result); });
    } else {
        ok = write(spec.output_path, [&](std::ostream& f) { f << to_json(spec, result).dump(2) << '\n'; });
    }
    if (!ok) {
        err << "zeno: cannot write output to " << spec.output_path << '\n';
        return status_io;
    }
    print_summary(out, spec, result);
    return status_ok;
}

}  // namespace cli
}  // namespace zeno
