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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "zeno/analysis.hpp"
#include "zeno/checks.hpp"
#include "zeno/engine.hpp"
#include "zeno/models.hpp"

namespace {

using namespace zeno;
constexpr double pi = std::numbers::pi;

struct Outcome {
    bool passed;
    std::string detail;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

double elapsed(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Criterion config: omega_a = omega = 1, g = 0.1, T = 5, atom |g>, |B> = |alpha=1>, D auto.
ZenoRunConfig base_config(int n) { return checks::reference_config(n); }

Outcome zeno_convergence() {
    const auto start = std::chrono::steady_clock::now();
    const auto cfg = base_config(64);
    const auto hs = cfg.hamiltonians();
    const auto eff = engine::run_effective(cfg, hs, 1).final_state();
    std::vector<analysis::ConvergencePoint> pts;
    for (int n : {64, 128, 256, 512, 1024}) {
        ZenoRunConfig c = cfg;
        c.num_measurements = n;
        pts.push_back({double(n), analysis::trace_distance(engine::run_zeno_exact(c, hs).final_state(), eff)});
    }
    const auto rep = analysis::fit_convergence_order(pts);
    const double secs = elapsed(start);
    const bool ok = !rep.exact && rep.fitted_order >= -1.2 && rep.fitted_order <= -0.8 && rep.fit_residual < 0.1 &&
                    secs < 60.0;
    return {ok, "order " + std::to_string(rep.fitted_order) + ", residual " + sci(rep.fit_residual) + ", " +
                    std::to_string(secs) + " s"};
}

// Closed-form two-level evolution from |g> under
// c I + (Delta/2) sz + g (alpha s+ + alpha* s-).
double rabi_excited_population(double delta, double g, Complex alpha, double t) {
    const double omega_r = 2.0 * g * std::abs(alpha);
    const double gen = std::sqrt(omega_r * omega_r + delta * delta);
    if (gen == 0.0) return 0.0;
    const double s = std::sin(0.5 * gen * t);
    return omega_r * omega_r / (gen * gen) * s * s;
}

Outcome semiclassical_equivalence() {
    double coupling_err = 0, pop_err = 0;
    for (Complex alpha : {Complex(0.5, 0), Complex(1, 0), Complex(2, 0), Complex(1, 1)}) {
        for (double omega_a : {0.0, 1.0}) {
            ZenoRunConfig cfg = base_config(400);
            cfg.params.omega_a = omega_a;
            cfg.field = states::Coherent{alpha};
            cfg.total_time = 60.0;
            const auto hs = cfg.hamiltonians();
            coupling_err = std::max(coupling_err, std::abs(models::effective_coupling(hs.effective) - cfg.params.g * alpha));
            const auto tr = engine::run_effective(cfg, hs);
            for (const auto& s : tr.steps)
                pop_err = std::max(pop_err, std::abs(s.rho_atom(0, 0).real() -
                                                     rabi_excited_population(omega_a, cfg.params.g, alpha, s.time)));
        }
    }
    return {coupling_err < 1e-8 && pop_err < 1e-9, "coupling error " + sci(coupling_err) + ", population error " + sci(pop_err)};
}

Outcome fock_freezing() {
    double eff_dev = 0, exact_drift = 0;
    for (int n : {0, 1, 5}) {
        ZenoRunConfig cfg = base_config(1024);
        cfg.field = states::Fock{n};
        cfg.atom = states::BlochVector{pi / 2, 0.0};
        const auto hs = cfg.hamiltonians();
        const auto rho0 = states::realize_atomic_state(cfg.atom);
        for (const auto& s : engine::run_effective(cfg, hs).steps)
            eff_dev = std::max(eff_dev, std::abs(s.rho_atom(0, 0).real() - rho0(0, 0).real()));
        for (const auto& s : engine::run_zeno_exact(cfg, hs).steps)
            exact_drift = std::max(exact_drift, std::abs(s.rho_atom(0, 0).real() - rho0(0, 0).real()));
    }
    return {eff_dev < 1e-12 && exact_drift < 1e-3, "effective deviation " + sci(eff_dev) + ", exact drift " + sci(exact_drift)};
}

Outcome superposed_coupling() {
    const JCParams p{1.0, 1.0, 0.1};
    double grid_err = 0, zero_mag = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            for (int n : {0, 1, 5}) {
                const double th = 0.5 * pi * i / 4, ph = -pi + 2 * pi * j / 4;
                const auto hs = models::make_hamiltonian_set(p, states::SuperposedFock{n, th, ph}, 16);
                const Complex want = p.g * std::cos(th) * std::sin(th) * std::sqrt(n + 1.0) * std::polar(1.0, ph);
                grid_err = std::max(grid_err, std::abs(models::effective_coupling(hs.effective) - want));
            }
    for (double th : {0.0, pi / 2})
        for (int n : {0, 1, 5}) {
            const auto hs = models::make_hamiltonian_set(p, states::SuperposedFock{n, th, 0.7}, 16);
            zero_mag = std::max(zero_mag, std::abs(models::effective_coupling(hs.effective)));
        }
    bool peak = true;
    for (int n : {0, 1, 5}) {
        int best = -1;
        double best_mag = -1;
        for (int k = 0; k <= 100; ++k) {
            const auto hs = models::make_hamiltonian_set(p, states::SuperposedFock{n, 0.5 * pi * k / 100, 0.7}, 16);
            const double m = std::abs(models::effective_coupling(hs.effective));
            if (m > best_mag) best_mag = m, best = k;
        }
        peak = peak && best == 50;
    }
    return {grid_err < 1e-12 && zero_mag == 0.0 && peak,
            "grid error " + sci(grid_err) + ", |coupling| at theta in {0, pi/2} " + sci(zero_mag) +
                (peak ? ", peak at pi/4" : ", peak misplaced")};
}

Outcome superoperator_order() {
    const auto cfg = base_config(1);
    const auto hs = cfg.hamiltonians();
    bool ok = true;
    std::string detail = "ratios";
    double prev = checks::single_step_discrepancy(cfg, hs, 0.1);
    for (double t : {0.05, 0.025, 0.0125}) {
        const double cur = checks::single_step_discrepancy(cfg, hs, t);
        const double ratio = prev / cur;
        ok = ok && ratio >= 6.0 && ratio <= 10.0;
        detail += " " + std::to_string(ratio);
        prev = cur;
    }
    return {ok, detail};
}

Outcome entanglement_inhibition() {
    const auto cfg = base_config(16);
    const auto hs = cfg.hamiltonians();
    double prev = 2.0, last = 0;
    bool monotone = true;
    std::string detail = "final-step entropy";
    for (int n : {16, 64, 256, 1024}) {
        ZenoRunConfig c = cfg;
        c.num_measurements = n;
        const auto tr = engine::run_zeno_exact(c, hs);
        if (!tr.steps.back().pre_measurement_entropy) return {false, "pre-measurement state not pure"};
        last = *tr.steps.back().pre_measurement_entropy;
        monotone = monotone && last < prev;
        prev = last;
        detail += " " + sci(last);
    }
    return {monotone && last < 1e-3, detail};
}

Outcome survival_scaling() {
    const auto cfg = base_config(64);
    const auto hs = cfg.hamiltonians();
    std::vector<analysis::ConvergencePoint> pts;
    for (int n : {64, 128, 256, 512, 1024}) {
        ZenoRunConfig c = cfg;
        c.num_measurements = n;
        pts.push_back({double(n), 1.0 - engine::survival_probability(engine::run_zeno_exact(c, hs))});
    }
    const auto rep = analysis::fit_convergence_order(pts);
    return {!rep.exact && rep.fitted_order >= -1.2 && rep.fitted_order <= -0.8,
            "slope " + std::to_string(rep.fitted_order) + ", loss at N=64 " + sci(pts.front().error)};
}

Outcome algebraic_suite() {
    const auto start = std::chrono::steady_clock::now();
    const auto results = checks::run_invariant_suite();
    const double secs = elapsed(start);
    int failed = 0;
    std::string names;
    for (const auto& r : results)
        if (!r.passed) {
            ++failed;
            names += " [" + r.name + ": " + r.detail + "]";
        }
    return {failed == 0 && secs < 30.0,
            std::to_string(results.size()) + " checks, " + std::to_string(failed) + " failed, " +
                std::to_string(secs) + " s" + names};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"C1 Zeno convergence order", zeno_convergence},
        {"C2 semiclassical equivalence", semiclassical_equivalence},
        {"C3 Fock freezing", fock_freezing},
        {"C4 superposed-Fock coupling", superposed_coupling},
        {"C5 superoperator single-step order", superoperator_order},
        {"C6 entanglement inhibition", entanglement_inhibition},
        {"C7 survival scaling", survival_scaling},
        {"C8 algebraic invariant suite", algebraic_suite},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o{false, ""};
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %s: %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
        failed += o.passed ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
