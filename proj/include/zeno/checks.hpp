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

// Built-in invariant suite behind `zeno check`. Every check is deterministic
// for a given seed.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "zeno/analysis.hpp"
#include "zeno/config.hpp"
#include "zeno/engine.hpp"
#include "zeno/experiment.hpp"
#include "zeno/hilbert.hpp"
#include "zeno/models.hpp"
#include "zeno/random.hpp"
#include "zeno/states.hpp"

namespace zeno {
namespace checks {

inline constexpr std::uint64_t DEFAULT_SEED = 20260214;

struct CheckResult {
    std::string module;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// The resonant coherent-state configuration used for route comparisons:
/// omega_a = omega = 1, g = 0.1, T = 5, atom |g>, field |alpha = 1>.
inline ZenoRunConfig reference_config(int n = 64) {
    ZenoRunConfig cfg;
    cfg.params = {1.0, 1.0, 0.1};
    cfg.field = states::Coherent{{1.0, 0.0}};
    cfg.atom = states::Ground{};
    cfg.total_time = 5.0;
    cfg.num_measurements = n;
    return cfg;
}

/// Max entrywise difference between the normalised single-step reduced states
/// of the superoperator and exact routes after one interval t.
inline double single_step_discrepancy(const ZenoRunConfig& base, const HamiltonianSet& hs, double t) {
    ZenoRunConfig cfg = base;
    cfg.total_time = t;
    cfg.num_measurements = 1;
    const auto exact = engine::run_zeno_exact(cfg, hs);
    const auto super = engine::run_superoperator(cfg, hs);
    return hilbert::max_abs(exact.final_state().matrix() - super.final_state().matrix());
}

namespace detail {

inline std::string sci(double v) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << v;
    return s.str();
}

class Suite {
public:
    explicit Suite(std::uint64_t seed) : rng_(seed) {}

    random::Engine& rng() { return rng_; }

    void add(std::string module, std::string name, const std::function<std::string(bool&)>& body) {
        CheckResult r{std::move(module), std::move(name), false, {}};
        try {
            bool ok = true;
            r.detail = body(ok);
            r.passed = ok;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        results_.push_back(std::move(r));
    }

    std::vector<CheckResult> take() { return std::move(results_); }

private:
    random::Engine rng_;
    std::vector<CheckResult> results_;
};

inline void hilbert_checks(Suite& s) {
    s.add("hilbert", "tensor product associativity (exact)", [&](bool& ok) {
        double worst = 0;
        for (int rep = 0; rep < 5; ++rep) {
            const auto a = random::gaussian_integer_matrix(s.rng(), 2, 3);
            const auto b = random::gaussian_integer_matrix(s.rng(), 3, 2);
            const auto c = random::gaussian_integer_matrix(s.rng(), 2, 4);
            using hilbert::tensor_product;
            worst = std::max(worst, hilbert::max_abs(tensor_product(tensor_product(a, b), c) -
                                                     tensor_product(a, tensor_product(b, c))));
        }
        ok = worst == 0.0;
        return "max diff " + sci(worst);
    });
    s.add("hilbert", "partial trace recovers atomic factor", [&](bool& ok) {
        double worst = 0;
        for (int d : {2, 5, 19}) {
            const auto ra = random::density_matrix(s.rng(), 2);
            const auto rb = random::density_matrix(s.rng(), d);
            const auto prod = hilbert::tensor_product(ra, rb);
            const auto rec = hilbert::partial_trace_field(prod, SpaceLayout(d));
            worst = std::max(worst, hilbert::max_abs(rec.matrix() - ra.matrix()));
        }
        ok = worst < 1e-12;
        return "max error " + sci(worst);
    });
    s.add("hilbert", "propagators are unitary and compose", [&](bool& ok) {
        std::uniform_real_distribution<double> ut(-3.0, 3.0);
        double unit = 0, group = 0;
        for (int d : {2, 10, 38}) {
            const auto h = random::hermitian(s.rng(), d);
            const double t1 = ut(s.rng()), t2 = ut(s.rng());
            const auto eig = hilbert::herm_eig(h);
            const auto u1 = hilbert::unitary_from_hamiltonian(eig, t1);
            const auto u2 = hilbert::unitary_from_hamiltonian(eig, t2);
            unit = std::max(unit, hilbert::unitarity_error(u1));
            group = std::max(group, hilbert::max_abs(u1 * u2 - hilbert::unitary_from_hamiltonian(eig, t1 + t2)));
        }
        ok = unit < 1e-10 && group < 1e-9;
        return "unitarity " + sci(unit) + ", composition " + sci(group);
    });
    s.add("hilbert", "Hermitian eigendecomposition reconstructs", [&](bool& ok) {
        double worst_rel = 0;
        for (int d : {2, 7, 38}) {
            const ComplexMatrix h = 5.0 * random::hermitian(s.rng(), d);
            const auto eig = hilbert::herm_eig(h);
            const double radius = eig.values.cwiseAbs().maxCoeff();
            const ComplexMatrix rec = eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
            worst_rel = std::max(worst_rel, hilbert::max_abs(rec - h) / radius);
            if (hilbert::unitarity_error(eig.vectors) > 1e-10) ok = false;
            for (int k = 1; k < d; ++k)
                if (eig.values(k) < eig.values(k - 1)) ok = false;
        }
        ok = ok && worst_rel < 1e-9;
        return "relative reconstruction " + sci(worst_rel);
    });
    s.add("hilbert", "produced density matrices satisfy invariants", [&](bool& ok) {
        const auto hs = reference_config().hamiltonians();
        const auto u = hilbert::unitary_from_hamiltonian(hs.full, 0.7);
        DensityMatrix rho(hilbert::tensor_product(states::realize_atomic_state(states::Ground{}).matrix(),
                                                  hs.b_state.projector()));
        double worst_herm = 0, worst_tr = 0, min_eig = 1;
        for (int k = 0; k < 5; ++k) {
            auto st = engine::step_exact(rho, u, hs.b_state, hs.layout);
            for (const ComplexMatrix* m : {&st.rho_next.matrix(), &st.pre_measurement.matrix()}) {
                worst_herm = std::max(worst_herm, hilbert::hermiticity_error(*m));
                worst_tr = std::max(worst_tr, std::abs(m->trace() - Complex(1)));
                min_eig = std::min(min_eig, analysis::hermitian_eigenvalues(*m).minCoeff());
            }
            rho = st.rho_next;
        }
        ok = worst_herm <= HERM_TOL && worst_tr <= TRACE_TOL && min_eig >= -PSD_TOL;
        return "herm " + sci(worst_herm) + ", trace " + sci(worst_tr) + ", min eig " + sci(min_eig);
    });
}

inline void states_checks(Suite& s) {
    s.add("states", "realized states have unit norm", [&](bool& ok) {
        double worst = 0;
        const std::vector<FieldStateSpec> specs{states::Fock{3}, states::Coherent{{1.5, -0.5}},
                                                states::SuperposedFock{2, 0.3, 1.1}, states::Coherent{{0, 0}}};
        for (const auto& f : specs)
            worst = std::max(worst, std::abs(states::realize_field_state(f, 24).state.amplitudes().norm() - 1));
        for (const AtomicStateSpec& a : {AtomicStateSpec{states::Ground{}}, AtomicStateSpec{states::Excited{}},
                                         AtomicStateSpec{states::BlochVector{1.2, -2.0}}})
            worst = std::max(worst, std::abs(states::atomic_pure_state(a).amplitudes().norm() - 1));
        ok = worst < 1e-12;
        return "max norm defect " + sci(worst);
    });
    s.add("states", "coherent truncation defect bound", [&](bool& ok) {
        double worst = 0;
        int count = 0;
        for (double re = -4; re <= 4; re += 0.5)
            for (double im = -4; im <= 4; im += 0.5) {
                const Complex alpha(re, im);
                const double r = std::abs(alpha);
                if (r > 4) continue;
                const int d = static_cast<int>(std::ceil(r * r + 8 * r + 10));
                worst = std::max(worst, states::realize_field_state(states::Coherent{alpha}, d).truncation_defect);
                ++count;
            }
        ok = worst < 1e-8;
        return std::to_string(count) + " amplitudes, max defect " + sci(worst);
    });
    s.add("states", "annihilation expectation closed forms", [&](bool& ok) {
        double worst_coh = 0, worst_sup = 0, worst_fock = 0;
        for (Complex alpha : {Complex(0.5, 0), Complex(1, 1), Complex(-2, 0.5), Complex(0, 3)}) {
            const states::Coherent c{alpha};
            const int d = states::default_truncation(c);
            const auto a = states::field_ladder_operators(d).a;
            worst_coh = std::max(worst_coh, std::abs(states::expectation(states::realize_field_state(c, d).state, a) - alpha));
        }
        const auto a = states::field_ladder_operators(20).a;
        for (int n : {0, 3, 7})
            for (double th : {0.0, 0.4, 1.3})
                for (double ph : {0.0, 2.1}) {
                    const auto b = states::realize_field_state(states::SuperposedFock{n, th, ph}, 20).state;
                    const Complex want = std::cos(th) * std::sin(th) * std::polar(std::sqrt(n + 1.0), ph);
                    worst_sup = std::max(worst_sup, std::abs(states::expectation(b, a) - want));
                }
        for (int n : {0, 4, 19})
            worst_fock = std::max(worst_fock, std::abs(states::expectation(states::realize_field_state(states::Fock{n}, 20).state, a)));
        ok = worst_coh < 1e-8 && worst_sup < 1e-12 && worst_fock == 0.0;
        return "coherent " + sci(worst_coh) + ", superposed " + sci(worst_sup) + ", fock " + sci(worst_fock);
    });
}

inline void models_checks(Suite& s) {
    const JCParams p{1.0, 1.0, 0.1};
    s.add("models", "effective Hamiltonian is the field-state reduction", [&](bool& ok) {
        double worst = 0, herm = 0;
        for (const FieldStateSpec& f : {FieldStateSpec{states::Fock{2}}, FieldStateSpec{states::Coherent{{1, -1}}},
                                        FieldStateSpec{states::SuperposedFock{1, 0.7, 0.3}}}) {
            const auto hs = models::make_hamiltonian_set(p, f, 24);
            const ComplexMatrix iso =
                hilbert::tensor_product(ComplexMatrix::Identity(2, 2), ComplexMatrix(hs.b_state.amplitudes()));
            worst = std::max(worst, hilbert::max_abs(hs.effective - iso.adjoint() * hs.full * iso));
            herm = std::max({herm, hilbert::hermiticity_error(hs.full), hilbert::hermiticity_error(hs.effective)});
        }
        ok = worst < 1e-10 && herm < 1e-10;
        return "reduction " + sci(worst) + ", hermiticity " + sci(herm);
    });
    s.add("models", "Fock measurement decouples the atom", [&](bool& ok) {
        double worst = 0;
        for (int n : {0, 1, 5, 12}) {
            const auto hs = models::make_hamiltonian_set(p, states::Fock{n}, 20);
            worst = std::max({worst, std::abs(hs.effective(0, 1)), std::abs(hs.effective(1, 0))});
        }
        ok = worst == 0.0;
        return "max off-diagonal " + sci(worst);
    });
    s.add("models", "superposed coupling peaks at theta = pi/4", [&](bool& ok) {
        int best = -1;
        double best_mag = -1;
        const int steps = 90;
        for (int k = 0; k <= steps; ++k) {
            const double th = 0.5 * std::numbers::pi * k / steps;
            const auto hs = models::make_hamiltonian_set(p, states::SuperposedFock{3, th, 0.8}, 16);
            const double mag = std::abs(models::effective_coupling(hs.effective));
            if (mag > best_mag) best_mag = mag, best = k;
        }
        ok = best == steps / 2;
        return "argmax theta index " + std::to_string(best) + " of " + std::to_string(steps);
    });
    s.add("models", "coherent effective Hamiltonian converges in D", [&](bool& ok) {
        double worst = 0;
        for (Complex alpha : {Complex(0.5, 0), Complex(1, 0), Complex(2, 0), Complex(1, 1), Complex(-3, 1)}) {
            const int d = states::default_truncation(states::Coherent{alpha});
            const auto h1 = models::make_hamiltonian_set(p, states::Coherent{alpha}, d).effective;
            const auto h2 = models::make_hamiltonian_set(p, states::Coherent{alpha}, 2 * d).effective;
            worst = std::max(worst, hilbert::max_abs(h1 - h2));
        }
        ok = worst < 1e-9;
        return "max |H(D) - H(2D)| " + sci(worst);
    });
    s.add("models", "constant shift leaves effective evolution unchanged", [&](bool& ok) {
        double worst = 0;
        for (const FieldStateSpec& f : {FieldStateSpec{states::Fock{2}}, FieldStateSpec{states::Coherent{{1, 0.5}}},
                                        FieldStateSpec{states::SuperposedFock{0, 0.6, 1.0}}}) {
            ZenoRunConfig cfg = reference_config(16);
            cfg.field = f;
            cfg.atom = states::BlochVector{1.0, 0.4};
            const auto hs = cfg.hamiltonians();
            auto shifted = hs;
            shifted.effective += 3.75 * ComplexMatrix::Identity(2, 2);
            const auto a = engine::run_effective(cfg, hs);
            const auto b = engine::run_effective(cfg, shifted);
            for (std::size_t k = 0; k < a.steps.size(); ++k)
                worst = std::max(worst, hilbert::max_abs(a.steps[k].rho_atom.matrix() - b.steps[k].rho_atom.matrix()));
        }
        ok = worst < 1e-12;
        return "max difference " + sci(worst);
    });
}

inline void engine_checks(Suite& s) {
    const auto cfg = reference_config();
    const auto hs = cfg.hamiltonians();
    s.add("engine", "exact route converges to effective route at order 1/N", [&](bool& ok) {
        std::vector<analysis::ConvergencePoint> pts;
        const auto eff = engine::run_effective(cfg, hs, 1).final_state();
        for (int n : {64, 128, 256, 512, 1024}) {
            ZenoRunConfig c = cfg;
            c.num_measurements = n;
            pts.push_back({double(n), analysis::trace_distance(engine::run_zeno_exact(c, hs).final_state(), eff)});
        }
        const auto rep = analysis::fit_convergence_order(pts);
        ok = !rep.exact && -rep.fitted_order >= 0.8 && -rep.fitted_order <= 1.2;
        return "order " + std::to_string(-rep.fitted_order) + ", residual " + sci(rep.fit_residual);
    });
    s.add("engine", "superoperator matches exact step to third order", [&](bool& ok) {
        std::string detail;
        double prev = single_step_discrepancy(cfg, hs, 0.1);
        for (double t : {0.05, 0.025, 0.0125}) {
            const double cur = single_step_discrepancy(cfg, hs, t);
            const double ratio = prev / cur;
            if (!(ratio >= 6.0 && ratio <= 10.0)) ok = false;
            detail += (detail.empty() ? "ratios " : ", ") + std::to_string(ratio);
            prev = cur;
        }
        return detail;
    });
    s.add("engine", "effective route preserves purity", [&](bool& ok) {
        ZenoRunConfig c = cfg;
        c.atom = states::BlochVector{0.9, 2.0};
        c.num_measurements = 200;
        const auto tr = engine::run_effective(c, hs);
        double worst = 0;
        for (const auto& st : tr.steps) worst = std::max(worst, std::abs(analysis::purity(st.rho_atom) - 1.0));
        ok = worst < 1e-10;
        return "max purity drift " + sci(worst);
    });
    s.add("engine", "survival probabilities bounded and nonincreasing", [&](bool& ok) {
        double max_p = 0;
        for (Route r : {Route::Exact, Route::Superoperator}) {
            ZenoRunConfig c = cfg;
            c.num_measurements = 32;
            const auto tr = engine::run_route(r, c, hs);
            double prev = 1.0;
            for (const auto& st : tr.steps) {
                max_p = std::max(max_p, st.step_survival);
                if (st.step_survival < 0 || st.step_survival > 1 + engine::SURVIVAL_SLACK) ok = false;
                if (st.cumulative_survival > prev) ok = false;
                prev = st.cumulative_survival;
            }
        }
        return "max step survival " + std::to_string(max_p);
    });
}

inline void analysis_checks(Suite& s) {
    s.add("analysis", "trace distance is a metric", [&](bool& ok) {
        double sym = 0, tri = 0;
        for (int rep = 0; rep < 20; ++rep) {
            const int d = rep % 2 ? 2 : 4;
            const auto a = random::density_matrix(s.rng(), d), b = random::density_matrix(s.rng(), d),
                       c = random::density_matrix(s.rng(), d);
            using analysis::trace_distance;
            sym = std::max(sym, std::abs(trace_distance(a, b) - trace_distance(b, a)));
            tri = std::max(tri, trace_distance(a, c) - trace_distance(a, b) - trace_distance(b, c));
        }
        ok = sym == 0.0 && tri < 1e-12;
        return "symmetry " + sci(sym) + ", triangle excess " + sci(tri);
    });
    s.add("analysis", "trace distance is unitarily invariant", [&](bool& ok) {
        double worst = 0;
        for (int rep = 0; rep < 10; ++rep) {
            const int d = 2 + rep % 3;
            const auto a = random::density_matrix(s.rng(), d), b = random::density_matrix(s.rng(), d);
            const auto u = random::unitary(s.rng(), d);
            const auto ua = DensityMatrix::normalized(u * a.matrix() * u.adjoint());
            const auto ub = DensityMatrix::normalized(u * b.matrix() * u.adjoint());
            worst = std::max(worst, std::abs(analysis::trace_distance(ua, ub) - analysis::trace_distance(a, b)));
        }
        ok = worst < 1e-10;
        return "max deviation " + sci(worst);
    });
    s.add("analysis", "projection removes entanglement; pre-measurement entropy falls with N", [&](bool& ok) {
        const auto cfg = reference_config();
        const auto hs = cfg.hamiltonians();
        double post = 0, prev_pre = 2;
        std::string pre_list;
        for (int n : {16, 64, 256}) {
            ZenoRunConfig c = cfg;
            c.num_measurements = n;
            const auto u = hilbert::unitary_from_hamiltonian(hs.full, c.step_time());
            DensityMatrix rho(hilbert::tensor_product(states::realize_atomic_state(c.atom).matrix(), hs.b_state.projector()));
            double pre = 0;
            for (int k = 1; k <= n; ++k) {
                auto st = engine::step_exact(rho, u, hs.b_state, hs.layout, k);
                post = std::max(post, analysis::entanglement_entropy(st.rho_next, hs.layout));
                pre = analysis::entanglement_entropy(st.pre_measurement, hs.layout);
                rho = st.rho_next;
            }
            if (!(pre < prev_pre)) ok = false;
            prev_pre = pre;
            pre_list += (pre_list.empty() ? "" : ", ") + sci(pre);
        }
        ok = ok && post < 1e-8;
        return "post max " + sci(post) + "; pre at final step " + pre_list;
    });
    s.add("analysis", "effective evolution keeps initial purity", [&](bool& ok) {
        double worst = 0;
        for (const AtomicStateSpec& a : {AtomicStateSpec{states::Ground{}}, AtomicStateSpec{states::BlochVector{2.0, 1.0}}}) {
            ZenoRunConfig c = reference_config(50);
            c.atom = a;
            const auto tr = engine::run_effective(c);
            worst = std::max(worst, std::abs(analysis::purity(tr.final_state()) -
                                             analysis::purity(states::realize_atomic_state(a))));
        }
        ok = worst < 1e-10;
        return "max deviation " + sci(worst);
    });
}

inline void cli_checks(Suite& s) {
    s.add("cli", "config serialize/parse round trip", [&](bool& ok) {
        std::uniform_real_distribution<double> ur(-5, 5);
        std::uniform_int_distribution<int> ui(0, 2);
        int count = 0;
        for (int rep = 0; rep < 50; ++rep, ++count) {
            cli::ExperimentSpec spec;
            spec.run.params = {ur(s.rng()), ur(s.rng()), std::abs(ur(s.rng()))};
            spec.run.total_time = 0.1 + std::abs(ur(s.rng()));
            spec.run.num_measurements = 1 + rep;
            switch (ui(s.rng())) {
                case 0: spec.run.field = states::Fock{rep % 7}; break;
                case 1: spec.run.field = states::Coherent{{ur(s.rng()), ur(s.rng())}}; break;
                default: spec.run.field = states::SuperposedFock{rep % 5, ur(s.rng()), ur(s.rng())};
            }
            switch (ui(s.rng())) {
                case 0: spec.run.atom = states::Ground{}; break;
                case 1: spec.run.atom = states::Excited{}; break;
                default: spec.run.atom = states::BlochVector{ur(s.rng()), ur(s.rng())};
            }
            if (rep % 3 == 0) spec.run.truncation = 10 + rep;
            if (rep % 4 == 0) spec.sweep = {8, 16, 32 + rep};
            if (rep % 5 == 0) spec.routes = {Route::Effective, Route::Exact};
            if (rep % 2 == 0) spec.output_format = cli::OutputFormat::Json;
            spec.output_path = "out_" + std::to_string(rep) + ".dat";
            if (rep % 6 == 0) spec.seed = 0xFFFFFFFFFFFFFFFFull - rep;
            if (!(cli::parse_config(cli::serialize_config(spec)) == spec)) ok = false;
        }
        return std::to_string(count) + " specs";
    });
    s.add("cli", "trace tables are deterministic and physical", [&](bool& ok) {
        cli::ExperimentSpec spec;
        spec.run = reference_config(16);
        spec.run.atom = states::BlochVector{1.1, 0.3};
        spec.sweep = {8, 16, 32};
        auto render = [&] {
            std::ostringstream out;
            cli::write_trace_csv(out, spec, cli::execute_plan(spec, cli::plan_experiment(spec)));
            return out.str();
        };
        const std::string first = render();
        if (first != render()) ok = false;
        std::istringstream in(first);
        std::string line;
        int rows = 0;
        double worst_tr = 0, worst_psd = -1;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("route,", 0) == 0) continue;
            std::vector<std::string> f;
            std::stringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ',')) f.push_back(cell);
            if (f.size() != 11) { ok = false; continue; }
            const double ee = std::stod(f[4]), gg = std::stod(f[5]), re = std::stod(f[6]), im = std::stod(f[7]);
            worst_tr = std::max(worst_tr, std::abs(ee + gg - 1));
            worst_psd = std::max(worst_psd, re * re + im * im - ee * gg);
            ++rows;
        }
        ok = ok && rows == 3 * (8 + 16 + 32) && worst_tr < 1e-9 && worst_psd < 1e-9;
        return std::to_string(rows) + " rows, trace " + sci(worst_tr) + ", coherence excess " + sci(worst_psd);
    });
}

}  // namespace detail

inline std::vector<CheckResult> run_invariant_suite(std::uint64_t seed = DEFAULT_SEED) {
    detail::Suite suite(seed);
    detail::hilbert_checks(suite);
    detail::states_checks(suite);
    detail::models_checks(suite);
    detail::engine_checks(suite);
    detail::analysis_checks(suite);
    detail::cli_checks(suite);
    return suite.take();
}

}  // namespace checks
}  // namespace zeno
