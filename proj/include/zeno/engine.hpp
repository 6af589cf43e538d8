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

// Zeno protocol evolution routes.
//
//   exact          repeated free evolution e^{-iHt} on the composite space
//                  followed by projection onto I (x) |B><B|
//   superoperator  the second-order short-time map on the atomic space,
//                  exponentiated as a 4 x 4 superoperator and applied N times
//   effective      the N -> infinity limit, unitary evolution under <H>_B
//
// All routes renormalise after every step; survival probabilities are kept
// separately so that their product recovers the unnormalised trace.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zeno/analysis.hpp"
#include "zeno/hilbert.hpp"
#include "zeno/models.hpp"
#include "zeno/states.hpp"

namespace zeno {
namespace engine {

// Projections less likely than this abort the run.
inline constexpr double SURVIVAL_CUTOFF = 1e-14;
// Allowed excess of a survival probability over 1 from rounding.
inline constexpr double SURVIVAL_SLACK = 1e-12;
// Required overlap of the post-projection field marginal with |B>.
inline constexpr double FIELD_FIDELITY_TOL = 1e-10;

enum class Route { Exact, Superoperator, Effective };

inline constexpr std::string_view route_name(Route r) {
    switch (r) {
        case Route::Exact: return "exact";
        case Route::Superoperator: return "superoperator";
        case Route::Effective: return "effective";
    }
    return "?";
}

struct ZenoRunConfig {
    JCParams params;
    FieldStateSpec field = states::Fock{0};
    AtomicStateSpec atom = states::Ground{};
    double total_time = 1.0;
    int num_measurements = 1;
    std::optional<int> truncation;  // empty: states::default_truncation

    void validate() const {
        params.validate();
        if (!std::isfinite(total_time) || !(total_time > 0.0))
            throw DomainError("total time T must be finite and positive");
        if (num_measurements < 1) throw DomainError("number of measurements N must be >= 1");
        if (truncation && *truncation < 2) throw DomainError("truncation must be >= 2");
    }

    friend bool operator==(const ZenoRunConfig&, const ZenoRunConfig&) = default;

    int resolved_truncation() const {
        return truncation ? *truncation : states::default_truncation(field);
    }

    double step_time() const { return total_time / num_measurements; }

    HamiltonianSet hamiltonians() const {
        validate();
        return models::make_hamiltonian_set(params, field, resolved_truncation());
    }
};

struct StepRecord {
    int step = 0;      // 1-based
    double time = 0.0;
    DensityMatrix rho_atom;
    double step_survival = 1.0;
    double cumulative_survival = 1.0;
    // Entanglement entropy (bits) of the composite state just before the
    // projection. Exact route with a pure composite state only.
    std::optional<double> pre_measurement_entropy;
};

struct ZenoTrace {
    Route route = Route::Exact;
    int num_measurements = 0;
    double total_time = 0.0;
    double truncation_defect = 0.0;
    std::vector<StepRecord> steps;

    const DensityMatrix& final_state() const { return steps.back().rho_atom; }
};

struct ExactStep {
    DensityMatrix rho_next;        // P U rho U^dag P / survival
    double survival;               // Tr[P U rho U^dag P]
    DensityMatrix pre_measurement; // U rho U^dag
};

/// One free evolution by u followed by the projection I (x) |B><B|.
inline ExactStep step_exact(const DensityMatrix& rho, const ComplexMatrix& u, const PureState& b,
                            const SpaceLayout& layout, int step_index = 1) {
    const int n = layout.composite_dim();
    if (rho.dim() != n || u.rows() != n || u.cols() != n)
        throw DimensionError("step_exact: state or propagator does not match layout");
    const ComplexMatrix evolved = u * rho.matrix() * u.adjoint();
    // P X P = (<B| X |B>)_atom (x) |B><B|
    const ComplexMatrix reduced = models::reduce_on_field_state(evolved, b, layout);
    const double survival = reduced.trace().real();
    if (!(survival >= SURVIVAL_CUTOFF)) throw SurvivalCutoff(step_index, survival);
    const DensityMatrix atom = DensityMatrix::normalized(reduced);
    DensityMatrix next(hilbert::tensor_product(atom.matrix(), b.projector()));
    const ComplexMatrix field = hilbert::partial_trace_atom(next.matrix(), layout);
    const double overlap = b.amplitudes().dot(field * b.amplitudes()).real();
    if (overlap < 1.0 - FIELD_FIDELITY_TOL)
        throw DomainError("step_exact: projected field marginal departs from |B>");
    return {std::move(next), survival, DensityMatrix::normalized(evolved)};
}

namespace detail {

inline DensityMatrix initial_composite(const ZenoRunConfig& cfg, const HamiltonianSet& hs) {
    return DensityMatrix(hilbert::tensor_product(states::realize_atomic_state(cfg.atom).matrix(),
                                                 hs.b_state.projector()));
}

inline ZenoTrace empty_trace(Route route, const ZenoRunConfig& cfg, const HamiltonianSet& hs) {
    cfg.validate();
    if (hs.layout.field_dim() != cfg.resolved_truncation())
        throw DimensionError("Hamiltonian set truncation does not match config");
    ZenoTrace tr;
    tr.route = route;
    tr.num_measurements = cfg.num_measurements;
    tr.total_time = cfg.total_time;
    tr.truncation_defect = hs.truncation_defect;
    return tr;
}

}  // namespace detail

/// N rounds of exact free evolution for T/N followed by projection.
inline ZenoTrace run_zeno_exact(const ZenoRunConfig& cfg, const HamiltonianSet& hs) {
    ZenoTrace tr = detail::empty_trace(Route::Exact, cfg, hs);
    const double t = cfg.step_time();
    const ComplexMatrix u = hilbert::unitary_from_hamiltonian(hs.full, t);
    DensityMatrix rho = detail::initial_composite(cfg, hs);
    double cumulative = 1.0;
    tr.steps.reserve(cfg.num_measurements);
    for (int k = 1; k <= cfg.num_measurements; ++k) {
        ExactStep st = step_exact(rho, u, hs.b_state, hs.layout, k);
        cumulative *= st.survival;
        std::optional<double> entropy;
        if (analysis::purity(st.pre_measurement) >= 1.0 - analysis::PURE_TOL)
            entropy = analysis::entanglement_entropy(st.pre_measurement, hs.layout);
        tr.steps.push_back({k, k * t, hilbert::partial_trace_field(st.rho_next, hs.layout),
                            st.survival, cumulative, entropy});
        rho = std::move(st.rho_next);
    }
    return tr;
}

inline ZenoTrace run_zeno_exact(const ZenoRunConfig& cfg) { return run_zeno_exact(cfg, cfg.hamiltonians()); }

/// Column-stacked 4 x 4 generator of rho -> A rho + rho A^dag with
/// A = -i t <H>_B - (t^2/2)(<H^2>_B - <H>_B^2). Its exponential reproduces the
/// projected short-time map
///   rho - i t [<H>, rho] - (t^2/2)(<H^2> rho - 2 <H> rho <H> + rho <H^2>)
/// through second order in t.
inline ComplexMatrix second_order_generator(const ComplexMatrix& h1, const ComplexMatrix& h2, double t) {
    if (h1.rows() != h1.cols() || h2.rows() != h1.rows() || h2.cols() != h1.cols())
        throw DimensionError("second_order_generator: operator shapes differ");
    const Eigen::Index d = h1.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    const ComplexMatrix a = Complex(0.0, -t) * h1 - (0.5 * t * t) * (h2 - h1 * h1);
    // vec(A X B) = (B^T (x) A) vec(X)
    return hilbert::tensor_product(id, a) + hilbert::tensor_product(ComplexMatrix(a.conjugate()), id);
}

inline ComplexVector vectorize(const ComplexMatrix& m) {
    return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

inline ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index dim) {
    return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

/// The atomic-space map e^{G} for one measurement interval t, as a 4 x 4 matrix.
inline ComplexMatrix superoperator_step(const HamiltonianSet& hs, double t) {
    return hilbert::expm(second_order_generator(hs.effective, hs.effective_squared, t)).value;
}

/// N applications of the second-order superoperator. The trace lost in each
/// application is reported as that step's survival estimate.
inline ZenoTrace run_superoperator(const ZenoRunConfig& cfg, const HamiltonianSet& hs) {
    ZenoTrace tr = detail::empty_trace(Route::Superoperator, cfg, hs);
    const double t = cfg.step_time();
    const ComplexMatrix step = superoperator_step(hs, t);
    DensityMatrix rho = states::realize_atomic_state(cfg.atom);
    double cumulative = 1.0;
    tr.steps.reserve(cfg.num_measurements);
    for (int k = 1; k <= cfg.num_measurements; ++k) {
        const ComplexMatrix next = unvectorize(step * vectorize(rho.matrix()), 2);
        const double survival = next.trace().real();
        if (!(survival >= SURVIVAL_CUTOFF)) throw SurvivalCutoff(k, survival);
        cumulative *= survival;
        rho = DensityMatrix::normalized(next);
        tr.steps.push_back({k, k * t, rho, survival, cumulative, std::nullopt});
    }
    return tr;
}

inline ZenoTrace run_superoperator(const ZenoRunConfig& cfg) {
    return run_superoperator(cfg, cfg.hamiltonians());
}

inline DensityMatrix evolve_effective(const hilbert::HermitianEigen& eig, const DensityMatrix& rho, double t) {
    if (t == 0.0) return rho;
    const ComplexMatrix u = hilbert::unitary_from_hamiltonian(eig, t);
    return DensityMatrix::normalized(u * rho.matrix() * u.adjoint());
}

/// e^{-i h t} rho e^{i h t} on the atomic space.
inline DensityMatrix evolve_effective(const ComplexMatrix& h_eff, const DensityMatrix& rho, double t) {
    if (h_eff.rows() != rho.dim()) throw DimensionError("evolve_effective: dims differ");
    return evolve_effective(hilbert::herm_eig(h_eff), rho, t);
}

/// rho_A(t) = e^{-i<H>_B t} rho_A(0) e^{i<H>_B t} at t_k = k T / samples.
inline ZenoTrace run_effective(const ZenoRunConfig& cfg, const HamiltonianSet& hs, int samples) {
    if (samples < 1) throw DomainError("run_effective: samples must be >= 1");
    ZenoTrace tr = detail::empty_trace(Route::Effective, cfg, hs);
    const auto eig = hilbert::herm_eig(hs.effective);
    const DensityMatrix rho0 = states::realize_atomic_state(cfg.atom);
    tr.steps.reserve(samples);
    for (int k = 1; k <= samples; ++k) {
        const double time = cfg.total_time * k / samples;
        tr.steps.push_back({k, time, evolve_effective(eig, rho0, time), 1.0, 1.0, std::nullopt});
    }
    return tr;
}

inline ZenoTrace run_effective(const ZenoRunConfig& cfg, const HamiltonianSet& hs) {
    return run_effective(cfg, hs, cfg.num_measurements);
}

inline ZenoTrace run_effective(const ZenoRunConfig& cfg, int samples) {
    return run_effective(cfg, cfg.hamiltonians(), samples);
}

inline ZenoTrace run_effective(const ZenoRunConfig& cfg) {
    return run_effective(cfg, cfg.hamiltonians(), cfg.num_measurements);
}

inline ZenoTrace run_route(Route route, const ZenoRunConfig& cfg, const HamiltonianSet& hs) {
    switch (route) {
        case Route::Exact: return run_zeno_exact(cfg, hs);
        case Route::Superoperator: return run_superoperator(cfg, hs);
        case Route::Effective: return run_effective(cfg, hs);
    }
    throw DomainError("unknown route");
}

/// Product of the per-step survival probabilities, clamped to [0, 1].
inline double survival_probability(const ZenoTrace& trace) {
    double p = 1.0;
    for (const auto& s : trace.steps) p *= s.step_survival;
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace engine

using engine::Route;
using engine::ZenoRunConfig;
using engine::ZenoTrace;

}  // namespace zeno
