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

// Field and atomic states on the truncated space, plus the elementary
// operators that act on them.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <variant>

#include "zeno/hilbert.hpp"

namespace zeno {
namespace states {

/// Poisson tail bound below which the coherent-state truncation is accepted.
inline constexpr double TRUNCATION_DEFECT_TOL = 1e-8;

struct Fock {
    int n = 0;
    friend bool operator==(const Fock&, const Fock&) = default;
};

struct Coherent {
    Complex alpha{0.0, 0.0};
    friend bool operator==(const Coherent&, const Coherent&) = default;
};

// cos(theta)|n> + e^{i phi} sin(theta)|n+1>
struct SuperposedFock {
    int n = 0;
    double theta = 0.0;
    double phi = 0.0;
    friend bool operator==(const SuperposedFock&, const SuperposedFock&) = default;
};

using FieldStateSpec = std::variant<Fock, Coherent, SuperposedFock>;

struct Ground {
    friend bool operator==(const Ground&, const Ground&) = default;
};
struct Excited {
    friend bool operator==(const Excited&, const Excited&) = default;
};
// cos(polar/2)|e> + e^{i azimuth} sin(polar/2)|g>
struct BlochVector {
    double polar = 0.0;
    double azimuth = 0.0;
    friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

using AtomicStateSpec = std::variant<Ground, Excited, BlochVector>;

/// (cos x, sin x), exact when x is a multiple of pi/2 as represented in
/// double precision (so cos(pi/2) is 0, not 6e-17).
inline std::pair<double, double> cos_sin(double x) {
    constexpr double quarter = 0.5 * std::numbers::pi;
    const double q = std::nearbyint(x / quarter);
    if (x - q * quarter == 0.0 && std::abs(q) < 1e15) {
        switch (((static_cast<long long>(q) % 4) + 4) % 4) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    return {std::cos(x), std::sin(x)};
}

inline Complex unit_phase(double phi) {
    const auto [c, s] = cos_sin(phi);
    return {c, s};
}

// Atomic basis indices.
inline constexpr int EXCITED = 0;
inline constexpr int GROUND = 1;

inline ComplexMatrix sigma_z() {
    ComplexMatrix s(2, 2);
    s << 1.0, 0.0, 0.0, -1.0;
    return s;
}

inline ComplexMatrix sigma_x() {
    ComplexMatrix s(2, 2);
    s << 0.0, 1.0, 1.0, 0.0;
    return s;
}

// |e><g|
inline ComplexMatrix sigma_plus() {
    ComplexMatrix s = ComplexMatrix::Zero(2, 2);
    s(EXCITED, GROUND) = 1.0;
    return s;
}

inline ComplexMatrix sigma_minus() { return sigma_plus().adjoint(); }

struct LadderOperators {
    ComplexMatrix a;
    ComplexMatrix a_dagger;
};

/// Truncated a and a^dagger on D Fock levels. a^dagger|D-1> is dropped, so
/// [a, a^dagger] differs from the identity in its last diagonal entry.
inline LadderOperators field_ladder_operators(int dim) {
    if (dim < 2) throw DomainError("field truncation must be >= 2");
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    ComplexMatrix ad = a.adjoint();
    return {std::move(a), std::move(ad)};
}

inline ComplexMatrix number_operator(int dim) {
    ComplexMatrix n = ComplexMatrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

/// Truncation rule for a field spec when none is given. Coherent states use a
/// Poisson tail bound; Fock-type states keep several levels of headroom above
/// the highest occupied level.
inline int default_truncation(const FieldStateSpec& spec) {
    struct Visitor {
        int operator()(const Fock& f) const { return std::max(16, f.n + 8); }
        int operator()(const SuperposedFock& f) const { return std::max(16, f.n + 9); }
        int operator()(const Coherent& c) const {
            const double r = std::abs(c.alpha);
            return std::max(16, static_cast<int>(std::ceil(r * r + 8.0 * r + 10.0)));
        }
    };
    return std::visit(Visitor{}, spec);
}

struct RealizedField {
    PureState state;
    // 1 - sum_{n<D} |c_n|^2 before renormalisation; 0 for Fock-type states.
    double truncation_defect = 0.0;
};

inline RealizedField realize_field_state(const FieldStateSpec& spec, int dim) {
    if (dim < 2) throw DomainError("field truncation must be >= 2");
    struct Visitor {
        int dim;
        RealizedField operator()(const Fock& f) const {
            if (f.n < 0 || f.n >= dim)
                throw DomainError("Fock index " + std::to_string(f.n) +
                                  " outside truncation " + std::to_string(dim));
            return {PureState::basis(dim, f.n), 0.0};
        }
        RealizedField operator()(const SuperposedFock& f) const {
            if (f.n < 0 || f.n + 1 >= dim)
                throw DomainError("superposed Fock pair (" + std::to_string(f.n) + ", " +
                                  std::to_string(f.n + 1) + ") outside truncation " +
                                  std::to_string(dim));
            if (!std::isfinite(f.theta) || !std::isfinite(f.phi))
                throw DomainError("superposed Fock angles must be finite");
            ComplexVector v = ComplexVector::Zero(dim);
            const auto [c, s] = cos_sin(f.theta);
            v(f.n) = c;
            v(f.n + 1) = s * unit_phase(f.phi);
            return {PureState::normalized(std::move(v)), 0.0};
        }
        RealizedField operator()(const Coherent& c) const {
            const Complex alpha = c.alpha;
            if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
                throw DomainError("coherent amplitude must be finite");
            // c_n = e^{-|a|^2/2} a^n / sqrt(n!), by the recurrence c_n = c_{n-1} a / sqrt(n).
            ComplexVector v(dim);
            v(0) = std::exp(-0.5 * std::norm(alpha));
            for (int n = 1; n < dim; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
            const double defect = 1.0 - v.squaredNorm();
            if (defect > TRUNCATION_DEFECT_TOL)
                throw DomainError("coherent state alpha=(" + std::to_string(alpha.real()) + "," +
                                  std::to_string(alpha.imag()) + ") truncation defect " +
                                  std::to_string(defect) + " at D=" + std::to_string(dim));
            return {PureState::normalized(std::move(v)), std::max(0.0, defect)};
        }
    };
    return std::visit(Visitor{dim}, spec);
}

inline PureState atomic_pure_state(const AtomicStateSpec& spec) {
    struct Visitor {
        PureState operator()(const Ground&) const { return PureState::basis(2, GROUND); }
        PureState operator()(const Excited&) const { return PureState::basis(2, EXCITED); }
        PureState operator()(const BlochVector& b) const {
            if (!std::isfinite(b.polar) || !std::isfinite(b.azimuth))
                throw DomainError("Bloch angles must be finite");
            ComplexVector v(2);
            const auto [c, s] = cos_sin(0.5 * b.polar);
            v(EXCITED) = c;
            v(GROUND) = s * unit_phase(b.azimuth);
            return PureState::normalized(std::move(v));
        }
    };
    return std::visit(Visitor{}, spec);
}

inline DensityMatrix realize_atomic_state(const AtomicStateSpec& spec) {
    return DensityMatrix::from_pure(atomic_pure_state(spec));
}

inline Complex expectation(const PureState& psi, const ComplexMatrix& op) {
    return psi.amplitudes().dot(op * psi.amplitudes());
}

}  // namespace states

using states::AtomicStateSpec;
using states::FieldStateSpec;

}  // namespace zeno
