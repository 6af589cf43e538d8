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

// Jaynes-Cummings Hamiltonian (rotating-wave form) and its reduction onto the
// atomic space for a given measured field state.

#include <cmath>
#include <string>

#include "zeno/hilbert.hpp"
#include "zeno/states.hpp"

namespace zeno {
namespace models {

struct JCParams {
    double omega_a = 1.0;  // atomic transition frequency
    double omega = 1.0;    // field mode frequency
    double g = 0.0;        // coupling, real and >= 0

    void validate() const {
        if (!std::isfinite(omega_a) || !std::isfinite(omega) || !std::isfinite(g))
            throw DomainError("JC parameters must be finite");
        if (g < 0.0) throw DomainError("coupling g must be nonnegative");
    }

    friend bool operator==(const JCParams&, const JCParams&) = default;
};

/// H = (omega_a/2) sz (x) I + omega I (x) a^dag a + g (s+ (x) a + s- (x) a^dag)
inline ComplexMatrix build_jc_hamiltonian(const JCParams& p, int dim) {
    p.validate();
    const auto [a, ad] = states::field_ladder_operators(dim);
    const ComplexMatrix id_atom = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix id_field = ComplexMatrix::Identity(dim, dim);
    using hilbert::tensor_product;
    ComplexMatrix h = (0.5 * p.omega_a) * tensor_product(states::sigma_z(), id_field) +
                      p.omega * tensor_product(id_atom, states::number_operator(dim)) +
                      p.g * (tensor_product(states::sigma_plus(), a) +
                             tensor_product(states::sigma_minus(), ad));
    return h;
}

/// (I (x) <B|) op (I (x) |B>): the 2 x 2 block of a composite operator seen
/// through the field state b.
inline ComplexMatrix reduce_on_field_state(const ComplexMatrix& op, const PureState& b,
                                           const SpaceLayout& layout) {
    if (op.rows() != layout.composite_dim() || op.cols() != layout.composite_dim())
        throw DimensionError("operator dim " + std::to_string(op.rows()) +
                             " does not match layout 2x" + std::to_string(layout.field_dim()));
    if (b.dim() != layout.field_dim())
        throw DimensionError("field state dim " + std::to_string(b.dim()) +
                             " does not match truncation " + std::to_string(layout.field_dim()));
    const int d = layout.field_dim();
    const ComplexVector& v = b.amplitudes();
    ComplexMatrix out(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(i, j) = v.dot(op.block(i * d, j * d, d, d) * v);
    return out;
}

/// <B|H|B> on the atomic space. Identity-proportional field energy terms are
/// kept; they drop out of the commutator that drives the atom.
inline ComplexMatrix effective_hamiltonian(const ComplexMatrix& full_h, const PureState& b,
                                           const SpaceLayout& layout) {
    hilbert::require_hermitian(full_h, "effective_hamiltonian");
    ComplexMatrix h = reduce_on_field_state(full_h, b, layout);
    return 0.5 * (h + h.adjoint());
}

/// Everything the evolution routes need for one (parameters, field state,
/// truncation) triple.
struct HamiltonianSet {
    SpaceLayout layout;
    ComplexMatrix full;               // composite H
    ComplexMatrix effective;          // <B|H|B>
    ComplexMatrix effective_squared;  // <B|H^2|B>
    PureState b_state;
    double truncation_defect = 0.0;

    // <H^2>_B - <H>_B^2, the atomic-space energy variance operator.
    ComplexMatrix variance() const { return effective_squared - effective * effective; }
};

inline HamiltonianSet make_hamiltonian_set(const JCParams& p, const FieldStateSpec& field, int dim) {
    SpaceLayout layout(dim);
    auto realized = states::realize_field_state(field, dim);
    ComplexMatrix full = build_jc_hamiltonian(p, dim);
    ComplexMatrix eff = effective_hamiltonian(full, realized.state, layout);
    ComplexMatrix sq = reduce_on_field_state(full * full, realized.state, layout);
    sq = 0.5 * (sq + sq.adjoint());
    return HamiltonianSet{layout,          std::move(full),          std::move(eff), std::move(sq),
                          realized.state, realized.truncation_defect};
}

// Entry <e|<H>_B|g>, the coefficient of sigma_+.
inline Complex effective_coupling(const ComplexMatrix& effective) {
    return effective(states::EXCITED, states::GROUND);
}

}  // namespace models

using models::HamiltonianSet;
using models::JCParams;

}  // namespace zeno
