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

// Seeded random operators for property checks.

#include <cmath>
#include <numbers>
#include <random>

#include "zeno/hilbert.hpp"

namespace zeno {
namespace random {

using Engine = std::mt19937_64;

inline ComplexMatrix gaussian_matrix(Engine& rng, int rows, int cols) {
    std::normal_distribution<double> nd;
    ComplexMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = Complex(nd(rng), nd(rng));
    return m;
}

// Entries a + ib with a, b in [-range, range]; products of these are exact.
inline ComplexMatrix gaussian_integer_matrix(Engine& rng, int rows, int cols, int range = 3) {
    std::uniform_int_distribution<int> ud(-range, range);
    ComplexMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = Complex(ud(rng), ud(rng));
    return m;
}

inline ComplexMatrix hermitian(Engine& rng, int dim) {
    const ComplexMatrix g = gaussian_matrix(rng, dim, dim);
    return 0.5 * (g + g.adjoint());
}

// Haar-distributed: QR of a Ginibre matrix with the phases of R's diagonal
// divided out.
inline ComplexMatrix unitary(Engine& rng, int dim) {
    Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_matrix(rng, dim, dim));
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR();
    for (int k = 0; k < dim; ++k) {
        const Complex d = r(k, k);
        if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
    }
    return q;
}

inline DensityMatrix density_matrix(Engine& rng, int dim, int rank = -1) {
    if (rank < 1) rank = dim;
    const ComplexMatrix g = gaussian_matrix(rng, dim, rank);
    return DensityMatrix::normalized(g * g.adjoint());
}

inline PureState pure_state(Engine& rng, int dim) {
    return PureState::normalized(gaussian_matrix(rng, dim, 1).col(0));
}

}  // namespace random
}  // namespace zeno
