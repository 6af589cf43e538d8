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

// Dense complex linear algebra on the atom (x) field Hilbert space.
//
// Composite basis ordering is atom-major: index k = atom * D + fock, with the
// atomic basis ordered (|e>, |g>). hbar = 1 throughout.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "zeno/errors.hpp"

namespace zeno {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double HERM_TOL = 1e-10;
inline constexpr double TRACE_TOL = 1e-10;
inline constexpr double PSD_TOL = 1e-10;
inline constexpr double NORM_TOL = 1e-12;

namespace hilbert {

inline bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

inline double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// max |M - M^dagger| entrywise.
inline double hermiticity_error(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return max_abs(m - m.adjoint());
}

// Generators are checked relative to their magnitude; at unit scale this is
// exactly HERM_TOL.
inline bool is_hermitian(const ComplexMatrix& m, double tol = HERM_TOL) {
    return m.rows() == m.cols() && hermiticity_error(m) <= tol * std::max(1.0, max_abs(m));
}

inline void require_hermitian(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols())
        throw DimensionError(std::string(what) + ": matrix is not square");
    if (!all_finite(m)) throw DomainError(std::string(what) + ": non-finite entries");
    if (!is_hermitian(m))
        throw DomainError(std::string(what) + ": matrix is not Hermitian (error " +
                          std::to_string(hermiticity_error(m)) + ")");
}

/// Fock truncation and composite index convention for one two-level atom
/// coupled to one field mode.
class SpaceLayout {
public:
    static constexpr int atom_dim = 2;

    explicit SpaceLayout(int field_dim) : field_dim_(field_dim) {
        if (field_dim < 2) throw DomainError("field dimension must be >= 2");
    }

    int field_dim() const noexcept { return field_dim_; }
    int composite_dim() const noexcept { return atom_dim * field_dim_; }
    int index(int atom, int fock) const noexcept { return atom * field_dim_ + fock; }

    friend bool operator==(const SpaceLayout&, const SpaceLayout&) = default;

private:
    int field_dim_;
};

/// Normalised state vector.
class PureState {
public:
    explicit PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.size() == 0) throw DimensionError("pure state must have dim >= 1");
        if (!all_finite(amplitudes_)) throw DomainError("pure state has non-finite amplitudes");
        const double norm = amplitudes_.norm();
        if (std::abs(norm - 1.0) > NORM_TOL)
            throw DomainError("pure state norm " + std::to_string(norm) + " differs from 1");
    }

    // Scales an arbitrary nonzero vector to unit norm.
    static PureState normalized(ComplexVector v) {
        const double norm = v.norm();
        if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("cannot normalise zero vector");
        v /= norm;
        return PureState(std::move(v));
    }

    static PureState basis(int dim, int index) {
        if (index < 0 || index >= dim) throw DimensionError("basis index out of range");
        ComplexVector v = ComplexVector::Zero(dim);
        v(index) = 1.0;
        return PureState(std::move(v));
    }

    int dim() const noexcept { return static_cast<int>(amplitudes_.size()); }
    const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](int i) const { return amplitudes_(i); }
    ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

private:
    ComplexVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix. Every constructor
/// validates; an instance always satisfies the invariants.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) { validate(); }

    static DensityMatrix from_pure(const PureState& psi) { return DensityMatrix(psi.projector()); }

    // Symmetrises and divides by the trace before validating; for matrices that
    // are density matrices up to rounding and normalisation.
    static DensityMatrix normalized(const ComplexMatrix& m) {
        ComplexMatrix h = 0.5 * (m + m.adjoint());
        const double tr = h.trace().real();
        if (!(tr > 0.0)) throw DomainError("cannot normalise matrix with nonpositive trace");
        return DensityMatrix(h / tr);
    }

    static DensityMatrix maximally_mixed(int dim) {
        return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
    }

    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    const ComplexMatrix& matrix() const noexcept { return m_; }
    Complex operator()(int i, int j) const { return m_(i, j); }

private:
    void validate() const {
        if (m_.rows() == 0 || m_.rows() != m_.cols())
            throw DimensionError("density matrix must be square with dim >= 1");
        if (!all_finite(m_)) throw DomainError("density matrix has non-finite entries");
        const double herm = hermiticity_error(m_);
        if (herm > HERM_TOL)
            throw DomainError("density matrix not Hermitian (error " + std::to_string(herm) + ")");
        const double tr_err = std::abs(m_.trace() - Complex(1.0));
        if (tr_err > TRACE_TOL)
            throw DomainError("density matrix trace differs from 1 by " + std::to_string(tr_err));
        const ComplexMatrix h = 0.5 * (m_ + m_.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -PSD_TOL)
            throw DomainError("density matrix has negative eigenvalue " +
                              std::to_string(es.eigenvalues().minCoeff()));
    }

    ComplexMatrix m_;
};

/// Kronecker product a (x) b; the first factor is the slow (outer) index.
inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    constexpr auto limit = static_cast<long double>(std::numeric_limits<int>::max());
    if (static_cast<long double>(a.rows()) * b.rows() > limit ||
        static_cast<long double>(a.cols()) * b.cols() > limit)
        throw DimensionError("tensor product dimension overflow");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
    return tensor_product(ComplexMatrix(a), ComplexMatrix(b));
}

inline DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(tensor_product(a.matrix(), b.matrix()));
}

namespace detail {

inline void require_layout(const ComplexMatrix& rho, const SpaceLayout& layout) {
    if (rho.rows() != layout.composite_dim() || rho.cols() != layout.composite_dim())
        throw DimensionError("matrix dim " + std::to_string(rho.rows()) +
                             " does not match layout 2x" + std::to_string(layout.field_dim()));
}

}  // namespace detail

/// Tr_field: 2D x 2D -> 2 x 2.
inline ComplexMatrix partial_trace_field(const ComplexMatrix& rho, const SpaceLayout& layout) {
    detail::require_layout(rho, layout);
    const int d = layout.field_dim();
    ComplexMatrix out = ComplexMatrix::Zero(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            out(a, b) = rho.block(a * d, b * d, d, d).trace();
    return out;
}

inline DensityMatrix partial_trace_field(const DensityMatrix& rho, const SpaceLayout& layout) {
    return DensityMatrix::normalized(partial_trace_field(rho.matrix(), layout));
}

/// Tr_atom: 2D x 2D -> D x D.
inline ComplexMatrix partial_trace_atom(const ComplexMatrix& rho, const SpaceLayout& layout) {
    detail::require_layout(rho, layout);
    const int d = layout.field_dim();
    return rho.block(0, 0, d, d) + rho.block(d, d, d, d);
}

struct HermitianEigen {
    RealVector values;     // ascending
    ComplexMatrix vectors; // columns are eigenvectors
};

inline HermitianEigen herm_eig(const ComplexMatrix& h) {
    require_hermitian(h, "herm_eig");
    // Eigen reads only the lower triangle; symmetrising uses both halves.
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
    if (es.info() != Eigen::Success) throw DomainError("herm_eig: eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

/// e^{-i H t} from the eigendecomposition of H.
inline ComplexMatrix unitary_from_hamiltonian(const HermitianEigen& eig, double t) {
    const Eigen::Index n = eig.values.size();
    if (t == 0.0) return ComplexMatrix::Identity(n, n);
    ComplexVector phases(n);
    for (Eigen::Index k = 0; k < n; ++k) phases(k) = std::polar(1.0, -eig.values(k) * t);
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

inline ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double t) {
    if (!std::isfinite(t)) throw DomainError("unitary_from_hamiltonian: time must be finite");
    if (t == 0.0) {
        require_hermitian(h, "unitary_from_hamiltonian");
        return ComplexMatrix::Identity(h.rows(), h.cols());
    }
    return unitary_from_hamiltonian(herm_eig(h), t);
}

inline double unitarity_error(const ComplexMatrix& u) {
    return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols()));
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

enum class ExpmMethod { Eigendecomposition, ScalingSquaring };

struct ExpmResult {
    ComplexMatrix value;
    ExpmMethod method;
};

/// exp(M) by scaling and squaring of a truncated Taylor series. Valid for any
/// square matrix, including defective ones.
inline ComplexMatrix expm_series(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("expm: matrix is not square");
    const Eigen::Index n = m.rows();
    const double norm = m.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const ComplexMatrix a = m / std::ldexp(1.0, squarings);
    ComplexMatrix term = ComplexMatrix::Identity(n, n);
    ComplexMatrix sum = term;
    // ||a|| <= 1/2: 20 terms put the remainder below 1e-25.
    for (int k = 1; k <= 20; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

/// exp(M) for a general (non-normal) square matrix. Diagonalises when the
/// eigenvector basis is well conditioned and falls back to expm_series
/// otherwise.
inline ExpmResult expm(const ComplexMatrix& m, double max_condition = 1e8) {
    if (m.rows() != m.cols()) throw DimensionError("expm: matrix is not square");
    if (!all_finite(m)) throw DomainError("expm: non-finite entries");
    Eigen::ComplexEigenSolver<ComplexMatrix> es(m);
    if (es.info() == Eigen::Success) {
        const ComplexMatrix& v = es.eigenvectors();
        Eigen::JacobiSVD<ComplexMatrix> svd(v);
        const auto& sv = svd.singularValues();
        const double smin = sv(sv.size() - 1);
        if (smin > 0.0 && sv(0) / smin < max_condition) {
            const ComplexVector ev = es.eigenvalues().array().exp();
            ComplexMatrix value = v * ev.asDiagonal() * v.inverse();
            return {std::move(value), ExpmMethod::Eigendecomposition};
        }
    }
    return {expm_series(m), ExpmMethod::ScalingSquaring};
}

}  // namespace hilbert

using hilbert::DensityMatrix;
using hilbert::PureState;
using hilbert::SpaceLayout;

}  // namespace zeno
