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

// State metrics and convergence-order estimation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zeno/hilbert.hpp"

namespace zeno {
namespace analysis {

// Eigenvalues below this are treated as zero in entropies.
inline constexpr double ENTROPY_EIG_FLOOR = 1e-14;
// Minimum purity accepted as a pure composite state.
inline constexpr double PURE_TOL = 1e-8;

inline void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
    if (a.dim() != b.dim())
        throw DimensionError(std::string(what) + ": dims " + std::to_string(a.dim()) + " and " +
                             std::to_string(b.dim()) + " differ");
}

inline RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

/// (1/2) sum |lambda_i(a - b)|
inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    require_same_dim(a, b, "trace_distance");
    return 0.5 * hermitian_eigenvalues(a.matrix() - b.matrix()).cwiseAbs().sum();
}

/// Tr rho^2, as the sum of squared entry moduli.
inline double purity(const ComplexMatrix& rho) { return rho.cwiseAbs2().sum(); }
inline double purity(const DensityMatrix& rho) { return purity(rho.matrix()); }

/// Uhlmann fidelity ||sqrt(a) sqrt(b)||_1^2.
inline double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
    require_same_dim(a, b, "fidelity");
    auto root = [](const ComplexMatrix& m) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
        const double floor = ENTROPY_EIG_FLOOR * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        const RealVector r = es.eigenvalues().unaryExpr([floor](double v) { return v > floor ? std::sqrt(v) : 0.0; });
        return ComplexMatrix(es.eigenvectors() * r.asDiagonal() * es.eigenvectors().adjoint());
    };
    const double s = Eigen::JacobiSVD<ComplexMatrix>(root(a.matrix()) * root(b.matrix())).singularValues().sum();
    return s * s;
}

inline double fidelity(const DensityMatrix& rho, const PureState& psi) {
    if (rho.dim() != psi.dim()) throw DimensionError("fidelity: dims differ");
    return psi.amplitudes().dot(rho.matrix() * psi.amplitudes()).real();
}

/// Von Neumann entropy in bits.
inline double von_neumann_entropy(const ComplexMatrix& rho) {
    const RealVector ev = hermitian_eigenvalues(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > ENTROPY_EIG_FLOOR) s -= ev(i) * std::log2(ev(i));
    return s;
}

inline double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

/// Entropy of entanglement (bits) of a pure atom (x) field state.
inline double entanglement_entropy(const DensityMatrix& rho_composite, const SpaceLayout& layout) {
    const double p = purity(rho_composite);
    if (p < 1.0 - PURE_TOL)
        throw DomainError("entanglement_entropy: composite state is mixed (purity " +
                          std::to_string(p) + ")");
    return von_neumann_entropy(hilbert::partial_trace_field(rho_composite.matrix(), layout));
}

struct ConvergencePoint {
    double n;
    double error;
};

struct ConvergenceReport {
    std::vector<double> n_values;
    std::vector<double> errors;
    // Slope of log(error) against log(N). NaN when exact is set.
    double fitted_order = std::numeric_limits<double>::quiet_NaN();
    // Root-mean-square residual of the fit in natural-log units.
    double fit_residual = std::numeric_limits<double>::quiet_NaN();
    double intercept = std::numeric_limits<double>::quiet_NaN();
    // Some error was <= 0: the compared routes agree exactly and no order exists.
    bool exact = false;
};

/// Unweighted least-squares fit of log(error) = c + order * log(N).
inline ConvergenceReport fit_convergence_order(std::span<const ConvergencePoint> points) {
    if (points.size() < 3) throw DomainError("fit_convergence_order: need at least 3 points");
    ConvergenceReport rep;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].n > 0.0)) throw DomainError("fit_convergence_order: N must be positive");
        if (i > 0 && !(points[i].n > points[i - 1].n))
            throw DomainError("fit_convergence_order: N values must be strictly increasing");
        rep.n_values.push_back(points[i].n);
        rep.errors.push_back(points[i].error);
        if (!(points[i].error > 0.0)) rep.exact = true;
    }
    if (rep.exact) return rep;

    const double m = static_cast<double>(points.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : points) {
        const double x = std::log(p.n), y = std::log(p.error);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double denom = m * sxx - sx * sx;
    rep.fitted_order = (m * sxy - sx * sy) / denom;
    rep.intercept = (sy - rep.fitted_order * sx) / m;
    double ss = 0;
    for (const auto& p : points) {
        const double r = std::log(p.error) - (rep.intercept + rep.fitted_order * std::log(p.n));
        ss += r * r;
    }
    rep.fit_residual = std::sqrt(ss / m);
    return rep;
}

inline ConvergenceReport fit_convergence_order(std::span<const double> n_values,
                                               std::span<const double> errors) {
    if (n_values.size() != errors.size())
        throw DimensionError("fit_convergence_order: sequences differ in length");
    std::vector<ConvergencePoint> pts;
    for (std::size_t i = 0; i < n_values.size(); ++i) pts.push_back({n_values[i], errors[i]});
    return fit_convergence_order(std::span<const ConvergencePoint>(pts));
}

}  // namespace analysis
}  // namespace zeno
