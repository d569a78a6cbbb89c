// Copyright 2026 The relphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Bipartite state vectors, relative states (partial scalar products) and
// reduced density operators. All values are immutable after construction and
// every operation is pure.

#pragma once

#include <utility>

#include "relphase/types.hpp"

namespace relphase {

// Validation tolerances, chosen at ~100x double accumulation error for the
// dimensions this library targets (a few hundred at most).
inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = -1e-10;

/// Normalized vector on H1 (x) H2 with an explicit (d1, d2) factorization.
/// The amplitude of |i>|j> sits at flat index i*d2 + j.
class BipartiteState {
  public:
    /// Validates ||amplitudes|| = 1 within 1e-12 and d1*d2 == size.
    BipartiteState(Vector amplitudes, int d1, int d2);

    const Vector& amplitudes() const { return amplitudes_; }
    int d1() const { return d1_; }
    int d2() const { return d2_; }

    /// The d1 x d2 coefficient matrix A with A(i, j) = amplitudes[i*d2 + j].
    Matrix coefficient_matrix() const;

  private:
    Vector amplitudes_;
    int d1_;
    int d2_;
};

/// Hermitian positive semidefinite matrix with positive trace. Trace need not
/// be 1: relative density blocks <phi|rho|phi> are subnormalized.
class DensityOperator {
  public:
    /// Validates Hermiticity (entrywise, 1e-10), eigenvalues >= -1e-10 and
    /// trace > 0.
    explicit DensityOperator(Matrix matrix);

    const Matrix& matrix() const { return matrix_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }
    double trace() const { return trace_; }

    // Cached validation diagnostics.
    double hermiticity_defect() const { return hermiticity_defect_; }
    double min_eigenvalue() const { return min_eigenvalue_; }

  private:
    Matrix matrix_;
    double trace_;
    double hermiticity_defect_;
    double min_eigenvalue_;
};

/// Relative state of subsystem 2 given outcome phi on subsystem 1:
/// result[j] = sum_i conj(phi[i]) * psi[i, j]. Antilinear in phi and
/// generally unnormalized; its squared norm is the outcome probability for
/// normalized phi.
Vector relative_state(const BipartiteState& psi, const Vector& phi);

/// Partial trace onto subsystem 1 or 2. Trace is 1 within 1e-12.
DensityOperator reduced_density(const BipartiteState& psi, int subsystem);

/// ||relative_state(psi, phi)||^2 for normalized phi; equals <phi|rho1|phi>.
double marginal_probability(const BipartiteState& psi, const Vector& phi);

/// Number of singular values of the coefficient matrix exceeding tol.
int schmidt_rank(const BipartiteState& psi, double tol);

}  // namespace relphase
