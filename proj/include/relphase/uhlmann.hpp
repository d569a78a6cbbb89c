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

// Mixed-state generalization: relative density operators and the Uhlmann
// holonomy matrix product over a sequence of faithful (full-rank) operators.

#pragma once

#include <utility>
#include <vector>

#include "relphase/bargmann.hpp"
#include "relphase/state.hpp"
#include "relphase/types.hpp"

namespace relphase {

inline constexpr double kDefaultRankTol = 1e-10;

/// Trace-1 density operator on H1 (x) H2 with an explicit factorization.
class MixedBipartiteState {
  public:
    MixedBipartiteState(DensityOperator rho, int d1, int d2);

    const DensityOperator& rho() const { return rho_; }
    int d1() const { return d1_; }
    int d2() const { return d2_; }

  private:
    DensityOperator rho_;
    int d1_;
    int d2_;
};

/// The d2 x d2 block <phi|rho|phi>: positive semidefinite, with trace equal
/// to the outcome probability for normalized phi.
DensityOperator relative_density(const MixedBipartiteState& rho,
                                 const Vector& phi);

/// Principal square root by spectral decomposition (eigenvalues clamped at 0
/// within the PSD validation tolerance).
Matrix sqrt_psd(const DensityOperator& m);

/// Inverse principal square root; requires min eigenvalue > rank_tol.
Matrix inv_sqrt_psd(const DensityOperator& m, double rank_tol = kDefaultRankTol);

struct HolonomyResult {
    Matrix unitary;                    // total product, d2 x d2, unitary
    std::vector<Matrix> step_factors;  // factor for each pair (k-1 -> k), k = 2..N
    double min_eigenvalue_seen = 0.0;  // smallest eigenvalue across all inputs
};

/// Uhlmann holonomy of an ordered sequence of faithful density operators:
///
///   U = F_N F_{N-1} ... F_2,
///   F_k = (sqrt(rho_k) rho_{k-1} sqrt(rho_k))^{-1/2} sqrt(rho_k) sqrt(rho_{k-1}),
///
/// an open-chain product over consecutive pairs. Each factor is unitary for
/// full-rank inputs; the identity results for product states and for mutually
/// commuting families, and the product is invariant under positive rescaling
/// of any member. Set include_closing_factor to also multiply the (1 <- N)
/// factor, closing the chain cyclically (an extension beyond the standard
/// open-chain definition).
HolonomyResult uhlmann_holonomy(const std::vector<DensityOperator>& rhos,
                                double rank_tol = kDefaultRankTol,
                                bool include_closing_factor = false);

/// Diagnostic for the pure-state limit: holonomy of the relative densities of
/// rho_eps = (1-eps)|psi><psi| + eps 1/(d1 d2) for each requested eps,
/// reporting (eps, arg U(0,0)). No convergence relation is asserted; the data
/// is exposed for inspection.
std::vector<std::pair<double, double>> pure_state_regularization_probe(
    const BipartiteState& psi, const StateSequence& seq,
    const std::vector<double>& epsilons, double rank_tol = kDefaultRankTol);

}  // namespace relphase
