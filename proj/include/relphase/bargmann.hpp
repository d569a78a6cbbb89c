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

// Discrete geometric phases: the two-state Pancharatnam phase and the cyclic
// Bargmann-product phases of a state sequence and of its relative states.
//
// Convention used throughout this library: a sequence L: phi_1, ..., phi_N is
// traversed in index order, and its geometric phase is
//
//     gamma[L] = arg( <phi_1|phi_2> <phi_2|phi_3> ... <phi_N|phi_1> ),
//
// with the analogous ordering for chains of relative states. The invariant is
// gauge invariant (phi_j -> c_j phi_j), cyclic, and negates under reversal.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relphase/state.hpp"
#include "relphase/types.hpp"

namespace relphase {

/// Ordered sequence of nonzero vectors in H1, length >= 3.
class StateSequence {
  public:
    explicit StateSequence(std::vector<Vector> vectors, std::string label = "");

    const std::vector<Vector>& vectors() const { return vectors_; }
    const std::string& label() const { return label_; }
    int size() const { return static_cast<int>(vectors_.size()); }
    int dim() const { return static_cast<int>(vectors_.front().size()); }

    /// Same sequence with every vector scaled to unit norm.
    StateSequence normalized() const;

  private:
    std::vector<Vector> vectors_;
    std::string label_;
};

struct PhaseOptions {
    /// Overlaps with modulus at or below this are treated as orthogonal.
    double eps_orth = kDefaultOrthTol;
};

struct PhaseResult {
    /// Geometric phase in (-pi, pi]; always equal to arg(chain_product).
    double phase = 0.0;
    /// Smallest adjacent overlap modulus encountered in the chain.
    double min_adjacent_overlap = 0.0;
    /// Cyclic product of the overlap phase factors. Each factor is divided by
    /// its modulus before multiplying, so long chains cannot underflow; the
    /// argument is unaffected and the stored product has modulus ~1.
    Complex chain_product{1.0, 0.0};
};

/// arg<b|a>, the phase f making |a> and e^{if}|b> interfere maximally.
/// Throws UndefinedPhase when |<b|a>| <= eps_orth.
double pancharatnam_phase(const Vector& a, const Vector& b,
                          const PhaseOptions& opts = {});

/// Cyclic Bargmann phase of the sequence itself (see file comment for the
/// traversal convention).
PhaseResult sequence_phase(const StateSequence& seq, const PhaseOptions& opts = {});

/// Cyclic Bargmann phase of the relative states psi(phi_1), ..., psi(phi_N).
/// Computed through two independent routes that must agree within 1e-12:
/// the chain of relative-state overlaps and the rho1-weighted chain
/// <phi_{j+1}|rho1|phi_j> (the two coincide via <psi(a)|psi(b)> = <b|rho1|a>).
/// Zero for product states; equals -sequence_phase(L) for maximally entangled
/// psi with d1 <= d2.
PhaseResult relative_sequence_phase(const BipartiteState& psi,
                                    const StateSequence& seq,
                                    const PhaseOptions& opts = {});

/// Same phase computed from a reduced density operator alone:
/// arg prod_j <phi_{j+1}|rho1|phi_j>. Agrees with relative_sequence_phase for
/// every purification of rho1.
PhaseResult rho_sequence_phase(const DensityOperator& rho1,
                               const StateSequence& seq,
                               const PhaseOptions& opts = {});

}  // namespace relphase
