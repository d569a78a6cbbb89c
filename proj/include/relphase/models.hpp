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

// Reference models with closed-form phase oracles: the one-parameter
// two-qubit family cos(l/2)|00> + sin(l/2)|11> with its Bloch-triangle
// sequence, and the two-mode squeezed state with coherent-state sequences.

#pragma once

#include <vector>

#include "relphase/bargmann.hpp"
#include "relphase/state.hpp"
#include "relphase/types.hpp"

namespace relphase {

inline constexpr int kDefaultTruncation = 60;
inline constexpr double kTailTol = 1e-12;

/// cos(lambda/2)|00> + sin(lambda/2)|11>, lambda in [0, pi]. Product state at
/// the endpoints, maximally entangled at pi/2.
BipartiteState make_two_qubit(double lambda);

/// The three-vertex qubit sequence |0>, (|0>+|1>)/sqrt2,
/// (|0>+e^{-i phi}|1>)/sqrt2 with phi in [0, pi).
StateSequence qubit_sequence(double phi);

/// Closed form for the relative-state phase of make_two_qubit(lambda) over
/// qubit_sequence(phi): phi/2 - arctan(cos(lambda) tan(phi/2)), evaluated in
/// a branch-safe atan2 form. lambda in [0, pi), phi in [0, pi); the phase is
/// undefined at lambda = pi for this sequence.
double gamma_two_qubit_closed_form(double lambda, double phi);

/// Mass of the squeezed-state amplitude tail beyond Fock level `truncation`:
/// tanh(r)^(2(truncation+1)).
double squeezed_tail_mass(double r, int truncation);

/// Truncated two-mode squeezed vector (1/cosh r) sum_n tanh^n(r)|nn>,
/// renormalized to unit norm. Fails with TruncationError when the discarded
/// tail mass is >= 1e-12.
BipartiteState make_squeezed(double r, int truncation = kDefaultTruncation);

/// Mass of the coherent-state amplitude tail beyond Fock level `truncation`.
double coherent_tail_mass(Complex z, int truncation);

/// Truncated coherent vector with amplitudes e^{-|z|^2/2} z^n / sqrt(n!).
/// Fails with TruncationError when the tail mass is >= 1e-12.
Vector coherent_vector(Complex z, int truncation = kDefaultTruncation);

/// Label of the relative coherent state of the squeezed family:
/// tanh(r) * conj(z) (scaled and mirrored through the q-axis).
Complex relative_coherent_label(double r, Complex z);

/// Closed polygon of coherent-state labels z_j = (q_j + i p_j)/sqrt2.
class PhasePolygon {
  public:
    explicit PhasePolygon(std::vector<Complex> vertices);

    const std::vector<Complex>& vertices() const { return vertices_; }
    int size() const { return static_cast<int>(vertices_.size()); }

    PhasePolygon reversed() const;

  private:
    std::vector<Complex> vertices_;
};

/// Exact line integral of p dq around the polygon, edge by edge:
/// sum_j (p_j + p_{j+1})(q_{j+1} - q_j)/2 with (q, p) = sqrt2 (Re z, Im z).
double polygon_pdq_area(const PhasePolygon& poly);

/// Area-law value -tanh^2(r) * polygon_pdq_area(poly).
///
/// Note the sign: this library's traversal convention gives
/// relative_sequence_phase over the polygon's coherent vertices equal to the
/// *negative* of this value (equivalently +tanh^2(r) * oint p dq).
double gamma_squeezed_closed_form(double r, const PhasePolygon& poly);

}  // namespace relphase
