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

// Continuous ray-space paths built from null-phase-curve segments (Bloch
// great circles, coherent straight lines) and the line integral of the
// connection one-form that reproduces the discrete phase.

#pragma once

#include <functional>
#include <vector>

#include "relphase/bargmann.hpp"
#include "relphase/state.hpp"
#include "relphase/types.hpp"

namespace relphase {

/// A parametrized map [0, 1] -> H1 vectors.
struct Segment {
    std::function<Vector(double)> map;

    Vector operator()(double t) const { return map(t); }
};

/// Chain of segments whose endpoints agree ray-wise (up to phase and scale):
/// |<end_k|start_{k+1}>| / (||end_k|| ||start_{k+1}||) > 1 - 1e-9, and, for
/// closed paths, the last endpoint chains back to the first.
class RayPath {
  public:
    RayPath(std::vector<Segment> segments, bool closed);

    const std::vector<Segment>& segments() const { return segments_; }
    bool closed() const { return closed_; }
    int dim() const { return dim_; }

    RayPath reversed() const;

  private:
    std::vector<Segment> segments_;
    bool closed_;
    int dim_;
};

/// Constant-speed great-circle interpolant between two qubit rays, realized
/// with the phase section "first nonvanishing component real positive". Every
/// sub-portion has vanishing three-point Bargmann phase. Throws
/// NoUniqueGeodesic for (numerically) antipodal endpoints.
Segment qubit_geodesic(const Vector& a, const Vector& b,
                       const PhaseOptions& opts = {});

/// Straight coherent-label line t -> |(1-t) z1 + t z2> in truncated Fock
/// space. Requires both endpoint tails below 1e-12 (interior points have
/// |z(t)| <= max(|z1|, |z2|), so they are covered too).
Segment coherent_line(Complex z1, Complex z2, int truncation);

/// Line integral of the connection one-form A = Im<dphi|rho1|phi>/<phi|rho1|phi>
/// around a closed path, by the composite midpoint rule with symmetric
/// finite differences (O(steps^-2)). Phase jumps at segment junctions are
/// ray-level only; their arg<start|rho1|end> contribution is added so the
/// result equals the value for any continuous lift. When the segments'
/// relative-state images are null phase curves, this equals the discrete
/// relative phase of the vertex sequence.
double connection_integral(const RayPath& path, const DensityOperator& rho1,
                           int steps_per_segment);

/// Discrete Bargmann phase of the relative states of M+1 samples per segment.
/// Converges to connection_integral as M grows; equals the N-vertex discrete
/// phase only when the path is a chain of null phase curves of the relative
/// states (in the ray space of subsystem 2).
double refinement_phase(const RayPath& path, const BipartiteState& psi, int M,
                        const PhaseOptions& opts = {});

/// Closed H1 path for an invertible two-qubit state whose relative-state
/// image connects psi(phi_1), ..., psi(phi_N) by Bloch geodesics: each
/// geodesic between consecutive relative states is pulled back through the
/// inverse relative map. connection_integral over this path reproduces the
/// discrete relative phase of the vertex sequence.
RayPath two_qubit_relative_geodesic_loop(const BipartiteState& psi,
                                         const StateSequence& seq,
                                         const PhaseOptions& opts = {});

/// Closed loop of straight coherent lines through the polygon vertices; the
/// relative-state images under a two-mode squeezed state are again straight
/// coherent lines.
RayPath coherent_polygon_loop(const std::vector<Complex>& vertices,
                              int truncation);

}  // namespace relphase
