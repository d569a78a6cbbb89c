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

// Simulation of the two-party interference protocol that measures the
// relative-state geometric phase: an ancilla pair is consumed per step,
// Alice post-selects an entangled superposition of two adjacent sequence
// members, and Bob reads a fringe whose maximum advances by the Pancharatnam
// phase of the corresponding relative states. Iterating with f_1 = 0 over the
// whole cycle accumulates f_{N+1} = gamma[psi(L)].
//
// Step j projects onto (|phi_{j+1}>|0> + e^{i f_j}|phi_j>|1>)/sqrt2, which
// places Bob's fringe maximum at f_j + arg<psi(phi_j)|psi(phi_{j+1})>, so the
// accumulated increments compose the library's chain ordering (see
// bargmann.hpp).
//
// The joint state lives on (H1 (x) HA1) (x) (H2 (x) HA2): Alice holds the
// first half and ancilla qubit 1, Bob the rest. Flat indexing follows
// BipartiteState with d1' = 2 d1 (index i*2 + alpha) and d2' = 2 d2
// (index j*2 + beta).

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "relphase/bargmann.hpp"
#include "relphase/state.hpp"
#include "relphase/types.hpp"

namespace relphase {

enum class ProtocolMode { exact, sampled };

struct ProtocolConfig {
    BipartiteState psi;
    StateSequence sequence;       // unit-norm vectors required
    double ancilla_a = 0.5;       // ancilla sqrt(a)|00> + sqrt(1-a)|11>
    ProtocolMode mode = ProtocolMode::exact;
    long shots = 100000;          // per fringe point (sampled mode)
    std::uint64_t seed = 0;       // mandatory seed (sampled mode)
    int fringe_points = 16;       // intensity scan resolution, >= 8
    double eps_orth = kDefaultOrthTol;
};

struct StepRecord {
    int j = 0;                    // 1-based step index; pair (phi_j, phi_{j+1 mod N})
    double f_j = 0.0;             // phase threaded into Alice's projector
    double f_next = 0.0;          // fringe maximum found by Bob (accumulated)
    double success_probability = 0.0;
    double visibility = 0.0;      // fringe contrast c1/c0 on the kept ensemble
    double f_sigma = 0.0;         // fit standard error of the maximum (0 when exact)
    std::vector<std::pair<double, double>> fringe;  // (f, intensity) scan
};

struct ProtocolResult {
    double gamma = 0.0;           // accumulated f_{N+1} (not wrapped)
    std::vector<StepRecord> steps;
};

struct FringeFit {
    double f_max = 0.0;           // location of the intensity maximum, in (-pi, pi]
    double visibility = 0.0;      // c1/c0
    double c0 = 0.0;
    double c1 = 0.0;
    double sigma_f = 0.0;         // standard error of f_max (0 for exact fits)
    double max_residual = 0.0;    // largest |I_k - fit| over the scan
    std::vector<std::pair<double, double>> scan;  // the (f, intensity) points fitted
};

/// |psi> (x) (sqrt(a)|00> + sqrt(1-a)|11>) with ancilla qubit 1 on Alice's
/// side, as a BipartiteState across the Alice/Bob cut.
BipartiteState joint_state(const BipartiteState& psi, double a);

/// Rank-1 projector on H1 (x) HA1 onto the normalized vector
/// (|phi_a>|0> + e^{i f}|phi_b>|1>)/sqrt2 (the two branches are orthogonal,
/// so the normalization is exact for unit-norm inputs and the operator is
/// idempotent). Success probabilities differ from a 1/2-prefactor variant;
/// post-selected states and all phases are unchanged.
Matrix alice_projector(const Vector& phi_a, const Vector& phi_b, double f);

/// Applies projector (x) identity across the bipartite cut; returns the
/// normalized post-measurement state and the success probability.
/// Throws PostselectionImpossible when the probability is below 1e-14.
std::pair<BipartiteState, double> postselect(const BipartiteState& state,
                                             const Matrix& projector);

/// Probability that Bob's ancilla reads 0 after the phase shift
/// |x> -> e^{i x f}|x> and a Hadamard. Sinusoidal in f: c0 + c1 cos(f - f*).
double bob_intensity(const BipartiteState& post_state, double f);

/// Locates the fringe maximum from an equally spaced scan of >= 3 points,
/// solved in closed form (discrete Fourier demodulation of the 3-parameter
/// sinusoid; exact for exact intensities). Throws ZeroVisibility when the
/// contrast is below 1e-9.
FringeFit find_fringe_max(const BipartiteState& post_state, int fringe_points);

/// Same fit over shot-estimated intensities: each scan point draws
/// Binomial(shots, I(f_k))/shots from a substream derived from
/// (seed, step, point); sigma_f comes from the least-squares covariance.
FringeFit find_fringe_max_sampled(const BipartiteState& post_state,
                                  int fringe_points, long shots,
                                  std::uint64_t seed, int step);

/// Runs the N-step loop with f_1 = 0 and returns the accumulated f_{N+1}
/// together with per-step records. Exact mode matches
/// relative_sequence_phase(psi, L) to 1e-9 modulo 2*pi.
ProtocolResult run_protocol(const ProtocolConfig& cfg);

/// Ancilla-quality visibility factor 2 sqrt(a (1-a)). The simulated step
/// visibility ratio against a = 1/2 equals this exactly when the two relative
/// states in the step have equal norms (e.g. any maximally entangled psi).
double visibility_law(double a);

}  // namespace relphase
