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

#include "relphase/bargmann.hpp"

#include <cmath>
#include <functional>
#include <utility>

namespace relphase {

namespace {

// Accumulates arg of the cyclic product overlap(0)*overlap(1)*...*overlap(N-1),
// where overlap(j) couples element j to element j+1 mod N. Factors are
// renormalized to unit modulus as they are multiplied.
PhaseResult chain_phase(int n, const std::function<Complex(int, int)>& overlap,
                        double eps_orth) {
    PhaseResult res;
    Complex product(1.0, 0.0);
    double min_overlap = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        const int k = (j + 1) % n;
        const Complex o = overlap(j, k);
        const double mod = std::abs(o);
        if (!(mod > eps_orth)) {
            throw UndefinedPhase(
                "phase undefined: adjacent pair (" + std::to_string(j) + ", " +
                    std::to_string(k) + ") has overlap modulus " +
                    std::to_string(mod) + " <= " + std::to_string(eps_orth),
                mod, j);
        }
        min_overlap = std::min(min_overlap, mod);
        product *= o / mod;
    }
    res.chain_product = product;
    res.phase = std::arg(product);
    res.min_adjacent_overlap = min_overlap;
    return res;
}

}  // namespace

StateSequence::StateSequence(std::vector<Vector> vectors, std::string label)
    : vectors_(std::move(vectors)), label_(std::move(label)) {
    if (vectors_.size() < 3) {
        throw ValidationError("StateSequence: need at least 3 vectors, got " +
                              std::to_string(vectors_.size()));
    }
    const long dim = vectors_.front().size();
    for (std::size_t j = 0; j < vectors_.size(); ++j) {
        if (vectors_[j].size() != dim) {
            throw ValidationError("StateSequence: vector " + std::to_string(j) +
                                  " has dimension " +
                                  std::to_string(vectors_[j].size()) +
                                  ", expected " + std::to_string(dim));
        }
        if (vectors_[j].norm() == 0.0) {
            throw ValidationError("StateSequence: vector " + std::to_string(j) +
                                  " is zero");
        }
    }
}

StateSequence StateSequence::normalized() const {
    std::vector<Vector> vs;
    vs.reserve(vectors_.size());
    for (const Vector& v : vectors_) vs.push_back(v / v.norm());
    return StateSequence(std::move(vs), label_);
}

double pancharatnam_phase(const Vector& a, const Vector& b,
                          const PhaseOptions& opts) {
    if (a.size() != b.size()) {
        throw ValidationError("pancharatnam_phase: dimension mismatch");
    }
    if (a.norm() == 0.0 || b.norm() == 0.0) {
        throw ValidationError("pancharatnam_phase: zero vector");
    }
    const Complex o = b.dot(a);  // <b|a>
    const double mod = std::abs(o);
    if (!(mod > opts.eps_orth)) {
        throw UndefinedPhase("pancharatnam_phase undefined: |<b|a>| = " +
                                 std::to_string(mod),
                             mod);
    }
    return std::arg(o);
}

PhaseResult sequence_phase(const StateSequence& seq, const PhaseOptions& opts) {
    const auto& v = seq.vectors();
    return chain_phase(
        seq.size(), [&](int j, int k) { return v[j].dot(v[k]); },  // <phi_j|phi_k>
        opts.eps_orth);
}

PhaseResult relative_sequence_phase(const BipartiteState& psi,
                                    const StateSequence& seq,
                                    const PhaseOptions& opts) {
    if (seq.dim() != psi.d1()) {
        throw ValidationError("relative_sequence_phase: sequence dimension " +
                              std::to_string(seq.dim()) + " != d1 " +
                              std::to_string(psi.d1()));
    }
    std::vector<Vector> rel;
    rel.reserve(seq.vectors().size());
    for (const Vector& phi : seq.vectors()) rel.push_back(relative_state(psi, phi));

    PhaseResult via_chain = chain_phase(
        seq.size(), [&](int j, int k) { return rel[j].dot(rel[k]); },
        opts.eps_orth);

    // Independent route through rho1: <psi(a)|psi(b)> = <b|rho1|a>.
    const Matrix rho1 = reduced_density(psi, 1).matrix();
    const auto& v = seq.vectors();
    Complex rho_product(1.0, 0.0);
    for (int j = 0; j < seq.size(); ++j) {
        const int k = (j + 1) % seq.size();
        const Complex o = v[k].dot(rho1 * v[j]);  // <phi_k|rho1|phi_j>
        const double mod = std::abs(o);
        if (mod > 0.0) rho_product *= o / mod;
    }
    const double via_rho = std::arg(rho_product);
    if (wrap_distance(via_chain.phase, via_rho) > 1e-12) {
        throw NumericError(
            "relative_sequence_phase: relative-state and rho1 routes disagree (" +
            std::to_string(via_chain.phase) + " vs " + std::to_string(via_rho) + ")");
    }
    return via_chain;
}

PhaseResult rho_sequence_phase(const DensityOperator& rho1,
                               const StateSequence& seq,
                               const PhaseOptions& opts) {
    if (seq.dim() != rho1.dim()) {
        throw ValidationError("rho_sequence_phase: sequence dimension " +
                              std::to_string(seq.dim()) + " != rho dimension " +
                              std::to_string(rho1.dim()));
    }
    const auto& v = seq.vectors();
    const Matrix& rho = rho1.matrix();
    return chain_phase(
        seq.size(),
        [&](int j, int k) { return v[k].dot(rho * v[j]); },  // <phi_k|rho|phi_j>
        opts.eps_orth);
}

}  // namespace relphase
