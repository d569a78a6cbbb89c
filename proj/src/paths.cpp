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

#include "relphase/paths.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "relphase/models.hpp"

namespace relphase {

namespace {

constexpr double kRayContinuityTol = 1e-9;
constexpr double kConnectionDenomTol = 1e-14;

// Bloch vector of a (nonzero, not necessarily normalized) qubit vector.
std::array<double, 3> bloch_vector(const Vector& v) {
    const Complex a = v(0);
    const Complex b = v(1);
    const double n2 = std::norm(a) + std::norm(b);
    const Complex ab = std::conj(a) * b;
    return {2.0 * ab.real() / n2, 2.0 * ab.imag() / n2,
            (std::norm(a) - std::norm(b)) / n2};
}

// State vector for a Bloch vector, with the first nonvanishing component
// chosen real positive.
Vector bloch_state(const std::array<double, 3>& n) {
    const double theta = std::acos(std::clamp(n[2], -1.0, 1.0));
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    Vector v(2);
    if (c < 1e-15) {
        v << 0.0, 1.0;  // south pole: the section picks |1> itself
        return v;
    }
    const double az = std::atan2(n[1], n[0]);
    v << c, s * std::exp(Complex(0.0, az));
    return v;
}

void check_junction(const Vector& end, const Vector& start, std::size_t where) {
    const double align =
        std::abs(start.dot(end)) / (end.norm() * start.norm());
    if (!(align > 1.0 - kRayContinuityTol)) {
        throw ValidationError(
            "RayPath: segments " + std::to_string(where) + " -> " +
            std::to_string(where + 1) +
            " do not chain ray-continuously (alignment " + std::to_string(align) +
            ")");
    }
}

}  // namespace

RayPath::RayPath(std::vector<Segment> segments, bool closed)
    : segments_(std::move(segments)), closed_(closed) {
    if (segments_.empty()) {
        throw ValidationError("RayPath: no segments");
    }
    for (const Segment& s : segments_) {
        if (!s.map) throw ValidationError("RayPath: empty segment map");
    }
    dim_ = static_cast<int>(segments_.front()(0.0).size());
    for (std::size_t k = 0; k + 1 < segments_.size(); ++k) {
        check_junction(segments_[k](1.0), segments_[k + 1](0.0), k);
    }
    if (closed_) {
        check_junction(segments_.back()(1.0), segments_.front()(0.0),
                       segments_.size() - 1);
    }
}

RayPath RayPath::reversed() const {
    std::vector<Segment> rev;
    rev.reserve(segments_.size());
    for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
        const auto fwd = it->map;
        rev.push_back(Segment{[fwd](double t) { return fwd(1.0 - t); }});
    }
    return RayPath(std::move(rev), closed_);
}

Segment qubit_geodesic(const Vector& a, const Vector& b,
                       const PhaseOptions& opts) {
    if (a.size() != 2 || b.size() != 2) {
        throw ValidationError("qubit_geodesic: vectors must have dimension 2");
    }
    if (a.norm() == 0.0 || b.norm() == 0.0) {
        throw ValidationError("qubit_geodesic: zero vector");
    }
    const double overlap = std::abs(b.dot(a)) / (a.norm() * b.norm());
    if (!(overlap > opts.eps_orth)) {
        throw NoUniqueGeodesic(
            "qubit_geodesic: endpoints are antipodal on the Bloch sphere "
            "(normalized overlap " +
            std::to_string(overlap) + ")");
    }
    const auto na = bloch_vector(a);
    const auto nb = bloch_vector(b);
    const double cosang = std::clamp(
        na[0] * nb[0] + na[1] * nb[1] + na[2] * nb[2], -1.0, 1.0);
    const double ang = std::acos(cosang);
    if (ang < 1e-15) {
        const Vector fixed = bloch_state(na);
        return Segment{[fixed](double) { return fixed; }};
    }
    return Segment{[na, nb, ang](double t) {
        const double w1 = std::sin((1.0 - t) * ang) / std::sin(ang);
        const double w2 = std::sin(t * ang) / std::sin(ang);
        std::array<double, 3> n{w1 * na[0] + w2 * nb[0], w1 * na[1] + w2 * nb[1],
                                w1 * na[2] + w2 * nb[2]};
        const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        for (double& x : n) x /= len;
        return bloch_state(n);
    }};
}

Segment coherent_line(Complex z1, Complex z2, int truncation) {
    // Raises TruncationError if either endpoint tail is too heavy.
    coherent_vector(z1, truncation);
    coherent_vector(z2, truncation);
    return Segment{[z1, z2, truncation](double t) {
        return coherent_vector((1.0 - t) * z1 + t * z2, truncation);
    }};
}

double connection_integral(const RayPath& path, const DensityOperator& rho1,
                           int steps_per_segment) {
    if (!path.closed()) {
        throw ValidationError("connection_integral: path must be closed");
    }
    if (steps_per_segment < 1) {
        throw ValidationError("connection_integral: steps_per_segment must be >= 1");
    }
    if (path.dim() != rho1.dim()) {
        throw ValidationError("connection_integral: path dimension " +
                              std::to_string(path.dim()) + " != rho dimension " +
                              std::to_string(rho1.dim()));
    }
    const Matrix& rho = rho1.matrix();
    const auto& segs = path.segments();
    const double h = 1.0 / steps_per_segment;
    double total = 0.0;
    for (std::size_t k = 0; k < segs.size(); ++k) {
        Vector prev = segs[k](0.0);
        for (int i = 0; i < steps_per_segment; ++i) {
            const double tmid = (i + 0.5) * h;
            const Vector mid = segs[k](tmid);
            const Vector next = segs[k]((i + 1.0) * h);
            const Vector rho_mid = rho * mid;
            const double denom = mid.dot(rho_mid).real();
            if (!(denom > kConnectionDenomTol)) {
                throw SingularConnection(
                    "connection_integral: <phi|rho|phi> = " +
                        std::to_string(denom) + " at segment " +
                        std::to_string(k) + ", t = " + std::to_string(tmid),
                    tmid);
            }
            const Vector dphi = next - prev;
            total += (dphi.dot(rho_mid)).imag() / denom;  // Im<dphi|rho|phi>
            prev = next;
        }
        // Ray-level phase jump into the next segment.
        const std::size_t kn = (k + 1) % segs.size();
        const Vector end = segs[k](1.0);
        const Vector start = segs[kn](0.0);
        total += std::arg(start.dot(rho * end));  // arg<start|rho|end>
    }
    return total;
}

double refinement_phase(const RayPath& path, const BipartiteState& psi, int M,
                        const PhaseOptions& opts) {
    if (!path.closed()) {
        throw ValidationError("refinement_phase: path must be closed");
    }
    if (M < 3) {
        throw ValidationError("refinement_phase: need at least 3 samples per segment");
    }
    std::vector<Vector> samples;
    samples.reserve(path.segments().size() * (M + 1));
    for (const Segment& seg : path.segments()) {
        // Endpoints included on purpose: consecutive duplicates at junctions
        // carry the ray-level phase jumps through the chain.
        for (int i = 0; i <= M; ++i) {
            samples.push_back(seg(static_cast<double>(i) / M));
        }
    }
    return relative_sequence_phase(psi, StateSequence(std::move(samples)), opts)
        .phase;
}

RayPath two_qubit_relative_geodesic_loop(const BipartiteState& psi,
                                         const StateSequence& seq,
                                         const PhaseOptions& opts) {
    if (psi.d1() != 2 || psi.d2() != 2) {
        throw ValidationError(
            "two_qubit_relative_geodesic_loop: state must be 2x2 bipartite");
    }
    if (seq.dim() != 2) {
        throw ValidationError(
            "two_qubit_relative_geodesic_loop: sequence must hold qubit vectors");
    }
    const Matrix b = psi.coefficient_matrix().transpose();  // chi = B conj(phi)
    if (std::abs(b.determinant()) < 1e-12) {
        throw RankDeficient(
            "two_qubit_relative_geodesic_loop: relative map is not invertible",
            std::abs(b.determinant()));
    }
    const Matrix binv = b.inverse();

    std::vector<Vector> rel;
    rel.reserve(seq.vectors().size());
    for (const Vector& phi : seq.vectors()) rel.push_back(relative_state(psi, phi));

    std::vector<Segment> segs;
    segs.reserve(rel.size());
    for (std::size_t j = 0; j < rel.size(); ++j) {
        const std::size_t k = (j + 1) % rel.size();
        Segment geo = qubit_geodesic(rel[j], rel[k], opts);
        segs.push_back(Segment{[geo, binv](double t) -> Vector {
            return (binv * geo(t)).conjugate();
        }});
    }
    return RayPath(std::move(segs), /*closed=*/true);
}

RayPath coherent_polygon_loop(const std::vector<Complex>& vertices,
                              int truncation) {
    PhasePolygon poly(vertices);  // validates count and distinctness
    std::vector<Segment> segs;
    segs.reserve(vertices.size());
    for (std::size_t j = 0; j < vertices.size(); ++j) {
        const std::size_t k = (j + 1) % vertices.size();
        segs.push_back(coherent_line(vertices[j], vertices[k], truncation));
    }
    return RayPath(std::move(segs), /*closed=*/true);
}

}  // namespace relphase
