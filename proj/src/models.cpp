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

#include "relphase/models.hpp"

#include <cmath>
#include <utility>

namespace relphase {

BipartiteState make_two_qubit(double lambda) {
    if (!(lambda >= 0.0 && lambda <= kPi)) {
        throw ValidationError("make_two_qubit: lambda must lie in [0, pi], got " +
                              std::to_string(lambda));
    }
    Vector amps = Vector::Zero(4);
    amps(0) = std::cos(lambda / 2.0);
    amps(3) = std::sin(lambda / 2.0);
    return BipartiteState(std::move(amps), 2, 2);
}

StateSequence qubit_sequence(double phi) {
    if (!(phi >= 0.0 && phi < kPi)) {
        throw ValidationError("qubit_sequence: phi must lie in [0, pi), got " +
                              std::to_string(phi));
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Vector v1(2), v2(2), v3(2);
    v1 << 1.0, 0.0;
    v2 << inv_sqrt2, inv_sqrt2;
    v3 << inv_sqrt2, inv_sqrt2 * std::exp(Complex(0.0, -phi));
    return StateSequence({v1, v2, v3});
}

double gamma_two_qubit_closed_form(double lambda, double phi) {
    if (!(phi >= 0.0 && phi < kPi)) {
        throw ValidationError("gamma_two_qubit_closed_form: phi must lie in [0, pi)");
    }
    if (!(lambda >= 0.0 && lambda <= kPi)) {
        throw ValidationError("gamma_two_qubit_closed_form: lambda must lie in [0, pi]");
    }
    if (lambda == kPi) {
        throw UndefinedPhase(
            "gamma_two_qubit_closed_form: phase undefined at lambda = pi for "
            "this sequence",
            0.0);
    }
    // arctan(cos(lambda) tan(phi/2)) in a form finite as phi -> pi.
    const double half = phi / 2.0;
    return half - std::atan2(std::cos(lambda) * std::sin(half), std::cos(half));
}

double squeezed_tail_mass(double r, int truncation) {
    if (!(r >= 0.0)) {
        throw ValidationError("squeezed_tail_mass: r must be >= 0");
    }
    if (truncation < 1) {
        throw ValidationError("squeezed_tail_mass: truncation must be >= 1");
    }
    // Amplitudes tanh^n(r)/cosh(r): the mass beyond level M sums to
    // tanh(r)^(2(M+1)).
    return std::pow(std::tanh(r), 2.0 * (truncation + 1));
}

BipartiteState make_squeezed(double r, int truncation) {
    const double tail = squeezed_tail_mass(r, truncation);
    if (!(tail < kTailTol)) {
        throw TruncationError(
            "make_squeezed: truncation " + std::to_string(truncation) +
                " leaves tail mass " + std::to_string(tail) + " at r = " +
                std::to_string(r),
            tail);
    }
    const int d = truncation + 1;
    const double t = std::tanh(r);
    Vector amps = Vector::Zero(static_cast<long>(d) * d);
    double coeff = 1.0 / std::cosh(r);
    for (int n = 0; n < d; ++n) {
        amps(static_cast<long>(n) * d + n) = coeff;
        coeff *= t;
    }
    amps /= amps.norm();  // correction is < 1e-12 thanks to the tail guard
    return BipartiteState(std::move(amps), d, d);
}

double coherent_tail_mass(Complex z, int truncation) {
    if (truncation < 1) {
        throw ValidationError("coherent_tail_mass: truncation must be >= 1");
    }
    const double x = std::norm(z);
    if (x == 0.0) return 0.0;
    // Poisson tail P(N > truncation) with mean x, summed forward from the
    // first discarded term until it stops contributing.
    double log_term = -x + (truncation + 1) * std::log(x) - std::lgamma(truncation + 2.0);
    double term = std::exp(log_term);
    double tail = 0.0;
    for (int n = truncation + 1; n < truncation + 100000; ++n) {
        tail += term;
        term *= x / (n + 1);
        if (term < tail * 1e-18 + 1e-300) break;
    }
    return tail;
}

Vector coherent_vector(Complex z, int truncation) {
    const double tail = coherent_tail_mass(z, truncation);
    if (!(tail < kTailTol)) {
        throw TruncationError(
            "coherent_vector: truncation " + std::to_string(truncation) +
                " leaves tail mass " + std::to_string(tail) + " at |z| = " +
                std::to_string(std::abs(z)),
            tail);
    }
    const int d = truncation + 1;
    Vector amps(d);
    Complex term = std::exp(-0.5 * std::norm(z));
    for (int n = 0; n < d; ++n) {
        amps(n) = term;
        term *= z / std::sqrt(static_cast<double>(n + 1));
    }
    return amps;
}

Complex relative_coherent_label(double r, Complex z) {
    if (!(r >= 0.0)) {
        throw ValidationError("relative_coherent_label: r must be >= 0");
    }
    return std::tanh(r) * std::conj(z);
}

PhasePolygon::PhasePolygon(std::vector<Complex> vertices)
    : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) {
        throw ValidationError("PhasePolygon: need at least 3 vertices");
    }
    for (std::size_t j = 0; j < vertices_.size(); ++j) {
        const std::size_t k = (j + 1) % vertices_.size();
        if (vertices_[j] == vertices_[k]) {
            throw ValidationError("PhasePolygon: vertices " + std::to_string(j) +
                                  " and " + std::to_string(k) + " coincide");
        }
    }
}

PhasePolygon PhasePolygon::reversed() const {
    std::vector<Complex> rev(vertices_.rbegin(), vertices_.rend());
    return PhasePolygon(std::move(rev));
}

double polygon_pdq_area(const PhasePolygon& poly) {
    // With z = (q + i p)/sqrt2, each straight edge contributes exactly
    // (p_j + p_{j+1})(q_{j+1} - q_j)/2 = (Im z_j + Im z_k)(Re z_k - Re z_j).
    const auto& v = poly.vertices();
    double area = 0.0;
    for (int j = 0; j < poly.size(); ++j) {
        const int k = (j + 1) % poly.size();
        area += (v[j].imag() + v[k].imag()) * (v[k].real() - v[j].real());
    }
    return area;
}

double gamma_squeezed_closed_form(double r, const PhasePolygon& poly) {
    if (!(r >= 0.0)) {
        throw ValidationError("gamma_squeezed_closed_form: r must be >= 0");
    }
    const double t = std::tanh(r);
    return -t * t * polygon_pdq_area(poly);
}

}  // namespace relphase
