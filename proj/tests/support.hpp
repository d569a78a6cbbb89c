// Shared helpers for the test suites: seeded random states, sequences and
// operators, plus wrap-aware phase comparison.

#pragma once

#include <random>
#include <vector>

#include "relphase/bargmann.hpp"
#include "relphase/state.hpp"
#include "relphase/types.hpp"

namespace relphase::testing {

using Rng = std::mt19937_64;

inline Complex random_complex(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    return {normal(rng), normal(rng)};
}

inline Vector random_vector(Rng& rng, int dim, bool normalize = true) {
    Vector v(dim);
    for (int k = 0; k < dim; ++k) v(k) = random_complex(rng);
    if (normalize) v /= v.norm();
    return v;
}

inline BipartiteState random_bipartite(Rng& rng, int d1, int d2) {
    Vector amps = random_vector(rng, d1 * d2);
    return BipartiteState(std::move(amps), d1, d2);
}

inline BipartiteState random_product_state(Rng& rng, int d1, int d2) {
    const Vector a = random_vector(rng, d1);
    const Vector b = random_vector(rng, d2);
    Vector amps(static_cast<long>(d1) * d2);
    for (int i = 0; i < d1; ++i) {
        for (int j = 0; j < d2; ++j) {
            amps(static_cast<long>(i) * d2 + j) = a(i) * b(j);
        }
    }
    return BipartiteState(std::move(amps), d1, d2);
}

inline Matrix random_unitary(Rng& rng, int dim) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) g(i, j) = random_complex(rng);
    }
    const Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < dim; ++k) {
        const Complex d = r(k, k);
        q.col(k) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0, 0.0);
    }
    return q;
}

// K = d1 <= d2: rows are orthonormal vectors scaled by 1/sqrt(K), so the
// first marginal is the maximally mixed state.
inline BipartiteState random_max_entangled(Rng& rng, int d1, int d2) {
    const Matrix u = random_unitary(rng, d2);
    Vector amps(static_cast<long>(d1) * d2);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d1));
    for (int i = 0; i < d1; ++i) {
        for (int j = 0; j < d2; ++j) {
            amps(static_cast<long>(i) * d2 + j) = scale * u(i, j);
        }
    }
    return BipartiteState(std::move(amps), d1, d2);
}

// Full-rank PSD matrix with unit trace.
inline Matrix random_density_matrix(Rng& rng, int dim, double floor = 0.05) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) g(i, j) = random_complex(rng);
    }
    Matrix m = g * g.adjoint() + floor * static_cast<double>(dim) *
                                      Matrix::Identity(dim, dim);
    m /= m.trace().real();
    return m;
}

// Random sequence whose adjacent (and, against `anchor`, pointwise) overlaps
// stay well away from zero so phase chains are defined.
inline StateSequence random_sequence(Rng& rng, int dim, int length,
                                     const Vector* anchor = nullptr,
                                     double min_overlap = 1e-3) {
    std::vector<Vector> vs;
    while (static_cast<int>(vs.size()) < length) {
        Vector v = random_vector(rng, dim);
        if (anchor && std::abs(anchor->dot(v)) < min_overlap) continue;
        if (!vs.empty() && std::abs(vs.back().dot(v)) < min_overlap) continue;
        if (static_cast<int>(vs.size()) == length - 1 &&
            std::abs(v.dot(vs.front())) < min_overlap) {
            continue;
        }
        vs.push_back(std::move(v));
    }
    return StateSequence(std::move(vs));
}

}  // namespace relphase::testing
