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

#include "relphase/state.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace relphase {

BipartiteState::BipartiteState(Vector amplitudes, int d1, int d2)
    : amplitudes_(std::move(amplitudes)), d1_(d1), d2_(d2) {
    if (d1_ < 1 || d2_ < 1) {
        throw ValidationError("BipartiteState: subsystem dimensions must be >= 1");
    }
    if (static_cast<long>(d1_) * d2_ != amplitudes_.size()) {
        throw ValidationError("BipartiteState: d1*d2 != amplitude count (" +
                              std::to_string(d1_) + "*" + std::to_string(d2_) +
                              " vs " + std::to_string(amplitudes_.size()) + ")");
    }
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > kNormTol) {
        throw ValidationError("BipartiteState: amplitudes not normalized (||.|| = " +
                              std::to_string(norm) + ")");
    }
}

Matrix BipartiteState::coefficient_matrix() const {
    // Row-major reshape; Eigen maps are column-major so index explicitly.
    Matrix a(d1_, d2_);
    for (int i = 0; i < d1_; ++i) {
        for (int j = 0; j < d2_; ++j) {
            a(i, j) = amplitudes_(static_cast<long>(i) * d2_ + j);
        }
    }
    return a;
}

DensityOperator::DensityOperator(Matrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
        throw ValidationError("DensityOperator: matrix must be square and nonempty");
    }
    hermiticity_defect_ = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (hermiticity_defect_ > kHermitianTol) {
        throw ValidationError("DensityOperator: not Hermitian (defect " +
                              std::to_string(hermiticity_defect_) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
    min_eigenvalue_ = es.eigenvalues().minCoeff();
    if (min_eigenvalue_ < kPsdTol) {
        throw ValidationError("DensityOperator: negative eigenvalue " +
                              std::to_string(min_eigenvalue_));
    }
    trace_ = matrix_.trace().real();
    if (!(trace_ > 0.0)) {
        throw ValidationError("DensityOperator: trace must be positive");
    }
}

Vector relative_state(const BipartiteState& psi, const Vector& phi) {
    if (phi.size() != psi.d1()) {
        throw ValidationError("relative_state: phi dimension " +
                              std::to_string(phi.size()) + " != d1 " +
                              std::to_string(psi.d1()));
    }
    if (phi.norm() == 0.0) {
        throw ValidationError("relative_state: phi must be nonzero");
    }
    const int d1 = psi.d1();
    const int d2 = psi.d2();
    Vector out = Vector::Zero(d2);
    const Vector& amps = psi.amplitudes();
    for (int i = 0; i < d1; ++i) {
        const Complex c = std::conj(phi(i));
        if (c == Complex(0.0, 0.0)) continue;
        out += c * amps.segment(static_cast<long>(i) * d2, d2);
    }
    return out;
}

DensityOperator reduced_density(const BipartiteState& psi, int subsystem) {
    if (subsystem != 1 && subsystem != 2) {
        throw ValidationError("reduced_density: subsystem must be 1 or 2");
    }
    const Matrix a = psi.coefficient_matrix();
    // rho1[i,i'] = sum_j A(i,j) conj(A(i',j));  rho2[j,j'] = sum_i A(i,j) conj(A(i,j')).
    Matrix rho = (subsystem == 1) ? Matrix(a * a.adjoint())
                                  : Matrix(a.transpose() * a.conjugate());
    return DensityOperator(std::move(rho));
}

double marginal_probability(const BipartiteState& psi, const Vector& phi) {
    if (std::abs(phi.norm() - 1.0) > kNormTol) {
        throw ValidationError("marginal_probability: phi must be normalized");
    }
    return relative_state(psi, phi).squaredNorm();
}

int schmidt_rank(const BipartiteState& psi, double tol) {
    if (!(tol > 0.0)) {
        throw ValidationError("schmidt_rank: tol must be positive");
    }
    Eigen::JacobiSVD<Matrix> svd(psi.coefficient_matrix());
    int rank = 0;
    for (long k = 0; k < svd.singularValues().size(); ++k) {
        if (svd.singularValues()(k) > tol) ++rank;
    }
    return rank;
}

}  // namespace relphase
