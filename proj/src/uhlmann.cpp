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

#include "relphase/uhlmann.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace relphase {

namespace {

Matrix sqrt_from_spectrum(const Matrix& m, bool inverse, double rank_tol,
                          double* min_eigenvalue) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    const Eigen::VectorXd evals = es.eigenvalues();
    if (min_eigenvalue) *min_eigenvalue = evals.minCoeff();
    if (inverse && !(evals.minCoeff() > rank_tol)) {
        throw RankDeficient(
            "inv_sqrt_psd: operator is rank deficient (min eigenvalue " +
                std::to_string(evals.minCoeff()) + ", rank_tol " +
                std::to_string(rank_tol) + ")",
            evals.minCoeff());
    }
    Eigen::VectorXd roots(evals.size());
    for (long k = 0; k < evals.size(); ++k) {
        const double ev = std::max(evals(k), 0.0);
        roots(k) = inverse ? 1.0 / std::sqrt(ev) : std::sqrt(ev);
    }
    return es.eigenvectors() * roots.asDiagonal() *
           es.eigenvectors().adjoint();
}

}  // namespace

MixedBipartiteState::MixedBipartiteState(DensityOperator rho, int d1, int d2)
    : rho_(std::move(rho)), d1_(d1), d2_(d2) {
    if (d1_ < 1 || d2_ < 1) {
        throw ValidationError("MixedBipartiteState: dimensions must be >= 1");
    }
    if (static_cast<long>(d1_) * d2_ != rho_.dim()) {
        throw ValidationError("MixedBipartiteState: d1*d2 != operator dimension");
    }
    if (std::abs(rho_.trace() - 1.0) > kNormTol) {
        throw ValidationError("MixedBipartiteState: trace must be 1, got " +
                              std::to_string(rho_.trace()));
    }
}

DensityOperator relative_density(const MixedBipartiteState& rho,
                                 const Vector& phi) {
    const int d1 = rho.d1();
    const int d2 = rho.d2();
    if (phi.size() != d1) {
        throw ValidationError("relative_density: phi dimension != d1");
    }
    if (phi.norm() == 0.0) {
        throw ValidationError("relative_density: phi must be nonzero");
    }
    const Matrix& m = rho.rho().matrix();
    // sigma[j,j'] = sum_{i,i'} conj(phi_i) rho[(i,j),(i',j')] phi_{i'}
    Matrix sigma = Matrix::Zero(d2, d2);
    for (int i = 0; i < d1; ++i) {
        const Complex ci = std::conj(phi(i));
        if (ci == Complex(0.0, 0.0)) continue;
        for (int ip = 0; ip < d1; ++ip) {
            const Complex w = ci * phi(ip);
            if (w == Complex(0.0, 0.0)) continue;
            sigma += w * m.block(static_cast<long>(i) * d2,
                                 static_cast<long>(ip) * d2, d2, d2);
        }
    }
    // Symmetrize away the accumulation noise before validation.
    sigma = 0.5 * (sigma + Matrix(sigma.adjoint()));
    return DensityOperator(std::move(sigma));
}

Matrix sqrt_psd(const DensityOperator& m) {
    return sqrt_from_spectrum(m.matrix(), /*inverse=*/false, 0.0, nullptr);
}

Matrix inv_sqrt_psd(const DensityOperator& m, double rank_tol) {
    return sqrt_from_spectrum(m.matrix(), /*inverse=*/true, rank_tol, nullptr);
}

HolonomyResult uhlmann_holonomy(const std::vector<DensityOperator>& rhos,
                                double rank_tol, bool include_closing_factor) {
    const int n = static_cast<int>(rhos.size());
    if (n < 2) {
        throw ValidationError("uhlmann_holonomy: need at least 2 operators");
    }
    const int d = rhos.front().dim();
    for (int k = 0; k < n; ++k) {
        if (rhos[k].dim() != d) {
            throw ValidationError("uhlmann_holonomy: operator " + std::to_string(k) +
                                  " has mismatched dimension");
        }
    }

    HolonomyResult result;
    result.min_eigenvalue_seen = std::numeric_limits<double>::infinity();

    std::vector<Matrix> roots(n);
    for (int k = 0; k < n; ++k) {
        double min_ev = 0.0;
        roots[k] = sqrt_from_spectrum(rhos[k].matrix(), /*inverse=*/false, 0.0,
                                      &min_ev);
        result.min_eigenvalue_seen = std::min(result.min_eigenvalue_seen, min_ev);
        if (!(min_ev > rank_tol)) {
            throw RankDeficient("uhlmann_holonomy: operator " + std::to_string(k) +
                                    " is not faithful (min eigenvalue " +
                                    std::to_string(min_ev) + ")",
                                min_ev, k);
        }
    }

    auto pair_factor = [&](int from, int to) {
        const Matrix sandwich = roots[to] * rhos[from].matrix() * roots[to];
        const Matrix inv_root = sqrt_from_spectrum(
            0.5 * (sandwich + Matrix(sandwich.adjoint())), /*inverse=*/true,
            0.0, nullptr);
        return Matrix(inv_root * roots[to] * roots[from]);
    };

    Matrix u = Matrix::Identity(d, d);
    result.step_factors.reserve(n - 1 + (include_closing_factor ? 1 : 0));
    for (int k = 1; k < n; ++k) {
        Matrix f = pair_factor(k - 1, k);
        u = f * u;  // factors compose right-to-left: F_N ... F_2
        result.step_factors.push_back(std::move(f));
    }
    if (include_closing_factor) {
        Matrix f = pair_factor(n - 1, 0);
        u = f * u;
        result.step_factors.push_back(std::move(f));
    }
    result.unitary = std::move(u);
    return result;
}

std::vector<std::pair<double, double>> pure_state_regularization_probe(
    const BipartiteState& psi, const StateSequence& seq,
    const std::vector<double>& epsilons, double rank_tol) {
    if (seq.dim() != psi.d1()) {
        throw ValidationError(
            "pure_state_regularization_probe: sequence dimension != d1");
    }
    const int d = psi.d1() * psi.d2();
    const Matrix projector =
        psi.amplitudes() * psi.amplitudes().adjoint();
    std::vector<std::pair<double, double>> probe;
    probe.reserve(epsilons.size());
    for (double eps : epsilons) {
        if (!(eps > 0.0 && eps < 1.0)) {
            throw ValidationError(
                "pure_state_regularization_probe: eps must lie in (0, 1)");
        }
        Matrix reg = (1.0 - eps) * projector +
                     (eps / d) * Matrix::Identity(d, d);
        MixedBipartiteState mixed(DensityOperator(std::move(reg)), psi.d1(),
                                  psi.d2());
        std::vector<DensityOperator> rhos;
        rhos.reserve(seq.vectors().size());
        for (const Vector& phi : seq.vectors()) {
            rhos.push_back(relative_density(mixed, phi));
        }
        const HolonomyResult h = uhlmann_holonomy(rhos, rank_tol);
        probe.emplace_back(eps, std::arg(h.unitary(0, 0)));
    }
    return probe;
}

}  // namespace relphase
