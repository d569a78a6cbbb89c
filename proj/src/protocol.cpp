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

#include "relphase/protocol.hpp"

#include <cmath>
#include <random>

namespace relphase {

namespace {

constexpr double kPostselectTol = 1e-14;
constexpr double kVisibilityTol = 1e-9;
constexpr double kProjectorTol = 1e-12;

// splitmix64; used to derive independent deterministic substreams per
// (seed, step, fringe point).
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<double> scan_points(int k) {
    std::vector<double> fs(k);
    for (int i = 0; i < k; ++i) fs[i] = -kPi + kTwoPi * i / k;
    return fs;
}

// Fits I(f) = c0 + X cos f + Y sin f over an equally spaced full-period scan.
// The grid makes the design orthogonal, so the least-squares solution is the
// discrete Fourier demodulation below and is exact for exact intensities.
FringeFit fit_fringe(const std::vector<double>& fs,
                     const std::vector<double>& intensities, bool sampled) {
    const int k = static_cast<int>(fs.size());
    double c0 = 0.0, x = 0.0, y = 0.0;
    for (int i = 0; i < k; ++i) {
        c0 += intensities[i];
        x += intensities[i] * std::cos(fs[i]);
        y += intensities[i] * std::sin(fs[i]);
    }
    c0 /= k;
    x *= 2.0 / k;
    y *= 2.0 / k;

    FringeFit fit;
    fit.c0 = c0;
    fit.c1 = std::hypot(x, y);
    fit.f_max = std::atan2(y, x);
    fit.visibility = (c0 > 0.0) ? fit.c1 / c0 : 0.0;

    double ssr = 0.0;
    fit.scan.reserve(fs.size());
    for (int i = 0; i < k; ++i) {
        fit.scan.emplace_back(fs[i], intensities[i]);
        const double r =
            intensities[i] - (c0 + x * std::cos(fs[i]) + y * std::sin(fs[i]));
        fit.max_residual = std::max(fit.max_residual, std::abs(r));
        ssr += r * r;
    }
    if (sampled && k > 3 && fit.c1 > 0.0) {
        // var(X) = var(Y) = 2 sigma^2 / K on this grid, cov = 0, so
        // var(f*) = 2 sigma^2 / (K c1^2).
        const double sigma2 = ssr / (k - 3);
        fit.sigma_f = std::sqrt(2.0 * sigma2 / (k * fit.c1 * fit.c1));
    }
    if (!(fit.visibility > kVisibilityTol)) {
        throw ZeroVisibility("fringe has no usable contrast (visibility " +
                                 std::to_string(fit.visibility) + ")",
                             fit.visibility);
    }
    return fit;
}

}  // namespace

BipartiteState joint_state(const BipartiteState& psi, double a) {
    if (!(a >= 0.0 && a <= 1.0)) {
        throw ValidationError("joint_state: ancilla parameter a must lie in [0, 1]");
    }
    const int d1 = psi.d1();
    const int d2 = psi.d2();
    const double sa = std::sqrt(a);
    const double sb = std::sqrt(1.0 - a);
    Vector amps = Vector::Zero(static_cast<long>(d1) * 2 * d2 * 2);
    const long bob_dim = static_cast<long>(d2) * 2;
    for (int i = 0; i < d1; ++i) {
        for (int j = 0; j < d2; ++j) {
            const Complex c = psi.amplitudes()(static_cast<long>(i) * d2 + j);
            // alpha = beta = 0 branch and alpha = beta = 1 branch.
            amps((i * 2L + 0) * bob_dim + (j * 2L + 0)) = sa * c;
            amps((i * 2L + 1) * bob_dim + (j * 2L + 1)) = sb * c;
        }
    }
    return BipartiteState(std::move(amps), d1 * 2, d2 * 2);
}

Matrix alice_projector(const Vector& phi_a, const Vector& phi_b, double f) {
    if (phi_a.size() != phi_b.size()) {
        throw ValidationError("alice_projector: dimension mismatch");
    }
    if (std::abs(phi_a.norm() - 1.0) > kNormTol ||
        std::abs(phi_b.norm() - 1.0) > kNormTol) {
        throw ValidationError("alice_projector: sequence vectors must be unit norm");
    }
    const long d = phi_a.size();
    Vector v(2 * d);
    const Complex phase = std::exp(Complex(0.0, f));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (long i = 0; i < d; ++i) {
        v(i * 2 + 0) = inv_sqrt2 * phi_a(i);
        v(i * 2 + 1) = inv_sqrt2 * phase * phi_b(i);
    }
    return v * v.adjoint();
}

std::pair<BipartiteState, double> postselect(const BipartiteState& state,
                                             const Matrix& projector) {
    const int d1 = state.d1();
    if (projector.rows() != d1 || projector.cols() != d1) {
        throw ValidationError("postselect: projector must act on the first subsystem");
    }
    if ((projector - projector.adjoint()).cwiseAbs().maxCoeff() > kProjectorTol ||
        (projector * projector - projector).cwiseAbs().maxCoeff() > kProjectorTol) {
        throw ValidationError("postselect: operator is not an orthogonal projector");
    }
    Matrix m = projector * state.coefficient_matrix();
    const double probability = std::min(m.squaredNorm(), 1.0);
    if (probability < kPostselectTol) {
        throw PostselectionImpossible(
            "postselect: outcome probability " + std::to_string(probability) +
                " below threshold",
            probability);
    }
    m /= std::sqrt(probability);
    Vector amps(static_cast<long>(d1) * state.d2());
    for (int i = 0; i < d1; ++i) {
        for (int j = 0; j < state.d2(); ++j) {
            amps(static_cast<long>(i) * state.d2() + j) = m(i, j);
        }
    }
    return {BipartiteState(std::move(amps), d1, state.d2()), probability};
}

double bob_intensity(const BipartiteState& post_state, double f) {
    const int bob_dim = post_state.d2();
    if (bob_dim % 2 != 0) {
        throw ValidationError("bob_intensity: Bob's side carries no ancilla qubit");
    }
    const int d2 = bob_dim / 2;
    const Complex phase = std::exp(Complex(0.0, f));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Vector& amps = post_state.amplitudes();
    double intensity = 0.0;
    for (int i = 0; i < post_state.d1(); ++i) {
        const long row = static_cast<long>(i) * bob_dim;
        for (int j = 0; j < d2; ++j) {
            const Complex a0 = amps(row + j * 2 + 0);
            const Complex a1 = amps(row + j * 2 + 1);
            intensity += std::norm(inv_sqrt2 * (a0 + phase * a1));
        }
    }
    return intensity;
}

FringeFit find_fringe_max(const BipartiteState& post_state, int fringe_points) {
    if (fringe_points < 3) {
        throw ValidationError("find_fringe_max: need at least 3 scan points");
    }
    const auto fs = scan_points(fringe_points);
    std::vector<double> intensities(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        intensities[i] = bob_intensity(post_state, fs[i]);
    }
    return fit_fringe(fs, intensities, /*sampled=*/false);
}

FringeFit find_fringe_max_sampled(const BipartiteState& post_state,
                                  int fringe_points, long shots,
                                  std::uint64_t seed, int step) {
    if (fringe_points < 4) {
        throw ValidationError("find_fringe_max_sampled: need at least 4 scan points");
    }
    if (shots < 1) {
        throw ValidationError("find_fringe_max_sampled: shots must be >= 1");
    }
    const auto fs = scan_points(fringe_points);
    std::vector<double> intensities(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const double p =
            std::clamp(bob_intensity(post_state, fs[i]), 0.0, 1.0);
        std::mt19937_64 rng(mix64(mix64(mix64(seed) ^ static_cast<std::uint64_t>(step)) ^
                                  static_cast<std::uint64_t>(i)));
        std::binomial_distribution<long> counts(shots, p);
        intensities[i] = static_cast<double>(counts(rng)) / shots;
    }
    return fit_fringe(fs, intensities, /*sampled=*/true);
}

ProtocolResult run_protocol(const ProtocolConfig& cfg) {
    if (!(cfg.ancilla_a >= 0.0 && cfg.ancilla_a <= 1.0)) {
        throw ValidationError("run_protocol: ancilla_a must lie in [0, 1]");
    }
    if (cfg.fringe_points < 8) {
        throw ValidationError("run_protocol: fringe_points must be >= 8");
    }
    if (cfg.mode == ProtocolMode::sampled && cfg.shots < 1) {
        throw ValidationError("run_protocol: shots must be >= 1");
    }
    if (cfg.sequence.dim() != cfg.psi.d1()) {
        throw ValidationError("run_protocol: sequence dimension != d1");
    }
    for (const Vector& v : cfg.sequence.vectors()) {
        if (std::abs(v.norm() - 1.0) > kNormTol) {
            throw ValidationError("run_protocol: sequence vectors must be unit norm");
        }
    }

    const auto& phis = cfg.sequence.vectors();
    const int n = cfg.sequence.size();
    const BipartiteState joint = joint_state(cfg.psi, cfg.ancilla_a);

    ProtocolResult result;
    result.steps.reserve(n);
    double f = 0.0;  // f_1 = 0
    for (int j = 0; j < n; ++j) {
        const Vector& current = phis[j];
        const Vector& next = phis[(j + 1) % n];
        StepRecord rec;
        rec.j = j + 1;
        rec.f_j = f;

        const std::string where = "run_protocol: step " + std::to_string(j + 1);
        try {
            const Matrix projector = alice_projector(next, current, f);
            auto [post, probability] = postselect(joint, projector);
            rec.success_probability = probability;

            const FringeFit fit =
                (cfg.mode == ProtocolMode::exact)
                    ? find_fringe_max(post, cfg.fringe_points)
                    : find_fringe_max_sampled(post, cfg.fringe_points, cfg.shots,
                                              cfg.seed, j);
            rec.visibility = fit.visibility;
            rec.f_sigma = fit.sigma_f;
            rec.fringe = fit.scan;
            const double delta = wrap_to_pi(fit.f_max - wrap_to_pi(f));
            f += delta;
            rec.f_next = f;
        } catch (const PostselectionImpossible& e) {
            throw PostselectionImpossible(where + ": " + e.what(), e.probability());
        } catch (const ZeroVisibility& e) {
            throw ZeroVisibility(where + ": " + e.what(), e.visibility());
        } catch (const UndefinedPhase& e) {
            throw UndefinedPhase(where + ": " + e.what(), e.overlap_modulus(), j);
        }
        result.steps.push_back(std::move(rec));
    }
    result.gamma = f;
    return result;
}

double visibility_law(double a) {
    if (!(a >= 0.0 && a <= 1.0)) {
        throw ValidationError("visibility_law: a must lie in [0, 1]");
    }
    return 2.0 * std::sqrt(a * (1.0 - a));
}

}  // namespace relphase
