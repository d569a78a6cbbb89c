#include <doctest.h>

#include <cmath>

#include "relphase/models.hpp"
#include "relphase/uhlmann.hpp"
#include "support.hpp"

using namespace relphase;
using testing::Rng;

TEST_SUITE_BEGIN("uhlmann");

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i) {
        for (long j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

double identity_deviation(const Matrix& u) {
    return (u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& u) {
    return (u * u.adjoint() - Matrix::Identity(u.rows(), u.cols()))
        .cwiseAbs()
        .maxCoeff();
}

std::vector<DensityOperator> relative_chain(const MixedBipartiteState& rho,
                                            const StateSequence& seq) {
    std::vector<DensityOperator> out;
    for (const Vector& phi : seq.vectors()) {
        out.push_back(relative_density(rho, phi));
    }
    return out;
}

}  // namespace

TEST_CASE("relative density of a pure state is the relative projector") {
    Rng rng(61);
    const BipartiteState psi = testing::random_bipartite(rng, 3, 4);
    const Matrix full = psi.amplitudes() * psi.amplitudes().adjoint();
    const MixedBipartiteState rho(DensityOperator(full), 3, 4);

    const Vector phi = testing::random_vector(rng, 3);
    const Vector rel = relative_state(psi, phi);
    const Matrix expected = rel * rel.adjoint();
    CHECK((relative_density(rho, phi).matrix() - expected)
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
    // trace equals the outcome probability of a normalized phi
    CHECK(relative_density(rho, phi).trace() ==
          doctest::Approx(marginal_probability(psi, phi)).epsilon(1e-12));
}

TEST_CASE("relative density factorizes for product operators") {
    Rng rng(62);
    const Matrix ra = testing::random_density_matrix(rng, 3);
    const Matrix rb = testing::random_density_matrix(rng, 2);
    const MixedBipartiteState rho(DensityOperator(kron(ra, rb)), 3, 2);
    const Vector phi = testing::random_vector(rng, 3);
    const double weight = phi.dot(ra * phi).real();
    CHECK((relative_density(rho, phi).matrix() - weight * rb)
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
}

TEST_CASE("relative density of the flat state is flat") {
    const int d1 = 2, d2 = 3;
    const MixedBipartiteState rho(
        DensityOperator(Matrix::Identity(d1 * d2, d1 * d2) / (d1 * d2)), d1, d2);
    Rng rng(63);
    const Vector phi = testing::random_vector(rng, d1);
    CHECK((relative_density(rho, phi).matrix() -
           Matrix::Identity(d2, d2) / (d1 * d2))
              .cwiseAbs()
              .maxCoeff() <= 1e-13);
}

TEST_CASE("matrix square roots") {
    const DensityOperator id(Matrix(Matrix::Identity(3, 3)));
    CHECK(identity_deviation(sqrt_psd(id)) <= 1e-14);

    Matrix diag = Matrix::Zero(2, 2);
    diag(0, 0) = 4.0;
    diag(1, 1) = 9.0;
    const Matrix root = sqrt_psd(DensityOperator(diag));
    CHECK(std::abs(root(0, 0) - 2.0) <= 1e-13);
    CHECK(std::abs(root(1, 1) - 3.0) <= 1e-13);

    Rng rng(64);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix m = testing::random_density_matrix(rng, 5);
        const Matrix s = sqrt_psd(DensityOperator(m));
        CHECK((s * s - m).cwiseAbs().maxCoeff() <=
              1e-10 * m.cwiseAbs().maxCoeff());
        const Matrix si = inv_sqrt_psd(DensityOperator(m));
        CHECK(identity_deviation(si * s) <= 1e-10);
    }

    Matrix singular = Matrix::Zero(2, 2);
    singular(0, 0) = 1.0;
    CHECK_THROWS_AS(inv_sqrt_psd(DensityOperator(singular)), RankDeficient);
}

TEST_CASE("holonomy of product states is the identity") {
    Rng rng(65);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix ra = testing::random_density_matrix(rng, 2);
        const Matrix rb = testing::random_density_matrix(rng, 3);
        const MixedBipartiteState rho(DensityOperator(kron(ra, rb)), 2, 3);
        const StateSequence seq = testing::random_sequence(rng, 2, 5);
        const HolonomyResult h = uhlmann_holonomy(relative_chain(rho, seq));
        CHECK(identity_deviation(h.unitary) <= 1e-8);
    }
}

TEST_CASE("holonomy of commuting families is the identity") {
    Rng rng(66);
    const Matrix basis = testing::random_unitary(rng, 4);
    std::uniform_real_distribution<double> unit(0.1, 1.0);
    std::vector<DensityOperator> rhos;
    for (int k = 0; k < 5; ++k) {
        Eigen::VectorXd evals(4);
        for (int i = 0; i < 4; ++i) evals(i) = unit(rng);
        rhos.emplace_back(
            Matrix(basis * evals.asDiagonal() * basis.adjoint()));
    }
    const HolonomyResult h = uhlmann_holonomy(rhos);
    CHECK(identity_deviation(h.unitary) <= 1e-10);
}

TEST_CASE("each factor and the product are unitary") {
    Rng rng(67);
    std::uniform_int_distribution<int> dim(2, 8);
    std::uniform_int_distribution<int> len(2, 8);
    for (int trial = 0; trial < 15; ++trial) {
        const int d = dim(rng);
        std::vector<DensityOperator> rhos;
        const int n = len(rng);
        for (int k = 0; k < n; ++k) {
            rhos.emplace_back(testing::random_density_matrix(rng, d));
        }
        const HolonomyResult h = uhlmann_holonomy(rhos);
        CHECK(unitarity_defect(h.unitary) <= 1e-8);
        CHECK(std::abs(std::abs(h.unitary.determinant()) - 1.0) <= 1e-8);
        CHECK(static_cast<int>(h.step_factors.size()) == n - 1);
        for (const Matrix& f : h.step_factors) {
            CHECK(unitarity_defect(f) <= 1e-8);
        }
    }
}

TEST_CASE("positive rescaling cancels factor by factor") {
    Rng rng(68);
    std::uniform_real_distribution<double> scale(0.1, 10.0);
    std::vector<DensityOperator> rhos, scaled;
    for (int k = 0; k < 5; ++k) {
        const Matrix m = testing::random_density_matrix(rng, 4);
        rhos.emplace_back(m);
        scaled.emplace_back(Matrix(scale(rng) * m));
    }
    const Matrix u = uhlmann_holonomy(rhos).unitary;
    const Matrix us = uhlmann_holonomy(scaled).unitary;
    CHECK((u - us).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("rank deficiency is reported with the offending index") {
    Rng rng(69);
    std::vector<DensityOperator> rhos;
    rhos.emplace_back(testing::random_density_matrix(rng, 3));
    Vector v = testing::random_vector(rng, 3);
    rhos.emplace_back(Matrix(v * v.adjoint()));  // rank 1
    rhos.emplace_back(testing::random_density_matrix(rng, 3));
    try {
        uhlmann_holonomy(rhos);
        FAIL("expected RankDeficient");
    } catch (const RankDeficient& e) {
        CHECK(e.index() == 1);
        CHECK(e.min_eigenvalue() <= 1e-12);
    }

    CHECK_THROWS_AS(uhlmann_holonomy({rhos[0]}), ValidationError);
}

TEST_CASE("pinned separable witness is far from the identity") {
    // 1/2 (|0><0| (x) diag(0.7, 0.3) + |+><+| (x) R(0.9) diag(0.8, 0.2) R*)
    Matrix s0 = Matrix::Zero(2, 2);
    s0(0, 0) = 0.7;
    s0(1, 1) = 0.3;
    const double th = 0.9;
    Matrix rot(2, 2);
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    Matrix d(2, 2);
    d << 0.8, 0.0, 0.0, 0.2;
    const Matrix s1 = rot * d * rot.adjoint();

    Vector e0(2), plus(2), iplus(2);
    e0 << 1.0, 0.0;
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    iplus << 1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0));

    Matrix rho = 0.5 * (kron(Matrix(e0 * e0.adjoint()), s0) +
                        kron(Matrix(plus * plus.adjoint()), s1));
    const MixedBipartiteState mixed(DensityOperator(std::move(rho)), 2, 2);
    const HolonomyResult h =
        uhlmann_holonomy(relative_chain(mixed, StateSequence({e0, plus, iplus})));
    CHECK(h.min_eigenvalue_seen > 0.05);
    CHECK(identity_deviation(h.unitary) > 1e-3);
    CHECK(unitarity_defect(h.unitary) <= 1e-10);
}

TEST_CASE("optional closing factor keeps the product unitary") {
    Rng rng(70);
    std::vector<DensityOperator> rhos;
    for (int k = 0; k < 4; ++k) {
        rhos.emplace_back(testing::random_density_matrix(rng, 3));
    }
    const HolonomyResult open = uhlmann_holonomy(rhos);
    const HolonomyResult cyclic =
        uhlmann_holonomy(rhos, kDefaultRankTol, /*include_closing_factor=*/true);
    CHECK(open.step_factors.size() + 1 == cyclic.step_factors.size());
    CHECK(unitarity_defect(cyclic.unitary) <= 1e-8);
    CHECK((cyclic.unitary - cyclic.step_factors.back() * open.unitary)
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
}

TEST_CASE("regularization probe reports finite angles") {
    const BipartiteState psi = make_two_qubit(kPi / 3.0);
    const StateSequence seq = qubit_sequence(kPi / 2.0);
    const auto probe =
        pure_state_regularization_probe(psi, seq, {1e-2, 1e-3, 1e-4});
    REQUIRE(probe.size() == 3);
    for (const auto& [eps, angle] : probe) {
        CHECK(std::isfinite(angle));
        CHECK(std::abs(angle) <= kPi);
    }
    CHECK(probe[0].first == doctest::Approx(1e-2));
    CHECK_THROWS_AS(pure_state_regularization_probe(psi, seq, {0.0}),
                    ValidationError);
}

TEST_CASE("mixed state validation") {
    Matrix sub = 0.5 * Matrix::Identity(4, 4) / 4.0;
    CHECK_THROWS_AS(MixedBipartiteState(DensityOperator(sub), 2, 2),
                    ValidationError);
    CHECK_THROWS_AS(
        MixedBipartiteState(DensityOperator(Matrix(Matrix::Identity(4, 4) / 4.0)),
                            2, 3),
        ValidationError);
}

TEST_SUITE_END();
