#include <doctest.h>

#include <cmath>

#include "relphase/models.hpp"
#include "relphase/paths.hpp"
#include "support.hpp"

using namespace relphase;
using testing::Rng;

TEST_SUITE_BEGIN("paths");

namespace {

double three_point_phase(const Vector& a, const Vector& b, const Vector& c) {
    return sequence_phase(StateSequence({a, b, c})).phase;
}

// Largest three-point phase over ordered sample triples of one segment.
double max_triple_phase(const Segment& seg, int samples, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        double t1 = unit(rng), t2 = unit(rng), t3 = unit(rng);
        if (t1 > t2) std::swap(t1, t2);
        if (t2 > t3) std::swap(t2, t3);
        if (t1 > t2) std::swap(t1, t2);
        worst = std::max(worst,
                         std::abs(three_point_phase(seg(t1), seg(t2), seg(t3))));
    }
    return worst;
}

Vector qubit(double theta, double azimuth) {
    Vector v(2);
    v << std::cos(theta / 2.0),
        std::sin(theta / 2.0) * std::exp(Complex(0.0, azimuth));
    return v;
}

}  // namespace

TEST_CASE("geodesic between identical rays is constant") {
    Rng rng(41);
    const Vector a = testing::random_vector(rng, 2);
    const Segment seg = qubit_geodesic(a, Vector(3.0 * a));
    for (double t : {0.0, 0.35, 1.0}) {
        const Vector v = seg(t);
        CHECK(std::abs(v.dot(a)) / (v.norm() * a.norm()) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("quarter great circle from the pole") {
    Vector e0(2), plus(2);
    e0 << 1.0, 0.0;
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const Segment seg = qubit_geodesic(e0, plus);

    // midpoint sits halfway down the x-meridian
    const Vector mid = seg(0.5);
    CHECK(std::abs(mid(0)) == doctest::Approx(std::cos(kPi / 8.0)).epsilon(1e-12));
    CHECK(std::abs(mid(1)) == doctest::Approx(std::sin(kPi / 8.0)).epsilon(1e-12));

    Rng rng(42);
    CHECK(max_triple_phase(seg, 60, rng) <= 1e-10);
}

TEST_CASE("geodesics are null phase curves") {
    Rng rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const Vector a = testing::random_vector(rng, 2);
        const Vector b = testing::random_vector(rng, 2);
        if (std::abs(a.dot(b)) < 1e-2) continue;
        CHECK(max_triple_phase(qubit_geodesic(a, b), 40, rng) <= 1e-9);
    }
}

TEST_CASE("antipodal endpoints are rejected") {
    Vector e0(2), e1(2);
    e0 << 1.0, 0.0;
    e1 << 0.0, 1.0;
    CHECK_THROWS_AS(qubit_geodesic(e0, e1), NoUniqueGeodesic);
    CHECK_THROWS_AS(qubit_geodesic(Vector::Zero(2), e1), ValidationError);
    CHECK_THROWS_AS(qubit_geodesic(Vector::Ones(3), Vector::Ones(3)),
                    ValidationError);
}

TEST_CASE("coherent lines are null phase curves") {
    Rng rng(44);
    const Segment fixed = coherent_line(Complex(0.3, -0.1), Complex(0.3, -0.1), 40);
    CHECK((fixed(0.2) - fixed(0.9)).cwiseAbs().maxCoeff() <= 1e-15);

    const Segment line = coherent_line(Complex(0.0, 0.0), Complex(1.0, 0.0), 40);
    CHECK(max_triple_phase(line, 40, rng) <= 1e-8);

    std::uniform_real_distribution<double> unit(-0.7, 0.7);
    for (int trial = 0; trial < 6; ++trial) {
        const Complex z1(unit(rng), unit(rng));
        const Complex z2(unit(rng), unit(rng));
        CHECK(max_triple_phase(coherent_line(z1, z2, 60), 30, rng) <= 1e-8);
    }

    CHECK_THROWS_AS(coherent_line(Complex(1.0, 0.0), Complex(0.0, 1.0), 5),
                    TruncationError);
}

TEST_CASE("ray path validates continuity") {
    Vector e0(2);
    e0 << 1.0, 0.0;
    const Vector a = qubit(0.9, 0.3);
    const Vector b = qubit(1.7, -0.8);

    CHECK_NOTHROW(RayPath({qubit_geodesic(e0, a), qubit_geodesic(a, b),
                           qubit_geodesic(b, e0)},
                          true));
    // a gap between segments
    CHECK_THROWS_AS(RayPath({qubit_geodesic(e0, a), qubit_geodesic(b, e0)}, false),
                    ValidationError);
    // closure missing
    CHECK_THROWS_AS(RayPath({qubit_geodesic(e0, a), qubit_geodesic(a, b)}, true),
                    ValidationError);
}

TEST_CASE("connection integral vanishes for pure marginals") {
    Vector w(2);
    w << std::cos(0.4), std::sin(0.4);
    const DensityOperator pure(Matrix(w * w.adjoint()));

    const Vector a = qubit(0.5, 0.0);
    const Vector b = qubit(1.2, 1.0);
    const Vector c = qubit(0.9, -1.3);
    const RayPath loop(
        {qubit_geodesic(a, b), qubit_geodesic(b, c), qubit_geodesic(c, a)}, true);
    CHECK(wrap_distance(connection_integral(loop, pure, 4000), 0.0) <= 1e-6);
}

TEST_CASE("connection integral reproduces the two-qubit closed form") {
    const double lambda = kPi / 3.0, phi = kPi / 2.0;
    const BipartiteState psi = make_two_qubit(lambda);
    const StateSequence seq = qubit_sequence(phi);
    const RayPath loop = two_qubit_relative_geodesic_loop(psi, seq);
    const DensityOperator rho1 = reduced_density(psi, 1);

    const double oracle = gamma_two_qubit_closed_form(lambda, phi);
    CHECK(std::abs(connection_integral(loop, rho1, 10000) - oracle) <= 1e-6);
}

TEST_CASE("midpoint rule converges at second order") {
    const BipartiteState psi = make_two_qubit(1.1);
    const StateSequence seq = qubit_sequence(1.9);
    const RayPath loop = two_qubit_relative_geodesic_loop(psi, seq);
    const DensityOperator rho1 = reduced_density(psi, 1);
    const double exact = relative_sequence_phase(psi, seq).phase;

    const double e250 = std::abs(connection_integral(loop, rho1, 250) - exact);
    const double e500 = std::abs(connection_integral(loop, rho1, 500) - exact);
    const double e1000 = std::abs(connection_integral(loop, rho1, 1000) - exact);
    CHECK(e250 / e500 == doctest::Approx(4.0).epsilon(0.4));
    CHECK(e500 / e1000 == doctest::Approx(4.0).epsilon(0.4));
}

TEST_CASE("coherent polygon integral matches the discrete chain") {
    const double r = 0.5;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::vector<Complex> zs{Complex(0.0, 0.0), Complex(inv_sqrt2, 0.1),
                                  Complex(0.1, inv_sqrt2)};
    const BipartiteState psi = make_squeezed(r, 60);
    const RayPath loop = coherent_polygon_loop(zs, 60);
    const DensityOperator rho1 = reduced_density(psi, 1);

    std::vector<Vector> vs;
    for (Complex z : zs) vs.push_back(coherent_vector(z, 60));
    const double discrete = relative_sequence_phase(psi, StateSequence(vs)).phase;

    CHECK(std::abs(connection_integral(loop, rho1, 3000) - discrete) <= 1e-6);
}

TEST_CASE("orientation reversal negates the integral") {
    const BipartiteState psi = make_two_qubit(0.9);
    const StateSequence seq = qubit_sequence(1.3);
    const RayPath loop = two_qubit_relative_geodesic_loop(psi, seq);
    const DensityOperator rho1 = reduced_density(psi, 1);

    const double fwd = connection_integral(loop, rho1, 2000);
    const double bwd = connection_integral(loop.reversed(), rho1, 2000);
    CHECK(fwd == doctest::Approx(-bwd).epsilon(1e-9));
}

TEST_CASE("integral is independent of the phase section") {
    const BipartiteState psi = make_two_qubit(1.0);
    const StateSequence seq = qubit_sequence(1.5);
    const RayPath loop = two_qubit_relative_geodesic_loop(psi, seq);
    const DensityOperator rho1 = reduced_density(psi, 1);
    const double base = connection_integral(loop, rho1, 4000);

    Rng rng(45);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::vector<Segment> twisted;
    for (const Segment& seg : loop.segments()) {
        const double w0 = coeff(rng), w1 = coeff(rng);
        const auto inner = seg.map;
        twisted.push_back(Segment{[inner, w0, w1](double t) -> Vector {
            return std::exp(Complex(0.0, w0 * t + w1 * t * t)) * inner(t);
        }});
    }
    const RayPath gauged(std::move(twisted), true);
    CHECK(connection_integral(gauged, rho1, 4000) ==
          doctest::Approx(base).epsilon(1e-7));
}

TEST_CASE("singular connection is reported with its location") {
    Vector w(2);
    w << 1.0, 0.0;
    const DensityOperator pure(Matrix(w * w.adjoint()));
    // A loop hugging the south pole, essentially orthogonal to |0><0|.
    const Vector a = qubit(kPi - 1e-8, 0.0);
    const Vector b = qubit(kPi - 1e-8, 2.0);
    const Vector c = qubit(kPi - 1e-8, 4.0);
    const RayPath loop(
        {qubit_geodesic(a, b), qubit_geodesic(b, c), qubit_geodesic(c, a)}, true);
    CHECK_THROWS_AS(connection_integral(loop, pure, 500), SingularConnection);
}

TEST_CASE("refinement phase agrees with the integral and the chain") {
    const double lambda = kPi / 3.0, phi = kPi / 2.0;
    const BipartiteState psi = make_two_qubit(lambda);
    const StateSequence seq = qubit_sequence(phi);
    const RayPath loop = two_qubit_relative_geodesic_loop(psi, seq);

    const double r512 = refinement_phase(loop, psi, 512);
    const double r1024 = refinement_phase(loop, psi, 1024);
    CHECK(std::abs(r512 - r1024) <= 1e-6);
    CHECK(wrap_distance(r1024, relative_sequence_phase(psi, seq).phase) <= 1e-8);

    CHECK_THROWS_AS(refinement_phase(loop, psi, 2), ValidationError);
}

TEST_CASE("refinement phase vanishes for product states") {
    Rng rng(46);
    const BipartiteState psi = testing::random_product_state(rng, 2, 2);
    const Vector a = qubit(0.4, 0.2);
    const Vector b = qubit(1.0, 1.1);
    const Vector c = qubit(0.8, -0.9);
    const RayPath loop(
        {qubit_geodesic(a, b), qubit_geodesic(b, c), qubit_geodesic(c, a)}, true);
    for (int m : {16, 64, 256}) {
        CHECK(std::abs(refinement_phase(loop, psi, m)) <= 1e-10);
    }
}

TEST_CASE("pull-back loop requires an invertible relative map") {
    CHECK_THROWS_AS(
        two_qubit_relative_geodesic_loop(make_two_qubit(0.0), qubit_sequence(1.0)),
        RankDeficient);
}

TEST_SUITE_END();
