#include <doctest.h>

#include <cmath>

#include "symcap/alpha.hpp"
#include "symcap/errors.hpp"
#include "symcap/functionals.hpp"

using namespace symcap;

namespace {

// max over sigma, tau in {-1,1}^d of tau^T M sigma, with no shortcuts
double brute_sign_pairs(const Mat& m) {
  const int d = static_cast<int>(m.rows());
  double best = -1e300;
  for (unsigned a = 0; a < (1u << d); ++a)
    for (unsigned b = 0; b < (1u << d); ++b) {
      double v = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) v += ((b >> i) & 1u ? -1.0 : 1.0) * m(i, j) * ((a >> j) & 1u ? -1.0 : 1.0);
      best = std::max(best, v);
    }
  return best;
}

AlphaOptions alternating() {
  AlphaOptions o;
  o.force_alternating = true;
  return o;
}

}  // namespace

TEST_CASE("alpha of standard bodies") {
  CHECK(alpha(make_body(cube_spec(8))).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(alpha(make_body(ball_spec(8, 1.0))).value == doctest::Approx(1.0).epsilon(1e-12));
  // K° is the ball of radius 1/2
  CHECK(alpha(make_body(ball_spec(8, 2.0))).value == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(alpha(make_body(ellipsoid_spec({1, 4}))).value - M_PI) < 1e-9);
  CHECK(alpha(make_body(cross_spec(8))).value == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(alpha(make_body(cube_spec(8))).method == AlphaMethod::VertexExact);
  CHECK(alpha(make_body(ellipsoid_spec({1, 4}))).method == AlphaMethod::Spectral);
}

TEST_CASE("sandwich interval") {
  const auto s = ehz_sandwich(make_body(ellipsoid_spec({1, 4})));
  CHECK(s.lo == doctest::Approx(1 / M_PI));
  CHECK(s.hi == doctest::Approx(4 / M_PI));
  CHECK(s.certified);
}

TEST_CASE("cross-polytope alpha against brute-force sign pairs") {
  RngStream rng(1, 0);
  const ConvexBody k = make_body(cross_spec(6));
  for (int t = 0; t < 5; ++t) {
    const RotationMatrix o = haar_rotation(rng, 6);
    const AlphaResult a = alpha(k, o);
    CHECK(a.method == AlphaMethod::VertexExact);
    CHECK(a.value == doctest::Approx(brute_sign_pairs(conjugated_J(o))).epsilon(1e-12));
    // the certificate attains the value
    REQUIRE(a.certificate);
    CHECK(a.certificate->second.dot(conjugated_J(o) * a.certificate->first) == doctest::Approx(a.value));
  }
}

TEST_CASE("cube alpha is the largest entry of J(O) in absolute value") {
  RngStream rng(2, 0);
  const ConvexBody k = make_body(cube_spec(8));
  for (int t = 0; t < 10; ++t) {
    const RotationMatrix o = haar_rotation(rng, 8);
    CHECK(alpha(k, o).value == doctest::Approx(conjugated_J(o).cwiseAbs().maxCoeff()).epsilon(1e-12));
  }
}

TEST_CASE("alternating maximization never exceeds exact values") {
  RngStream rng(3, 0);
  const std::vector<FamilySpec> specs = {cube_spec(6), cross_spec(6), ellipsoid_spec({1, 2, 7}), box_spec({1, 3, 4}),
                                         ball_product_spec(6, 4.0), ball_product_spec(8, 0.25)};
  for (const auto& spec : specs) {
    const ConvexBody k = make_body(spec);
    for (int t = 0; t < 3; ++t) {
      const RotationMatrix o = haar_rotation(rng, spec.dim);
      const AlphaResult exact = alpha(k, o), heur = alpha(k, o, alternating());
      CHECK(exact.certified());
      CHECK_FALSE(heur.certified());
      CHECK(heur.value <= exact.value * (1 + 1e-9));
      // multi-start finds the optimum on these small instances
      CHECK(heur.value == doctest::Approx(exact.value).epsilon(1e-6));
    }
  }
}

TEST_CASE("lower bound route for bodies without an exact one") {
  const AlphaResult a = alpha(make_body(lp_spec(8, 3.0)));
  CHECK(a.method == AlphaMethod::AlternatingLowerBound);
  CHECK_FALSE(a.gap_bound);
  CHECK(a.value > 0);
}

TEST_CASE("alpha is invariant under rotations commuting with J") {
  // rotation in the (x_1, y_1) plane is unitary
  const RotationMatrix u = RotationMatrix::plane(8, 0, 4, 0.7);
  for (const auto& spec : {cross_spec(8), ellipsoid_spec({1, 2, 3, 5}), ball_product_spec(8, 3.0)}) {
    const ConvexBody k = make_body(spec);
    CHECK(alpha(k, u).value == doctest::Approx(alpha(k).value).epsilon(1e-12));
  }
}

TEST_CASE("exact ellipsoid capacity") {
  Mat c = Mat::Identity(6, 6) / 4.0;  // ball of radius 2
  CHECK(ehz_ellipsoid(c) == doctest::Approx(4 * M_PI));
  const auto e = make_body(ellipsoid_spec({2, 3, 10}));
  CHECK(ehz_ellipsoid(*e.quad_form()) == doctest::Approx(2.0));
  Mat bad = Mat::Identity(4, 4);
  bad(1, 1) = -1;
  CHECK_THROWS_AS(ehz_ellipsoid(bad), InvalidSpec);
  Mat wild = Mat::Identity(4, 4);
  wild(0, 0) = 1e10;
  CHECK_THROWS_AS(ehz_ellipsoid(wild), InvalidSpec);
}

TEST_CASE("capacity lies inside the sandwich for rotated ellipsoids") {
  RngStream rng(4, 0);
  const ConvexBody k = make_body(ellipsoid_spec({1, 3, 8}));
  for (int t = 0; t < 20; ++t) {
    const RotationMatrix o = haar_rotation(rng, 6);
    const Mat c = o.matrix() * *k.quad_form() * o.matrix().transpose();
    const double cap = ehz_ellipsoid(0.5 * (c + c.transpose()));
    const auto s = ehz_sandwich(k, o);
    CHECK(cap >= s.lo * (1 - 1e-9));
    CHECK(cap <= s.hi * (1 + 1e-9));
  }
}

TEST_CASE("Lipschitz bound") {
  RngStream rng(5, 0);
  const ConvexBody k = make_body(cube_spec(8));
  for (int t = 0; t < 20; ++t) {
    const auto g = lipschitz_gap(k, haar_rotation(rng, 8), haar_rotation(rng, 8));
    CHECK(std::abs(g.lhs) <= g.rhs + 1e-9);
  }
  CHECK_THROWS_AS(lipschitz_gap(make_body(lp_spec(8, 3.0)), RotationMatrix::identity(8), RotationMatrix::identity(8)),
                  UncertifiedComputation);
}

TEST_CASE("alpha needs dim >= 4") {
  CHECK_THROWS_AS(alpha(make_body(cube_spec(2))), InvalidSpec);
}
