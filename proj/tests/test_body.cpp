#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "symcap/body.hpp"
#include "symcap/errors.hpp"
#include "symcap/rng.hpp"
#include "symcap/rotation.hpp"

using namespace symcap;

namespace {

// Brute-force support over every sign vertex diag(s) * sigma.
double sign_vertex_support(const Vec& s, const Vec& u) {
  const int d = static_cast<int>(s.size());
  double best = -1e300;
  for (unsigned m = 0; m < (1u << d); ++m) {
    double v = 0.0;
    for (int i = 0; i < d; ++i) v += ((m >> i) & 1u ? -1.0 : 1.0) * s[i] * u[i];
    best = std::max(best, v);
  }
  return best;
}

std::vector<FamilySpec> sample_specs() {
  return {cube_spec(6),       cross_spec(6),        lp_spec(6, 1.5),           lp_spec(6, 4.0),
          ball_spec(6, 2.0),  ellipsoid_spec({1, 4, 9}), box_spec({1, 2, 5}), ball_product_spec(6, 3.0),
          ball_product_spec(8, 0.5, 2.0)};
}

}  // namespace

TEST_CASE("support functions against closed forms") {
  RngStream rng(3, 0);
  for (int t = 0; t < 50; ++t) {
    const Vec u = rng.gaussian_vector(6);
    CHECK(make_body(cube_spec(6)).support(u) == doctest::Approx(u.lpNorm<1>()));
    CHECK(make_body(cross_spec(6)).support(u) == doctest::Approx(u.lpNorm<Eigen::Infinity>()));
    CHECK(make_body(ball_spec(6, 2.0)).support(u) == doctest::Approx(2.0 * u.norm()));
    // Hoelder: h of B_p is the dual q-norm
    const double q = 3.0;  // p = 1.5
    CHECK(make_body(lp_spec(6, 1.5)).support(u) ==
          doctest::Approx(std::pow(u.cwiseAbs().array().pow(q).sum(), 1.0 / q)));
    // box: explicit vertex enumeration
    Vec s(6);
    s << 0.5, std::sqrt(2.0) / 2, std::sqrt(5.0) / 2, 0.5, std::sqrt(2.0) / 2, std::sqrt(5.0) / 2;
    CHECK(make_body(box_spec({1, 2, 5})).support(u) == doctest::Approx(sign_vertex_support(s, u)));
    // E(a): A = diag(pi / a) on (x_i, y_i)
    double h2 = 0.0;
    const double a[3] = {1, 4, 9};
    for (int i = 0; i < 3; ++i) h2 += (a[i] / M_PI) * (u[i] * u[i] + u[i + 3] * u[i + 3]);
    CHECK(make_body(ellipsoid_spec({1, 4, 9})).support(u) == doctest::Approx(std::sqrt(h2)));
    // K_lambda = B^2(1) x B^4(lambda) on z_1 versus the rest
    const double up = std::hypot(u[0], u[3]);
    const double uq = std::sqrt(u.squaredNorm() - up * up);
    CHECK(make_body(ball_product_spec(6, 3.0)).support(u) == doctest::Approx(up + 3.0 * uq));
  }
}

TEST_CASE("support points attain the support and lie on the boundary") {
  RngStream rng(4, 0);
  for (const auto& spec : sample_specs()) {
    const ConvexBody k = make_body(spec);
    for (int t = 0; t < 20; ++t) {
      const Vec c = rng.gaussian_vector(spec.dim);
      const Vec x = k.support_point(c);
      CHECK(x.dot(c) == doctest::Approx(k.support(c)).epsilon(1e-9));
      CHECK(k.gauge(x) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("polar duality: h of the polar is the gauge") {
  RngStream rng(5, 0);
  for (const auto& spec : sample_specs()) {
    const ConvexBody k = make_body(spec);
    const ConvexBody kp = polar(k);
    const ConvexBody kpp = polar(kp);
    for (int t = 0; t < 20; ++t) {
      const Vec u = rng.gaussian_vector(spec.dim);
      CHECK(kp.support(u) == doctest::Approx(k.gauge(u)).epsilon(1e-9));
      CHECK(kp.gauge(u) == doctest::Approx(k.support(u)).epsilon(1e-9));
      CHECK(kpp.support(u) == doctest::Approx(k.support(u)).epsilon(1e-9));
    }
  }
}

TEST_CASE("rotated bodies: h_{OK}(u) = h_K(O^T u)") {
  RngStream rng(6, 0);
  for (const auto& spec : sample_specs()) {
    const ConvexBody k = make_body(spec);
    const RotationMatrix o = haar_rotation(rng, spec.dim);
    const ConvexBody ok = rotate(k, o.matrix());
    const ConvexBody okp = polar(ok);
    for (int t = 0; t < 10; ++t) {
      const Vec u = rng.gaussian_vector(spec.dim);
      const Vec ou = o.matrix().transpose() * u;
      CHECK(ok.support(u) == doctest::Approx(k.support(ou)).epsilon(1e-9));
      CHECK(ok.gauge(u) == doctest::Approx(k.gauge(ou)).epsilon(1e-9));
      CHECK(okp.support(u) == doctest::Approx(k.gauge(ou)).epsilon(1e-9));
    }
  }
}

TEST_CASE("vertex data") {
  const auto v = make_body(cube_spec(4)).vertices();
  REQUIRE(v);
  CHECK(v->rows() == 16);
  const auto c = make_body(cross_spec(4)).vertices();
  REQUIRE(c);
  CHECK(c->rows() == 8);
  CHECK_FALSE(make_body(cube_spec(22)).vertices());
  const auto s = make_body(cube_spec(22)).sign_vertices();
  REQUIRE(s);
  CHECK(s->size() == (std::uint64_t{1} << 22));
  CHECK(*s->begin() == Vec::Ones(22));
}

TEST_CASE("farthest points and tie-breaks") {
  CHECK(*make_body(cube_spec(6)).farthest_point() == Vec::Ones(6));
  Vec e1 = Vec::Zero(6);
  e1[0] = 1;
  CHECK(*make_body(cross_spec(6)).farthest_point() == e1);
  CHECK(*make_body(ball_spec(6, 3.0)).farthest_point() == 3.0 * e1);
  // E(1,4,9): the longest axis is the last complex coordinate, x_3 first
  const Vec f = *make_body(ellipsoid_spec({1, 4, 9})).farthest_point();
  CHECK(f.norm() == doctest::Approx(std::sqrt(9 / M_PI)));
  CHECK(f[2] == doctest::Approx(std::sqrt(9 / M_PI)));
}

TEST_CASE("section support") {
  RngStream rng(8, 0);
  const ConvexBody ball = make_body(ball_spec(8, 1.0));
  const ConvexBody cube = make_body(cube_spec(8));
  for (int t = 0; t < 30; ++t) {
    const Vec v = rng.sphere_point(8);
    Vec u = rng.gaussian_vector(8);
    u -= u.dot(v) * v;
    CHECK(section_support(ball, v, u) == doctest::Approx(u.norm()).epsilon(1e-8));
    // h_cube(u + t v) = sum |u_i + t v_i| is piecewise linear; its minimum
    // sits at a breakpoint t = -u_i / v_i
    double best = 1e300;
    for (int i = 0; i < 8; ++i) best = std::min(best, (u - (u[i] / v[i]) * v).lpNorm<1>());
    CHECK(section_support(cube, v, u) == doctest::Approx(best).epsilon(1e-8));
  }
}

TEST_CASE("complex plane split") {
  const auto [p, q] = first_complex_plane_split(8);
  CHECK(p == std::vector<int>{0, 4});
  CHECK(q == std::vector<int>{1, 2, 3, 5, 6, 7});
}

TEST_CASE("invalid bodies are rejected") {
  FamilySpec s = cube_spec(8);
  s.dim = 7;
  CHECK_THROWS_AS(make_body(s), InvalidSpec);
}
