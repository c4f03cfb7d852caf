#include <doctest.h>

#include <cmath>

#include "symcap/errors.hpp"
#include "symcap/rotation.hpp"
#include "symcap/stats.hpp"

using namespace symcap;

TEST_CASE("Haar rotations are orthogonal with determinant one") {
  RngStream rng(1, 0);
  for (int d : {4, 7, 16, 33}) {
    for (int t = 0; t < 20; ++t) {
      const RotationMatrix o = haar_rotation(rng, d);
      const Mat e = o.matrix().transpose() * o.matrix() - Mat::Identity(d, d);
      CHECK(e.cwiseAbs().maxCoeff() < 1e-12);
      CHECK(o.matrix().fullPivLu().determinant() == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("Haar entry moments") {
  // O_11 is a coordinate of a uniform unit vector: mean 0, variance 1/d
  const int d = 8;
  auto x = parallel_samples<double>(20000, 2, purpose::kTestData, 1,
                                    [&](RngStream& rng, std::int64_t) { return haar_rotation(rng, d).matrix()(0, 0); });
  const auto m = moments(x);
  CHECK(std::abs(m.mean) < 4.0 * std::sqrt(1.0 / d / 20000));
  CHECK(m.variance == doctest::Approx(1.0 / d).epsilon(0.05));
  // det(O) = +1 forces the last column's law to match the others
  auto y = parallel_samples<double>(20000, 2, purpose::kTestData, 1,
                                    [&](RngStream& rng, std::int64_t) { return haar_rotation(rng, d).matrix()(0, d - 1); });
  CHECK(moments(y).variance == doctest::Approx(1.0 / d).epsilon(0.05));
}

TEST_CASE("Haar frames") {
  RngStream rng(3, 0);
  for (int t = 0; t < 20; ++t) {
    const Mat f = haar_frame(rng, 128, 2);
    CHECK((f.transpose() * f - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("from_matrix validates") {
  Mat r = Mat::Identity(4, 4);
  CHECK_NOTHROW(RotationMatrix::from_matrix(r));
  r(0, 0) = -1;
  CHECK_THROWS_AS(RotationMatrix::from_matrix(r), std::invalid_argument);
  Mat s = Mat::Identity(4, 4) * 1.01;
  CHECK_THROWS_AS(RotationMatrix::from_matrix(s), std::invalid_argument);
  const RotationMatrix p = RotationMatrix::plane(4, 0, 2, 0.3);
  CHECK(p.matrix()(0, 0) == doctest::Approx(std::cos(0.3)));
  CHECK(p.matrix()(2, 0) == doctest::Approx(std::sin(0.3)));
}

TEST_CASE("standard complex structure") {
  const Mat j = standard_J(6);
  CHECK((j * j + Mat::Identity(6, 6)).norm() < 1e-15);
  CHECK((j + j.transpose()).norm() < 1e-15);
  CHECK(j(3, 0) == 1.0);  // J e_{x1} = e_{y1}
  RngStream rng(4, 0);
  const Mat jo = conjugated_J(haar_rotation(rng, 6));
  CHECK((jo + jo.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((jo * jo + Mat::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("pushforward identities hold per sample") {
  RngStream rng(5, 0);
  for (int t = 0; t < 50; ++t) {
    const Mat a = rng.gaussian_matrix(8, 8);
    const Vec y = rng.sphere_point(8);
    const auto id = pushforward_identities(a, y, haar_rotation(rng, 8));
    CHECK(id.t_obs == doctest::Approx(id.t_pred).epsilon(1e-12));
    CHECK(id.r_obs == doctest::Approx(id.r_pred).epsilon(1e-10));
  }
}

TEST_CASE("sphere coordinate CDF") {
  for (double s : {-0.9, -0.3, 0.0, 0.4, 0.95}) {
    // S^2: Archimedes, the coordinate is uniform on [-1, 1]
    CHECK(sphere_coordinate_cdf(3, s) == doctest::Approx(0.5 * (1 + s)).epsilon(1e-12));
    // S^1: arcsine law
    CHECK(sphere_coordinate_cdf(2, s) == doctest::Approx(0.5 + std::asin(s) / M_PI).epsilon(1e-10));
  }
}

TEST_CASE("pushforward uniformity") {
  Vec y = Vec::Zero(8);
  y[0] = 1;
  const auto u = pushforward_uniformity_test(7, 8, y, 2000);
  CHECK(u.p_value > 0.001);
  CHECK(u.max_inner_with_y < 1e-12);
}

TEST_CASE("adversarial pushforward samples") {
  Vec y = Vec::Zero(8);
  y[0] = 1;
  // leaves y^perp
  std::vector<Vec> bad(200, y);
  CHECK_THROWS_AS(check_pushforward_samples(y, bad), IdentityViolation);
  // on the right sphere, wrong law: all mass on one point
  std::vector<Vec> clumped(200, orthogonal_unit(y));
  CHECK(check_pushforward_samples(y, clumped).p_value < 1e-6);
  // wrong law: uniform on a lower-dimensional great sphere
  RngStream rng(9, 0);
  std::vector<Vec> low;
  for (int i = 0; i < 2000; ++i) {
    Vec z = Vec::Zero(8);
    z.segment(1, 2) = rng.sphere_point(2);
    low.push_back(z);
  }
  CHECK(check_pushforward_samples(y, low).p_value < 1e-6);
}
