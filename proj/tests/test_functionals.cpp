#include <doctest.h>

#include <cmath>

#include "symcap/errors.hpp"
#include "symcap/functionals.hpp"

using namespace symcap;

namespace {

// E |u|_1 over the unit sphere of R^m
double cube_mean_width(int m) {
  return m * std::exp(std::lgamma(0.5 * m) - std::lgamma(0.5 * (m + 1))) / std::sqrt(M_PI);
}

bool within(const EstimatorResult& r, double truth, double k = 4.0) {
  return std::abs(r.estimate - truth) <= k * r.std_error;
}

}  // namespace

TEST_CASE("circumradius and inradius") {
  CHECK(circumradius(make_body(cube_spec(8))) == doctest::Approx(std::sqrt(8.0)));
  CHECK(circumradius(make_body(cross_spec(8))) == doctest::Approx(1.0));
  CHECK(circumradius(make_body(ball_spec(8, 3.0))) == doctest::Approx(3.0));
  CHECK(circumradius(make_body(ellipsoid_spec({1, 4}))) == doctest::Approx(std::sqrt(4 / M_PI)));
  CHECK(inradius(make_body(cube_spec(8))) == doctest::Approx(1.0));
  CHECK(inradius(make_body(cross_spec(8))) == doctest::Approx(1 / std::sqrt(8.0)));
  CHECK(inradius(make_body(ellipsoid_spec({1, 4}))) == doctest::Approx(std::sqrt(1 / M_PI)));
  CHECK(inradius(make_body(ball_product_spec(8, 4.0))) == doctest::Approx(1.0));
  CHECK(circumradius(make_body(lp_spec(8, 3.0))) == doctest::Approx(std::pow(8.0, 0.5 - 1.0 / 3)));
  Eigen::MatrixXd v(8, 4);
  v << Eigen::MatrixXd::Identity(4, 4), -Eigen::MatrixXd::Identity(4, 4);
  v(0, 1) = 0.5;
  v(4, 1) = -0.5;
  // facet description only: no exact route to the farthest point
  CHECK_THROWS_AS(circumradius(polar(make_body(vpolytope_spec(v)))), MissingOracle);
}

TEST_CASE("contact points") {
  const ContactPoint c = contact_point(make_body(cube_spec(8)));
  CHECK(c.v.norm() == doctest::Approx(1.0));
  CHECK(c.v[0] == doctest::Approx(1.0));
  CHECK(c.source == ContactSource::ClosedForm);
  const ContactPoint e = contact_point(make_body(ellipsoid_spec({1, 4})));
  CHECK(e.v.norm() == doctest::Approx(std::sqrt(M_PI)));
}

TEST_CASE("mean width against closed forms") {
  for (int m : {4, 8, 16}) {
    const auto r = mean_width(make_body(cube_spec(m)), 40000, 3);
    CHECK(within(r, cube_mean_width(m)));
  }
  const auto b = mean_width(make_body(ball_spec(8, 2.0)), 1000, 3);
  CHECK(b.estimate == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(b.std_error < 1e-12);
}

TEST_CASE("section mean width") {
  Vec v = Vec::Zero(8);
  v[3] = 1.0;
  const auto b = section_mean_width(make_body(ball_spec(8, 1.0)), v, 500, 1);
  CHECK(b.estimate == doctest::Approx(1.0).epsilon(1e-8));
  // a coordinate section of the cube is the cube of one dimension less
  const auto c = section_mean_width(make_body(cube_spec(8)), v, 20000, 1);
  CHECK(within(c, cube_mean_width(7)));
}

TEST_CASE("volume radius") {
  CHECK(volume_radius_sq(ball_spec(8, 3.0)) == doctest::Approx(9.0));
  CHECK(volume_radius_sq(ellipsoid_spec({1, 4})) == doctest::Approx(2 / M_PI));
  const double kappa8 = std::pow(M_PI, 4) / 24;
  CHECK(volume_radius_sq(cube_spec(8)) == doctest::Approx(std::pow(256 / kappa8, 0.25)));
  CHECK(volume_radius_sq(cross_spec(8)) == doctest::Approx(std::pow(256.0 / 40320 / kappa8, 0.25)));
  CHECK(volume_radius_sq(lp_spec(8, 2.0)) == doctest::Approx(1.0));
  CHECK(volume_radius_sq(lp_spec(8, 1.0)) == doctest::Approx(volume_radius_sq(cross_spec(8))));
  CHECK(volume_radius_sq(box_spec({1, 4})) == doctest::Approx(std::sqrt(4.0 / (M_PI * M_PI / 2))));
}

TEST_CASE("non-degeneracy functional") {
  const auto b = nondeg_functional(make_body(ball_spec(8, 1.0)), 0.5, 1000, 2);
  CHECK(b.estimate == doctest::Approx(1.0).epsilon(1e-12));
  const auto c = nondeg_functional(make_body(cube_spec(8)), 1.0, 20000, 2);
  // Jensen: mean(h) * mean(1/h) >= 1
  CHECK(c.estimate >= 1.0);
  CHECK(c.estimate < 2.0);
}

TEST_CASE("reference growth per family") {
  const auto f = table1_reference(cube_spec(16));
  CHECK(f.r_sq == 1.0);
  CHECK(f.ratio == doctest::Approx(std::sqrt(8 / std::log(8.0))));
  CHECK(f.volradius_sq == 8.0);
  const auto g = table1_reference(cross_spec(16));
  CHECK(g.ratio == doctest::Approx(1.0 / 8));
  const auto e = table1_reference(ellipsoid_spec({1, 1, 1, 1}));
  CHECK(e.ratio == doctest::Approx(1.0));
  CHECK_THROWS_AS(table1_reference(ball_spec(8, 1.0)), InvalidSpec);
}

TEST_CASE("family table row") {
  const Table1Row r = table1_row(cube_spec(8), 5000, 1);
  CHECK(r.r_sq == doctest::Approx(1.0));
  CHECK(r.ratio.estimate > 1.0);
  CHECK(r.ratio.std_error > 0.0);
  // E(1,...,1) is the ball of radius 1/sqrt(pi): r / M* = r^2 = 1/pi
  const Table1Row e = table1_row(ellipsoid_spec({1, 1, 1, 1}), 1000, 1);
  CHECK(e.ratio.estimate == doctest::Approx(1 / M_PI).epsilon(1e-8));
  CHECK(e.ratio_normalized == doctest::Approx(1 / M_PI).epsilon(1e-8));
}
