#include <doctest.h>

#include <cmath>

#include "symcap/ensemble.hpp"
#include "symcap/errors.hpp"

using namespace symcap;

namespace {

EnsembleConfig config(FamilySpec body, std::int64_t n, std::uint64_t seed, double p = 1.0) {
  EnsembleConfig c;
  c.body = std::move(body);
  c.n_samples = n;
  c.seed = seed;
  c.p = p;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS(validate(config(cube_spec(8), 50, 1)));
  CHECK_THROWS(validate(config(cube_spec(8), 500, 1, 0.0)));
  CHECK_NOTHROW(validate(config(cube_spec(8), 500, 1, -0.5)));
}

TEST_CASE("family_at_dim") {
  CHECK(family_at_dim(ellipsoid_spec({1, 4}), 8).axes == std::vector<double>{1, 4, 9, 16});
  CHECK(family_at_dim(ellipsoid_spec({2, 2}), 6).axes == std::vector<double>{2, 2, 2});
  CHECK(family_at_dim(ellipsoid_spec({1, 3}), 4).axes == std::vector<double>{1, 3});
  CHECK(family_at_dim(cube_spec(8), 16).dim == 16);
  CHECK(family_at_dim(ball_product_spec(8, 5.0), 12).lambda == 5.0);
}

TEST_CASE("ball ensemble is constant") {
  for (double p : {1.0, -0.5, 3.0}) {
    const auto m = expect_alpha_moment(config(ball_spec(8, 1.0), 200, 3, p));
    CHECK(m.result.estimate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.result.std_error < 1e-12);
  }
  const auto s = capacity_expectation_sandwich(config(ball_spec(8, 1.0), 200, 3));
  CHECK(s.lo.estimate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.hi.estimate == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("ensembles do not depend on the worker count") {
  auto a = config(cross_spec(8), 300, 5);
  auto b = a;
  b.workers = 3;
  CHECK(alpha_ensemble(a).values == alpha_ensemble(b).values);
  auto c = a;
  c.n_samples = 150;
  const auto full = alpha_ensemble(a).values, part = alpha_ensemble(c).values;
  CHECK(std::equal(part.begin(), part.end(), full.begin()));
}

TEST_CASE("heuristic bodies need an explicit opt-in") {
  auto c = config(lp_spec(8, 3.0), 100, 1);
  CHECK_THROWS_AS(alpha_ensemble(c), UncertifiedComputation);
  c.allow_heuristic = true;
  c.alpha_options.starts = 4;
  const auto e = alpha_ensemble(c);
  CHECK_FALSE(e.certified);
  CHECK(e.method == AlphaMethod::AlternatingLowerBound);
}

TEST_CASE("sandwich endpoints differ by exactly four") {
  const auto s = capacity_expectation_sandwich(config(cube_spec(8), 300, 2));
  CHECK(s.hi.estimate == 4.0 * s.lo.estimate);
  CHECK(s.hi.std_error == 4.0 * s.lo.std_error);
  CHECK_THROWS(capacity_expectation_sandwich(config(cube_spec(8), 300, 2, -1.0)));
}

TEST_CASE("exact ellipsoid capacity ensemble") {
  const auto round = ellipsoid_capacity_expectation({2, 2, 2}, 1.0, 200, 1);
  CHECK(round.result.estimate == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(round.result.std_error < 1e-10);

  const auto e = ellipsoid_capacity_expectation({1, 4}, 1.0, 2000, 1);
  CHECK(e.result.estimate >= 1.0);
  CHECK(e.result.estimate <= 4.0);
  CHECK(e.spectral_failures == 0);

  // the sandwich built on the same rotations contains the exact mean
  const auto s = capacity_expectation_sandwich(config(ellipsoid_spec({1, 4}), 2000, 1));
  CHECK(e.result.estimate >= s.lo.estimate - 4 * joint_se(e.result, s.lo));
  CHECK(e.result.estimate <= s.hi.estimate + 4 * joint_se(e.result, s.hi));
}

TEST_CASE("per-sample sandwich on ellipsoids") {
  for (const auto& pr : capacity_alpha_pairs(make_body(ellipsoid_spec({1, 2, 5, 9})), 300, 4)) {
    CHECK(pr.capacity * pr.alpha >= 1.0 - 1e-6);
    CHECK(pr.capacity * pr.alpha <= 4.0 + 1e-6);
  }
}

TEST_CASE("power-mean ordering") {
  const auto hi = expect_alpha_moment(config(cube_spec(8), 1000, 6, 1.0));
  const auto lo = expect_alpha_moment(config(cube_spec(8), 1000, 6, -1.0));
  CHECK(lo.result.estimate <= hi.result.estimate + 4 * joint_se(lo.result, hi.result));
  const auto half = expect_alpha_moment(config(cube_spec(8), 1000, 6, -0.5));
  CHECK(std::isfinite(half.result.estimate));
}

TEST_CASE("exact-mean identity") {
  const auto b = mean_identity(make_body(ball_spec(8, 1.0)), 200, 200, 1);
  CHECK(b.ensemble.estimate == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(b.reference.estimate == doctest::Approx(1.0).epsilon(1e-8));
  const auto c = mean_identity(make_body(cross_spec(8)), 3000, 50000, 2);
  CHECK(std::abs(c.ensemble.estimate - c.reference.estimate) <= 4 * joint_se(c.ensemble, c.reference));
}

TEST_CASE("Haar invariance: a jointly rotated ellipsoid has the same alpha law") {
  RngStream rng(7, 0);
  const FamilySpec e = ellipsoid_spec({1, 2, 4});
  const RotationMatrix u = haar_rotation(rng, 6);
  const Mat a = *make_body(e).quad_form();
  const Mat ua = u.matrix() * a * u.matrix().transpose();
  const auto m1 = estimate_mean(alpha_ensemble(config(e, 3000, 1)).values, 1);
  const auto m2 = estimate_mean(alpha_ensemble(config(ellipsoid_matrix_spec(0.5 * (ua + ua.transpose())), 3000, 2)).values, 2);
  CHECK(std::abs(m1.estimate - m2.estimate) <= 4 * joint_se(m1, m2));
}

TEST_CASE("tail profiles") {
  const auto t = tail_profile(std::vector<double>(500, 2.0), {0.1, 0.2});
  CHECK(t.degenerate);
  RngStream rng(8, 0);
  std::vector<double> g;
  for (int i = 0; i < 20000; ++i) g.push_back(rng.normal());
  std::vector<double> grid;
  for (int k = 1; k <= 12; ++k) grid.push_back(0.25 * k);
  const auto p = tail_profile(g, grid);
  for (std::size_t i = 1; i < p.empirical_tail.size(); ++i) CHECK(p.empirical_tail[i] <= p.empirical_tail[i - 1]);
  // a Gaussian tail has log-slope near -1/2 in t^2 at moderate t
  CHECK(p.fitted_slope < -0.3);
  CHECK(p.fitted_slope > -1.0);

  const auto ball = concentration_profile(ball_spec(8, 1.0), {8, 16}, 200, 1);
  CHECK(ball[0].degenerate);
  CHECK(ball[1].degenerate);
}

TEST_CASE("psi2 estimates") {
  CHECK(psi2_norm_estimate(std::vector<double>(2000, 1.0)) == doctest::Approx(1.0));
  std::vector<double> pm;
  for (int i = 0; i < 2000; ++i) pm.push_back(i % 2 ? 1.0 : -1.0);
  CHECK(psi2_norm_estimate(pm) == doctest::Approx(1.0));
  RngStream rng(9, 0);
  std::vector<double> g;
  for (int i = 0; i < 100000; ++i) g.push_back(rng.normal());
  const double e = psi2_norm_estimate(g);
  CHECK(e >= 0.7);
  CHECK(e <= 1.5);
  CHECK_THROWS(psi2_norm_estimate({}));
  CHECK_THROWS(psi2_norm_estimate(std::vector<double>(10, 1.0)));
  CHECK_THROWS(psi2_norm_estimate(g, 11));
}

TEST_CASE("frame and full-rotation xi samples share a law") {
  RngStream rng(10, 0);
  const Vec x = rng.sphere_point(8), y = rng.sphere_point(8);
  const auto a = xi_samples(x, y, 20000, 1);
  const auto b = xi_samples_full(x, y, 20000, 2);
  const auto ma = moments(a), mb = moments(b);
  CHECK(std::abs(ma.mean - mb.mean) <= 4 * std::sqrt(ma.variance / 20000 + mb.variance / 20000));
  CHECK(ma.variance == doctest::Approx(mb.variance).epsilon(0.05));
}

TEST_CASE("counterexample sweep grows") {
  const auto pts = counterexample_sweep({1, 8}, 6, 300, 1, 1, 2000);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].capacity_lower.estimate == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(pts[1].capacity_lower.estimate > pts[0].capacity_lower.estimate);
  CHECK(pts[1].certified);
  CHECK_THROWS_AS(counterexample_sweep({1}, 4, 300, 1), InvalidSpec);
}

TEST_CASE("Chevet diagnostic is finite and bounded") {
  const auto c = chevet_diagnostic(make_body(cube_spec(8)), 200, 1);
  CHECK(c.gaussian_norm.estimate > 0.0);
  CHECK(c.ratio > 0.0);
  CHECK(c.ratio < 10.0);
}
