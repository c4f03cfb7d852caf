#include <doctest.h>

#include <cmath>

#include "symcap/rng.hpp"
#include "symcap/stats.hpp"

using namespace symcap;

namespace {

double binom(int n, int k) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)); }

// I_x(a, b) for integer a, b as a binomial tail
double beta_tail(int a, int b, double x) {
  double s = 0.0;
  for (int j = a; j <= a + b - 1; ++j) s += binom(a + b - 1, j) * std::pow(x, j) * std::pow(1 - x, a + b - 1 - j);
  return s;
}

}  // namespace

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(42, stream_id(purpose::kSphere, 3)), b(42, stream_id(purpose::kSphere, 3));
  RngStream c(42, stream_id(purpose::kSphere, 4)), d(43, stream_id(purpose::kSphere, 3));
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs_c |= x != c.next_u64();
    differs_d |= x != d.next_u64();
  }
  CHECK(differs_c);
  CHECK(differs_d);
}

TEST_CASE("uniform and normal variates have the right first moments") {
  RngStream rng(7, 0);
  std::vector<double> u, g;
  for (int i = 0; i < 200000; ++i) {
    const double x = rng.uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    u.push_back(x);
    g.push_back(rng.normal());
  }
  const auto mu = moments(u), mg = moments(g);
  CHECK(std::abs(mu.mean - 0.5) < 4 * std::sqrt(1.0 / 12 / 200000));
  CHECK(std::abs(mu.variance - 1.0 / 12) < 1e-3);
  CHECK(std::abs(mg.mean) < 4 * std::sqrt(1.0 / 200000));
  CHECK(std::abs(mg.variance - 1.0) < 0.02);
}

TEST_CASE("sphere points have unit norm") {
  RngStream rng(1, 1);
  for (int i = 0; i < 100; ++i) CHECK(std::abs(rng.sphere_point(9).norm() - 1.0) < 1e-14);
}

TEST_CASE("moments and moment roots") {
  const std::vector<double> xs = {1, 2, 3, 4};
  const auto m = moments(xs);
  CHECK(m.mean == doctest::Approx(2.5));
  CHECK(m.variance == doctest::Approx(5.0 / 3));
  CHECK(moment_root(xs, 1.0, 0).estimate == doctest::Approx(2.5));
  CHECK(moment_root(xs, 2.0, 0).estimate == doctest::Approx(std::sqrt(7.5)));
  CHECK(moment_root(xs, -1.0, 0).estimate == doctest::Approx(4.0 / (1 + 0.5 + 1.0 / 3 + 0.25)));

  const std::vector<double> flat(500, 3.0);
  const auto r = moment_root(flat, -0.5, 0);
  CHECK(r.estimate == doctest::Approx(3.0));
  CHECK(r.std_error < 1e-12);
  CHECK_THROWS(moment_root(xs, 0.0, 0));
}

TEST_CASE("delta-method and bootstrap errors agree") {
  RngStream rng(5, 0);
  std::vector<double> xs;
  for (int i = 0; i < 4000; ++i) xs.push_back(1.0 + rng.uniform());
  const auto r = moment_root(xs, 2.0, 5);
  const double b = bootstrap_moment_root_se(xs, 2.0, 200, 5);
  CHECK(b == doctest::Approx(r.std_error).epsilon(0.3));
}

TEST_CASE("normal quantile") {
  CHECK(standard_normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(standard_normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(standard_normal_quantile(1e-6) == doctest::Approx(-4.753424308822899).epsilon(1e-10));
}

TEST_CASE("incomplete beta against binomial tails") {
  for (int a : {1, 2, 5, 9})
    for (int b : {1, 3, 7})
      for (double x : {0.01, 0.2, 0.5, 0.77, 0.99})
        CHECK(regularized_incomplete_beta(a, b, x) == doctest::Approx(beta_tail(a, b, x)).epsilon(1e-10));
  CHECK(regularized_incomplete_beta(3.5, 3.5, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(2.5, 2.5, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(2.5, 2.5, 1.0) == 1.0);
}

TEST_CASE("Kolmogorov distribution tail") {
  CHECK(kolmogorov_survival(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(kolmogorov_survival(1.6276) == doctest::Approx(0.01).epsilon(1e-3));
  CHECK(kolmogorov_survival(0.0) == 1.0);
}

TEST_CASE("KS test accepts the true law and rejects a shifted one") {
  RngStream rng(9, 0);
  std::vector<double> good, bad;
  for (int i = 0; i < 3000; ++i) {
    const double u = rng.uniform();
    good.push_back(u);
    bad.push_back(std::min(1.0, u + 0.05));
  }
  auto cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_test(good, cdf).p_value > 0.001);
  CHECK(ks_test(bad, cdf).p_value < 1e-6);
}

TEST_CASE("parallel sampling is independent of the worker count and of n") {
  auto draw = [](RngStream& rng, std::int64_t) { return rng.normal(); };
  const auto a = parallel_samples<double>(1000, 11, purpose::kTestData, 1, draw);
  const auto b = parallel_samples<double>(1000, 11, purpose::kTestData, 3, draw);
  const auto c = parallel_samples<double>(300, 11, purpose::kTestData, 2, draw);
  CHECK(a == b);
  CHECK(std::equal(c.begin(), c.end(), a.begin()));
}
