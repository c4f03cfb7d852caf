#include "symcap/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace symcap {

double EstimatorResult::half_width() const {
  return standard_normal_quantile(0.5 + 0.5 * confidence) * std_error;
}

double SampleMoments::sd() const { return std::sqrt(variance); }

SampleMoments moments(std::span<const double> xs) {
  SampleMoments m;
  m.count = static_cast<std::int64_t>(xs.size());
  if (xs.empty()) return m;
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.variance = ss / static_cast<double>(xs.size() - 1);
  }
  return m;
}

EstimatorResult estimate_mean(std::span<const double> xs, std::uint64_t seed) {
  if (xs.empty()) throw std::invalid_argument("estimate_mean: no samples");
  const SampleMoments m = moments(xs);
  EstimatorResult r;
  r.estimate = m.mean;
  r.std_error = m.sd() / std::sqrt(static_cast<double>(m.count));
  r.n_samples = m.count;
  r.seed = seed;
  return r;
}

EstimatorResult moment_root(std::span<const double> xs, double p, std::uint64_t seed) {
  if (p == 0.0) throw std::invalid_argument("moment_root: p must be nonzero");
  if (xs.empty()) throw std::invalid_argument("moment_root: no samples");
  std::vector<double> powered(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0)) throw std::invalid_argument("moment_root: samples must be positive");
    powered[i] = std::exp(p * std::log(xs[i]));
  }
  const SampleMoments m = moments(powered);
  EstimatorResult r;
  r.estimate = std::exp(std::log(m.mean) / p);
  // d/dm m^{1/p} = (1/p) m^{1/p - 1}
  const double se_m = m.sd() / std::sqrt(static_cast<double>(m.count));
  r.std_error = std::abs(r.estimate / (p * m.mean)) * se_m;
  r.n_samples = m.count;
  r.seed = seed;
  return r;
}

double bootstrap_moment_root_se(std::span<const double> xs, double p, int resamples,
                                std::uint64_t seed) {
  RngStream rng(seed, stream_id(purpose::kBootstrap, 0));
  std::vector<double> stats(static_cast<std::size_t>(resamples));
  std::vector<double> draw(xs.size());
  for (int b = 0; b < resamples; ++b) {
    for (auto& d : draw) d = xs[static_cast<std::size_t>(rng.next_u64() % xs.size())];
    stats[static_cast<std::size_t>(b)] = moment_root(draw, p, seed).estimate;
  }
  return moments(stats).sd();
}

double joint_se(const EstimatorResult& a, const EstimatorResult& b) {
  return std::hypot(a.std_error, b.std_error);
}

double standard_normal_quantile(double prob) {
  if (!(prob > 0.0 && prob < 1.0)) throw std::invalid_argument("quantile: prob outside (0,1)");
  // Acklam's rational approximation followed by one Halley step.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  double x;
  if (prob < 0.02425) {
    const double q = std::sqrt(-2 * std::log(prob));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (prob <= 1 - 0.02425) {
    const double q = prob - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const double q = std::sqrt(-2 * std::log(1 - prob));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - prob;
  const double u = e * std::sqrt(2 * M_PI) * std::exp(x * x / 2);
  return x - u / (1 + x * u / 2);
}

namespace {

double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("regularized_incomplete_beta: continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("incomplete beta: a, b must be positive");
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("incomplete beta: x outside [0,1]");
  if (x == 0.0 || x == 1.0) return x;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;  // series is 1 to double precision here
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_test: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, kolmogorov_survival(std::sqrt(n) * d)};
}

}  // namespace symcap
