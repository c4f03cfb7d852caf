#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <thread>
#include <vector>

#include "symcap/rng.hpp"

namespace symcap {

/// Monte Carlo point estimate. std_error is the sample standard deviation
/// over sqrt(n_samples), or a delta-method propagation of it for derived
/// quantities.
struct EstimatorResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  double confidence = 0.95;

  /// Half-width of the normal-approximation interval at `confidence`.
  double half_width() const;
};

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  std::int64_t count = 0;

  double sd() const;
};

/// Mean and unbiased variance, accumulated in index order.
SampleMoments moments(std::span<const double> xs);

EstimatorResult estimate_mean(std::span<const double> xs, std::uint64_t seed);

/// (mean of x^p)^{1/p} for positive samples, p != 0, with delta-method SE.
/// Powers are evaluated as exp(p log x).
EstimatorResult moment_root(std::span<const double> xs, double p, std::uint64_t seed);

/// Percentile bootstrap standard error of moment_root.
double bootstrap_moment_root_se(std::span<const double> xs, double p, int resamples,
                                std::uint64_t seed);

/// sqrt(a.se^2 + b.se^2)
double joint_se(const EstimatorResult& a, const EstimatorResult& b);

double standard_normal_quantile(double prob);

/// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

/// Survival function of the asymptotic Kolmogorov distribution.
double kolmogorov_survival(double lambda);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Deterministic parallel sampling.
///
/// Sample i is produced by fn(rng, i) with rng the substream
/// (seed, stream_id(purpose, i / kBlock)), advanced through the preceding
/// samples of that block. Output is indexed by i, so the returned vector is
/// bit-identical for any worker count.
inline constexpr std::int64_t kSampleBlock = 64;

template <class T, class Fn>
std::vector<T> parallel_samples(std::int64_t n, std::uint64_t seed, std::uint32_t purpose,
                                int workers, Fn&& fn) {
  std::vector<T> out(static_cast<std::size_t>(n));
  const std::int64_t blocks = (n + kSampleBlock - 1) / kSampleBlock;
  auto run_block = [&](std::int64_t b) {
    RngStream rng(seed, stream_id(purpose, static_cast<std::uint32_t>(b)));
    const std::int64_t end = std::min(n, (b + 1) * kSampleBlock);
    for (std::int64_t i = b * kSampleBlock; i < end; ++i)
      out[static_cast<std::size_t>(i)] = fn(rng, i);
  };
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::int64_t>(blocks, 1))));
  if (workers == 1) {
    for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::int64_t b = w; b < blocks; b += workers) run_block(b);
    });
  pool.clear();
  return out;
}

}  // namespace symcap
