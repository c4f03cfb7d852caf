#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace symcap {

/// Reproducible random substream identified by (seed, stream_id).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Uniform and normal variates are derived here rather than through
/// the <random> distributions so the sequence is identical across standard
/// library implementations.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Marsaglia polar method).
  double normal();

  Eigen::VectorXd gaussian_vector(int dim);
  Eigen::MatrixXd gaussian_matrix(int rows, int cols);
  /// Uniform point on the unit sphere S^{dim-1}.
  Eigen::VectorXd sphere_point(int dim);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// SplitMix64 finalizer; used to derive engine seeds and hashes.
std::uint64_t splitmix64(std::uint64_t x);

/// Stream ids are namespaced by purpose so that independent experiments
/// sharing a seed never reuse a substream.
constexpr std::uint64_t stream_id(std::uint32_t purpose, std::uint32_t index) {
  return (static_cast<std::uint64_t>(purpose) << 32) | index;
}

namespace purpose {
inline constexpr std::uint32_t kAlphaStarts = 1;
inline constexpr std::uint32_t kRotations = 2;
inline constexpr std::uint32_t kSphere = 3;
inline constexpr std::uint32_t kSectionSphere = 4;
inline constexpr std::uint32_t kPushforward = 5;
inline constexpr std::uint32_t kFrames = 6;
inline constexpr std::uint32_t kBootstrap = 7;
inline constexpr std::uint32_t kTestData = 8;
}  // namespace purpose

}  // namespace symcap
