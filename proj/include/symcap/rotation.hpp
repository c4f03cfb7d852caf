#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "symcap/body.hpp"
#include "symcap/rng.hpp"

namespace symcap {

/// Element of SO(dim). Orthogonality (max-entry error of O^T O - I at most
/// kOrthogonalityTol) and det = +1 are established when the object is built.
class RotationMatrix {
 public:
  static constexpr double kOrthogonalityTol = 1e-12;

  static RotationMatrix identity(int dim);
  /// Rotation by `angle` in the oriented (i, j) coordinate plane.
  static RotationMatrix plane(int dim, int i, int j, double angle);
  /// Validates orthogonality and orientation of an arbitrary matrix.
  static RotationMatrix from_matrix(Mat entries, double tol = kOrthogonalityTol);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Mat& matrix() const { return entries_; }

 private:
  explicit RotationMatrix(Mat entries) : entries_(std::move(entries)) {}
  friend RotationMatrix haar_rotation(RngStream& rng, int dim);

  Mat entries_;
};

/// J e_{x_i} = e_{y_i}, J e_{y_i} = -e_{x_i} in the (x_1..x_n, y_1..y_n) order.
Mat standard_J(int dim);

/// Haar-distributed rotation: QR of a Gaussian matrix, columns multiplied by
/// sign(R_jj), last column negated when the orientation is negative. A draw
/// with a vanishing R diagonal is resampled.
RotationMatrix haar_rotation(RngStream& rng, int dim);

/// First k columns of a Haar rotation (a uniformly random orthonormal
/// k-frame), at O(dim * k^2) cost. For k < dim the law coincides with the
/// first k columns of haar_rotation.
Mat haar_frame(RngStream& rng, int dim, int k);

/// O^T A O
Mat conjugate(const Mat& a, const RotationMatrix& o);

/// J(O) = O^T J O
Mat conjugated_J(const RotationMatrix& o);

double hilbert_schmidt_distance(const RotationMatrix& a, const RotationMatrix& b);

struct PushforwardIdentities {
  double t_obs = 0.0;
  double r_obs = 0.0;
  double t_pred = 0.0;
  double r_pred = 0.0;
};

/// Cylindrical coordinates of z = O^T A O y about y, both directly and from
/// v = O y. The two agree identically for every O.
PushforwardIdentities pushforward_identities(const Mat& a, const VecRef& y, const RotationMatrix& o);

/// CDF of one coordinate of the uniform law on S^{m-1}, i.e. the normalized
/// integral of (1 - s^2)^{(m-3)/2}.
double sphere_coordinate_cdf(int m, double s);

struct UniformityResult {
  double ks_statistic = 0.0;
  double p_value = 0.0;
  std::int64_t n_samples = 0;
  double max_inner_with_y = 0.0;
  double max_norm_defect = 0.0;
};

/// A unit vector orthogonal to the unit vector y, chosen deterministically.
Vec orthogonal_unit(const VecRef& y);

/// Checks <z, y> = 0 and |z| = 1 to 1e-10 for every sample (throwing
/// IdentityViolation otherwise) and KS-tests <z, w> against the coordinate
/// law of S^{dim-2}.
UniformityResult check_pushforward_samples(const VecRef& y, const std::vector<Vec>& samples);

/// Draws n samples of O^T J O y for Haar O and runs check_pushforward_samples.
UniformityResult pushforward_uniformity_test(std::uint64_t seed, int dim, const VecRef& y,
                                             std::int64_t n, int workers = 1);

}  // namespace symcap
