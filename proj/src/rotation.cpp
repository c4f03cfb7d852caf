#include "symcap/rotation.hpp"

#include <cmath>
#include <stdexcept>

#include "symcap/errors.hpp"
#include "symcap/stats.hpp"

namespace symcap {

namespace {

void require_even(int dim) {
  if (dim <= 0 || dim % 2 != 0) throw InvalidSpec("complex structure needs an even dimension");
}

double orthogonality_error(const Mat& q) {
  return (q.transpose() * q - Mat::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

RotationMatrix RotationMatrix::identity(int dim) { return RotationMatrix(Mat::Identity(dim, dim)); }

RotationMatrix RotationMatrix::plane(int dim, int i, int j, double angle) {
  if (i == j || i < 0 || j < 0 || i >= dim || j >= dim)
    throw std::invalid_argument("plane rotation: bad coordinate pair");
  Mat o = Mat::Identity(dim, dim);
  const double c = std::cos(angle), s = std::sin(angle);
  o(i, i) = c;
  o(j, j) = c;
  o(j, i) = s;
  o(i, j) = -s;
  return RotationMatrix(std::move(o));
}

RotationMatrix RotationMatrix::from_matrix(Mat entries, double tol) {
  if (entries.rows() != entries.cols()) throw std::invalid_argument("rotation must be square");
  if (orthogonality_error(entries) > tol) throw std::invalid_argument("matrix is not orthogonal");
  if (Eigen::PartialPivLU<Mat>(entries).determinant() < 0.0)
    throw std::invalid_argument("matrix has determinant -1");
  return RotationMatrix(std::move(entries));
}

Mat standard_J(int dim) {
  require_even(dim);
  const int n = dim / 2;
  Mat j = Mat::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    j(n + i, i) = 1.0;
    j(i, n + i) = -1.0;
  }
  return j;
}

RotationMatrix haar_rotation(RngStream& rng, int dim) {
  if (dim < 2) throw std::invalid_argument("haar_rotation: dim must be >= 2");
  for (;;) {
    const Mat g = rng.gaussian_matrix(dim, dim);
    Eigen::HouseholderQR<Mat> qr(g);
    const Mat& packed = qr.matrixQR();
    const double scale = std::max(packed.diagonal().cwiseAbs().maxCoeff(), 1e-300);
    if (packed.diagonal().cwiseAbs().minCoeff() < 1e-12 * scale) continue;

    Mat q = qr.householderQ();
    // det Q = (-1)^{number of nontrivial reflectors}
    int orientation = 1;
    for (Eigen::Index k = 0; k < qr.hCoeffs().size(); ++k)
      if (qr.hCoeffs()[k] != 0.0) orientation = -orientation;
    for (int j = 0; j < dim; ++j)
      if (packed(j, j) < 0.0) {
        q.col(j) = -q.col(j);
        orientation = -orientation;
      }
    if (orientation < 0) q.col(dim - 1) = -q.col(dim - 1);
    if (orthogonality_error(q) > RotationMatrix::kOrthogonalityTol) continue;
    return RotationMatrix(std::move(q));
  }
}

Mat haar_frame(RngStream& rng, int dim, int k) {
  if (k < 1 || k > dim) throw std::invalid_argument("haar_frame: need 1 <= k <= dim");
  for (;;) {
    const Mat g = rng.gaussian_matrix(dim, k);
    Eigen::HouseholderQR<Mat> qr(g);
    const Mat& packed = qr.matrixQR();
    const double scale = std::max(packed.diagonal().cwiseAbs().maxCoeff(), 1e-300);
    if (packed.diagonal().cwiseAbs().minCoeff() < 1e-12 * scale) continue;
    Mat q = qr.householderQ() * Mat::Identity(dim, k);
    for (int j = 0; j < k; ++j)
      if (packed(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
  }
}

Mat conjugate(const Mat& a, const RotationMatrix& o) {
  if (a.rows() != o.dim() || a.cols() != o.dim())
    throw std::invalid_argument("conjugate: shape mismatch");
  return o.matrix().transpose() * a * o.matrix();
}

Mat conjugated_J(const RotationMatrix& o) { return conjugate(standard_J(o.dim()), o); }

double hilbert_schmidt_distance(const RotationMatrix& a, const RotationMatrix& b) {
  return (a.matrix() - b.matrix()).norm();
}

PushforwardIdentities pushforward_identities(const Mat& a, const VecRef& y, const RotationMatrix& o) {
  if (std::abs(y.norm() - 1.0) > 1e-12) throw std::invalid_argument("pushforward_identities: y must be a unit vector");
  const Vec z = conjugate(a, o) * y;
  const Vec v = o.matrix() * y;
  const Vec av = a * v;
  PushforwardIdentities out;
  out.t_obs = z.dot(y);
  out.r_obs = (z - out.t_obs * y).norm();
  out.t_pred = av.dot(v);
  out.r_pred = std::sqrt(std::max(0.0, av.squaredNorm() - out.t_pred * out.t_pred));
  return out;
}

double sphere_coordinate_cdf(int m, double s) {
  if (m < 2) throw std::invalid_argument("sphere_coordinate_cdf: m must be >= 2");
  if (!(s >= -1.0 && s <= 1.0)) throw std::invalid_argument("sphere_coordinate_cdf: s outside [-1,1]");
  // (1+s)/2 ~ Beta((m-1)/2, (m-1)/2)
  const double a = 0.5 * (m - 1);
  return regularized_incomplete_beta(a, a, 0.5 * (1.0 + s));
}

Vec orthogonal_unit(const VecRef& y) {
  Eigen::Index i = 0;
  y.cwiseAbs().minCoeff(&i);
  Vec w = -y[i] * y;
  w[i] += 1.0;
  return w / w.norm();
}

UniformityResult check_pushforward_samples(const VecRef& y, const std::vector<Vec>& samples) {
  if (samples.size() < 100) throw std::invalid_argument("pushforward test needs at least 100 samples");
  const int dim = static_cast<int>(y.size());
  const Vec w = orthogonal_unit(y);
  UniformityResult out;
  out.n_samples = static_cast<std::int64_t>(samples.size());
  std::vector<double> proj;
  proj.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Vec& z = samples[i];
    const double inner = std::abs(z.dot(y));
    const double defect = std::abs(z.norm() - 1.0);
    out.max_inner_with_y = std::max(out.max_inner_with_y, inner);
    out.max_norm_defect = std::max(out.max_norm_defect, defect);
    if (inner > 1e-10 || defect > 1e-10)
      throw IdentityViolation("sample " + std::to_string(i) + " leaves the sphere S^{2n-1} cap y^perp (|<z,y>| = " +
                              std::to_string(inner) + ", ||z|-1| = " + std::to_string(defect) + ")");
    proj.push_back(std::clamp(z.dot(w), -1.0, 1.0));
  }
  const KsResult ks = ks_test(std::move(proj), [dim](double s) { return sphere_coordinate_cdf(dim - 1, s); });
  out.ks_statistic = ks.statistic;
  out.p_value = ks.p_value;
  return out;
}

UniformityResult pushforward_uniformity_test(std::uint64_t seed, int dim, const VecRef& y_in,
                                             std::int64_t n, int workers) {
  require_even(dim);
  if (dim < 4) throw std::invalid_argument("pushforward test needs dim >= 4");
  if (n < 100) throw std::invalid_argument("pushforward test needs at least 100 samples");
  if (y_in.size() != dim || std::abs(y_in.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("pushforward test needs a unit y of matching dimension");
  const Vec y = y_in;
  const Mat j = standard_J(dim);
  auto samples = parallel_samples<Vec>(n, seed, purpose::kPushforward, workers,
                                       [&](RngStream& rng, std::int64_t) -> Vec {
                                         const RotationMatrix o = haar_rotation(rng, dim);
                                         return conjugate(j, o) * y;
                                       });
  return check_pushforward_samples(y, samples);
}

}  // namespace symcap
