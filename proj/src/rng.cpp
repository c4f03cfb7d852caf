#include "symcap/rng.hpp"

#include <cmath>

namespace symcap {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream_id))) {}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

Eigen::VectorXd RngStream::gaussian_vector(int dim) {
  Eigen::VectorXd g(dim);
  for (int i = 0; i < dim; ++i) g[i] = normal();
  return g;
}

Eigen::MatrixXd RngStream::gaussian_matrix(int rows, int cols) {
  Eigen::MatrixXd g(rows, cols);
  // column-major fill order is part of the reproducibility contract
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = normal();
  return g;
}

Eigen::VectorXd RngStream::sphere_point(int dim) {
  for (;;) {
    Eigen::VectorXd g = gaussian_vector(dim);
    const double n = g.norm();
    if (n > 1e-300) return g / n;
  }
}

}  // namespace symcap
