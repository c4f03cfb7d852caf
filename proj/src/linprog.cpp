#include "symcap/linprog.hpp"

#include <limits>
#include <vector>

#include "symcap/errors.hpp"

namespace symcap {

LinearMaximum maximize_over_unit_facets(const Eigen::MatrixXd& rows, const Eigen::VectorXd& c) {
  const Eigen::Index m = rows.rows();
  const Eigen::Index d = rows.cols();
  const Eigen::Index nvar = 2 * d + m;  // y+, y-, slacks
  constexpr double kEps = 1e-12;

  // tableau row i < m: constraint, row m: reduced costs of min -c^T y
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, nvar + 1);
  t.block(0, 0, m, d) = rows;
  t.block(0, d, m, d) = -rows;
  t.block(0, 2 * d, m, m).setIdentity();
  t.block(0, nvar, m, 1).setOnes();
  t.block(m, 0, 1, d) = -c.transpose();
  t.block(m, d, 1, d) = c.transpose();

  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = 2 * d + i;

  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  for (int iter = 0; iter < 100000; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < nvar; ++j)
      if (t(m, j) < -kEps * scale) {
        enter = j;
        break;
      }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, enter) <= kEps) continue;
      const double ratio = t(i, nvar) / t(i, enter);
      if (ratio < best - 1e-15 ||
          (ratio <= best + 1e-15 && leave >= 0 &&
           basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) throw Error("linear program is unbounded: facet set does not bound the region");

    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i)
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  LinearMaximum out;
  out.point = Eigen::VectorXd::Zero(d);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index b = basis[static_cast<std::size_t>(i)];
    if (b < d) out.point[b] += t(i, nvar);
    else if (b < 2 * d) out.point[b - d] -= t(i, nvar);
  }
  out.value = c.dot(out.point);
  return out;
}

}  // namespace symcap
