#pragma once

#include <Eigen/Dense>

namespace symcap {

struct LinearMaximum {
  double value = 0.0;
  Eigen::VectorXd point;
};

/// max <c, y> subject to rows(A) * y <= 1, y free.
///
/// Dense tableau simplex with Bland's rule, started from the slack basis
/// (y = 0 is feasible). Throws symcap::Error when the region is unbounded in
/// direction c, which for a spanning symmetric row set cannot happen.
LinearMaximum maximize_over_unit_facets(const Eigen::MatrixXd& rows, const Eigen::VectorXd& c);

}  // namespace symcap
