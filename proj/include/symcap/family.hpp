#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace symcap {

enum class FamilyKind {
  Cube,
  CrossPolytope,
  LpBall,
  EuclideanBall,
  SymplecticEllipsoid,
  SymplecticBox,
  BallProduct,
  VPolytope,
  EllipsoidMatrix,
};

std::string_view to_string(FamilyKind kind);

/// Parametric descriptor of a centrally symmetric body in R^{2n}.
///
/// Coordinates are ordered (x_1..x_n, y_1..y_n); the complex coordinate z_i
/// is the pair (x_i, y_i) = (index i-1, index n+i-1).
struct FamilySpec {
  FamilyKind kind = FamilyKind::EuclideanBall;
  int dim = 0;
  /// LpBall exponent in [1, inf]; infinity is admitted as the max-norm.
  double p = 2.0;
  /// EuclideanBall radius; BallProduct radius of the B^2 factor.
  double radius = 1.0;
  /// BallProduct radius of the B^{2n-2} factor.
  double lambda = 1.0;
  /// SymplecticEllipsoid / SymplecticBox parameters a_1 <= ... <= a_n.
  std::vector<double> axes;
  /// VPolytope extreme points, one per row.
  Eigen::MatrixXd vertices;
  /// EllipsoidMatrix positive definite A with K = {x : x^T A x <= 1}.
  Eigen::MatrixXd matrix;

  int n() const { return dim / 2; }
};

/// Throws InvalidSpec unless every invariant of the kind holds.
void validate(const FamilySpec& spec);

FamilySpec cube_spec(int dim);
FamilySpec cross_spec(int dim);
FamilySpec lp_spec(int dim, double p);
FamilySpec ball_spec(int dim, double radius);
FamilySpec ellipsoid_spec(std::vector<double> axes);
FamilySpec box_spec(std::vector<double> axes);
FamilySpec ball_product_spec(int dim, double lambda, double radius = 1.0);
FamilySpec vpolytope_spec(Eigen::MatrixXd vertices);
FamilySpec ellipsoid_matrix_spec(Eigen::MatrixXd matrix);

/// Parses the compact CLI grammar (`cube:8`, `cross:8`, `lp:8:1.5`,
/// `lp:8:inf`, `ball:8:1.0`, `ellipsoid:1,4,9`, `box:1,4`,
/// `ballproduct:8:100[:r]`) or, when the text starts with '{', the JSON form.
FamilySpec parse_family_spec(std::string_view text);

nlohmann::json to_json(const FamilySpec& spec);
FamilySpec family_from_json(const nlohmann::json& j);

/// Compact form when one exists, JSON dump otherwise.
std::string describe(const FamilySpec& spec);

}  // namespace symcap
