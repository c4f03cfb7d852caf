#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "symcap/family.hpp"

namespace symcap {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using VecRef = Eigen::Ref<const Eigen::VectorXd>;

/// Largest dimension for which a sign-vector (cube-type) vertex set is
/// enumerated explicitly.
inline constexpr int kMaxSignEnumerationDim = 20;

namespace shape {

/// diag(scales) * B_p, p in [1, inf].
struct ScaledLp {
  double p = 2.0;
  Vec scales;
};

/// {x : x^T A x <= 1}
struct Ellipsoid {
  Mat form;
  Mat inverse;
};

/// conv of the rows; the row set is centrally symmetric.
struct Vertices {
  Mat rows;
};

/// {x : rows * x <= 1}; the row set is centrally symmetric.
struct Facets {
  Mat rows;
};

/// Two Euclidean balls on complementary coordinate blocks, combined either
/// as a product B_P(r1) x B_Q(r2) or as conv(B_P(r1) u B_Q(r2)).
struct Blocks {
  std::vector<int> first;
  std::vector<int> second;
  double r1 = 1.0;
  double r2 = 1.0;
  bool hull = false;
};

}  // namespace shape

using Shape = std::variant<shape::ScaledLp, shape::Ellipsoid, shape::Vertices, shape::Facets,
                           shape::Blocks>;

/// Implicit sign-vector vertex set diag(scales) * {-1, 1}^dim, enumerated in
/// binary order starting from the all-positive vertex.
class SignVertexRange {
 public:
  class iterator {
   public:
    using value_type = Vec;
    using difference_type = std::ptrdiff_t;
    iterator(const Vec* scales, std::uint64_t index) : scales_(scales), index_(index) {}
    Vec operator*() const;
    iterator& operator++() {
      ++index_;
      return *this;
    }
    bool operator==(const iterator& o) const { return index_ == o.index_; }

   private:
    const Vec* scales_;
    std::uint64_t index_;
  };

  explicit SignVertexRange(Vec scales);
  iterator begin() const { return {&scales_, 0}; }
  iterator end() const { return {&scales_, count_}; }
  std::uint64_t size() const { return count_; }

 private:
  Vec scales_;
  std::uint64_t count_;
};

/// Centrally symmetric convex body given by evaluation oracles.
///
/// Immutable after construction; every oracle is a pure function and may be
/// evaluated concurrently.
class ConvexBody {
 public:
  ConvexBody(FamilySpec spec, Shape shape, bool polar_of_spec = false);

  const FamilySpec& spec() const { return spec_; }
  /// True when this body is the polar of the family described by spec().
  bool is_polar_of_spec() const { return polar_of_spec_; }
  int dim() const { return spec_.dim; }
  const Shape& shape() const { return shape_; }
  /// Orthogonal frame F with body = F * shape, when the shape could not be
  /// transformed explicitly.
  const std::optional<Mat>& frame() const { return frame_; }
  std::string_view representation() const;

  /// h_K(u) = sup_{x in K} <x, u>
  double support(const VecRef& u) const;
  /// ||x||_K = inf{t > 0 : x in tK}
  double gauge(const VecRef& x) const;
  /// A point of K attaining h_K(c).
  Vec support_point(const VecRef& c) const;

  /// Explicit extreme points, one per row. Cube-type bodies list them only up
  /// to kMaxSignEnumerationDim.
  std::optional<Mat> vertices() const;
  /// Scales s when the vertex set is diag(s) * {-1,1}^dim.
  std::optional<Vec> sign_vertex_scales() const;
  std::optional<SignVertexRange> sign_vertices() const;
  /// A with K = {x : x^T A x <= 1}.
  std::optional<Mat> quad_form() const;
  /// Point of K of maximal Euclidean norm, from an exact route. Ties go to
  /// the smallest coordinate index with positive sign.
  std::optional<Vec> farthest_point() const;

  ConvexBody with_frame(const Mat& rotation) const;
  ConvexBody unframed() const;

 private:
  FamilySpec spec_;
  Shape shape_;
  bool polar_of_spec_ = false;
  std::optional<Mat> frame_;
};

/// Builds the body of a validated family descriptor. SymplecticBox is the
/// centered box prod [-sqrt(a_i)/2, sqrt(a_i)/2]^2.
ConvexBody make_body(const FamilySpec& spec);

ConvexBody polar(const ConvexBody& body);

/// The body O K, with vertex lists, facet lists and quadratic forms
/// transformed explicitly where the representation allows it.
ConvexBody rotate(const ConvexBody& body, const Mat& rotation);

/// Support function of the section K cap v^perp evaluated at u in v^perp:
/// min over t of h_K(u + t v). v must be a unit vector.
double section_support(const ConvexBody& body, const VecRef& v, const VecRef& u);

/// Index lists of the complex coordinate z_1 = (x_1, y_1) and of its
/// complement, in the (x_1..x_n, y_1..y_n) ordering.
std::pair<std::vector<int>, std::vector<int>> first_complex_plane_split(int dim);

}  // namespace symcap
