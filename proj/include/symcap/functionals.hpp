#pragma once

#include <cstdint>
#include <string_view>

#include "symcap/body.hpp"
#include "symcap/stats.hpp"

namespace symcap {

/// R(K) = max |x| over K. Only exact routes: vertex lists, quadratic forms
/// and family closed forms; other bodies raise MissingOracle.
double circumradius(const ConvexBody& body);

/// r(K) = 1 / R(K°)
double inradius(const ConvexBody& body);

enum class ContactSource { VertexScan, PrincipalAxis, ClosedForm };

std::string_view to_string(ContactSource s);

/// A point of K° at maximal distance from the origin (|v| = R(K°)).
struct ContactPoint {
  Vec v;
  ContactSource source = ContactSource::ClosedForm;
};

/// Contact point of K° with its minimal circumscribed ball.
ContactPoint contact_point(const ConvexBody& body);

/// Uniform unit vector in v^perp (v a unit vector).
Vec sphere_point_orthogonal(RngStream& rng, const VecRef& v);

/// M*(K) = mean of h_K over the uniform measure on the sphere.
EstimatorResult mean_width(const ConvexBody& body, std::int64_t n, std::uint64_t seed, int workers = 1);

/// M*(P cap v^perp), averaging section_support over the unit sphere of v^perp.
EstimatorResult section_mean_width(const ConvexBody& body_polar, const VecRef& v, std::int64_t n,
                                   std::uint64_t seed, int workers = 1);

/// (Vol K / Vol B^{2n})^{1/n} from closed-form volumes.
double volume_radius_sq(const FamilySpec& spec);

/// ND_q(K) = M*(K) * (mean of h_K^{-q})^{1/q} from one shared sample set,
/// with a delta-method standard error.
EstimatorResult nondeg_functional(const ConvexBody& body, double q, std::int64_t n, std::uint64_t seed,
                                  int workers = 1);

struct Table1Row {
  FamilySpec spec;
  double r_sq = 0.0;
  EstimatorResult ratio;  // r(K) / M*(K° cap L)
  double volradius_sq = 0.0;
  /// The same three values divided by the reference growth f(n) of the row.
  double r_sq_normalized = 0.0;
  double ratio_normalized = 0.0;
  double volradius_sq_normalized = 0.0;
  Vec contact;
};

struct Table1Reference {
  double r_sq = 0.0;
  double ratio = 0.0;
  double volradius_sq = 0.0;
};

/// Reference growth f(n) of the inradius, ratio and volume-radius columns.
Table1Reference table1_reference(const FamilySpec& spec);

Table1Row table1_row(const FamilySpec& spec, std::int64_t n, std::uint64_t seed, int workers = 1);

}  // namespace symcap
