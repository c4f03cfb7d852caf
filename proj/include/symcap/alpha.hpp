#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "symcap/body.hpp"
#include "symcap/rotation.hpp"

namespace symcap {

enum class AlphaMethod { VertexExact, Spectral, AlternatingLowerBound };

std::string_view to_string(AlphaMethod m);

/// alpha(K) = ||J||_{K° -> K} = sup_{x, y in K°} <J x, y>
struct AlphaResult {
  double value = 0.0;
  AlphaMethod method = AlphaMethod::VertexExact;
  /// Maximizing pair (x*, y*) in K°.
  std::optional<std::pair<Vec, Vec>> certificate;
  /// 0 for exact methods; unset for the alternating lower bound.
  std::optional<double> gap_bound;
  /// False when some alternating start hit max_iters.
  bool converged = true;

  bool certified() const { return method != AlphaMethod::AlternatingLowerBound; }
};

struct AlphaOptions {
  int max_iters = 500;
  /// Alternating multi-start count; 0 selects 8 * dim.
  int starts = 0;
  std::uint64_t seed = 0;
  double rel_tol = 1e-10;
  /// Skip the exact routes (used to cross-check them).
  bool force_alternating = false;
  /// Largest dimension for the exact sign-vector scan of a cube-type K°.
  int max_sign_dim = kMaxSignEnumerationDim;
};

/// alpha(K), or alpha(OK) = sup_{x,y in K°} <O^T J O x, y> when a rotation
/// is given. Dispatch: explicit vertices of K° (VertexExact), a quadratic
/// form or a hull of two balls for K° (Spectral), otherwise alternating
/// maximization with the support-point oracle of K° (a lower bound).
AlphaResult alpha(const ConvexBody& body, const std::optional<RotationMatrix>& rotation = std::nullopt,
                  const AlphaOptions& options = {});

/// sup_{x,y in P} <M x, y> for an arbitrary square M, same dispatch as alpha
/// with P playing the role of K°.
AlphaResult bilinear_sup(const ConvexBody& p, const Mat& m, const AlphaOptions& options = {});

struct CapacityInterval {
  double lo = 0.0;
  double hi = 0.0;
  /// True only when alpha came from an exact method.
  bool certified = false;
};

/// [1/alpha, 4/alpha] bracketing the EHZ capacity.
CapacityInterval ehz_sandwich(const AlphaResult& a);
CapacityInterval ehz_sandwich(const ConvexBody& body, const std::optional<RotationMatrix>& rotation = std::nullopt,
                              const AlphaOptions& options = {});

/// EHZ capacity of {x : x^T C x <= 1}: pi / max_j beta_j where the eigenvalues
/// of J C are +-i beta_j.
double ehz_ellipsoid(const Mat& c);

struct LipschitzGap {
  double lhs = 0.0;  // alpha(O1 K) - alpha(O2 K)
  double rhs = 0.0;  // 2 R(K°)^2 ||O1 - O2||_HS
};

LipschitzGap lipschitz_gap(const ConvexBody& body, const RotationMatrix& o1, const RotationMatrix& o2);

}  // namespace symcap
