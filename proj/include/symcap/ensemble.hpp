#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "symcap/alpha.hpp"
#include "symcap/functionals.hpp"
#include "symcap/stats.hpp"

namespace symcap {

struct EnsembleConfig {
  FamilySpec body;
  std::int64_t n_samples = 1000;
  std::uint64_t seed = 0;
  /// Moment order; negative orders are allowed.
  double p = 1.0;
  int workers = 1;
  /// Admit bodies whose alpha is only a lower bound.
  bool allow_heuristic = false;
  bool bootstrap = false;
  AlphaOptions alpha_options;
};

void validate(const EnsembleConfig& cfg);

/// The body of `spec` realized at dimension `dim`. Ellipsoid and box
/// families reuse their axes when the length matches, repeat a constant axis
/// list, and otherwise take a_i = i^2.
FamilySpec family_at_dim(const FamilySpec& spec, int dim);

struct AlphaEnsemble {
  std::vector<double> values;  // alpha(O_i K), i < n_samples
  AlphaMethod method = AlphaMethod::VertexExact;
  bool certified = true;
  bool converged = true;
};

/// alpha(O_i K) for Haar O_i. Rotation i depends only on (seed, i).
AlphaEnsemble alpha_ensemble(const EnsembleConfig& cfg);

struct MomentEstimate {
  EstimatorResult result;
  AlphaEnsemble samples;
  std::optional<double> bootstrap_se;
};

/// (E alpha(OK)^p)^{1/p}
MomentEstimate expect_alpha_moment(const EnsembleConfig& cfg);
MomentEstimate moment_from_ensemble(const AlphaEnsemble& ens, const EnsembleConfig& cfg);

struct CapacitySandwich {
  EstimatorResult lo;  // (E alpha^{-p})^{1/p}
  EstimatorResult hi;  // 4 * lo
  bool certified = true;
};

CapacitySandwich capacity_expectation_sandwich(const EnsembleConfig& cfg);
CapacitySandwich sandwich_from_ensemble(const AlphaEnsemble& ens, const EnsembleConfig& cfg);

struct EllipsoidCapacityEnsemble {
  EstimatorResult result;
  std::vector<double> capacities;
  std::int64_t spectral_failures = 0;
};

/// (E c_EHZ(O E(a))^p)^{1/p} with exact per-rotation capacities. Aborts when
/// more than 0.1% of the draws fail the spectral purity check.
EllipsoidCapacityEnsemble ellipsoid_capacity_expectation(const std::vector<double>& axes, double p,
                                                         std::int64_t n, std::uint64_t seed, int workers = 1);

struct CapacityAlphaPair {
  double capacity = 0.0;
  double alpha = 0.0;
};

/// c_EHZ(OK) and alpha(OK) on the same rotations for a body with a
/// quadratic form.
std::vector<CapacityAlphaPair> capacity_alpha_pairs(const ConvexBody& body, std::int64_t n, std::uint64_t seed,
                                                    int workers = 1);

struct MeanIdentity {
  EstimatorResult ensemble;   // E sup_{w in K° cap L} <J(O) v, w>
  EstimatorResult reference;  // R(K°) M*(K° cap L)
  Vec contact;
};

MeanIdentity mean_identity(const ConvexBody& body, std::int64_t n_ensemble, std::int64_t n_reference,
                                     std::uint64_t seed, int workers = 1);

/// Anchor R(K°) M*(K° cap L) with its standard error.
EstimatorResult expectation_anchor(const ConvexBody& body, std::int64_t n, std::uint64_t seed, int workers = 1);

enum class ConcentrationMap { Alpha, InverseAlpha };

struct TailProfile {
  int dim = 0;
  std::int64_t n_samples = 0;
  double mean = 0.0;
  double sd = 0.0;
  std::vector<double> thresholds;
  std::vector<double> empirical_tail;
  /// Least-squares slope of log tail against t^2 over tails >= 20/N.
  double fitted_slope = 0.0;
  int fitted_points = 0;
  /// Zero-variance ensemble; no tail is reported.
  bool degenerate = false;
};

std::vector<TailProfile> concentration_profile(const FamilySpec& family, const std::vector<int>& dims,
                                               std::int64_t n, std::uint64_t seed, int workers = 1,
                                               ConcentrationMap map = ConcentrationMap::Alpha,
                                               bool allow_heuristic = false);

/// Tail profile of a fixed sample set on the threshold grid t.
TailProfile tail_profile(const std::vector<double>& samples, const std::vector<double>& thresholds);

/// max over p = 1..p_max of p^{-1/2} (mean |Z|^p)^{1/p}
double psi2_norm_estimate(const std::vector<double>& samples, int p_max = 10);

/// xi(O) = <J(O) x, y> for Haar O, drawn through the action of O on
/// span{x, y} (a uniform orthonormal frame).
std::vector<double> xi_samples(const VecRef& x, const VecRef& y, std::int64_t n, std::uint64_t seed,
                               int workers = 1);

/// Same law as xi_samples, through full Haar rotations.
std::vector<double> xi_samples_full(const VecRef& x, const VecRef& y, std::int64_t n, std::uint64_t seed,
                                    int workers = 1);

struct SweepPoint {
  double lambda = 0.0;
  EstimatorResult capacity_lower;  // E alpha(O K_lambda)^{-1}
  EstimatorResult ratio;           // r(K_lambda) / M*(K_lambda° cap L)
  bool certified = true;
};

/// K_lambda = B^2(1) x B^{dim-2}(lambda) across lambdas. All lambdas share
/// the rotation draws.
std::vector<SweepPoint> counterexample_sweep(const std::vector<double>& lambdas, int dim, std::int64_t n,
                                             std::uint64_t seed, int workers = 1, std::int64_t n_reference = 20000);

struct ChevetDiagnostic {
  EstimatorResult gaussian_norm;  // E ||G / sqrt(dim)||_{K° -> K}
  double bound = 0.0;             // 2 R(K°) M*(K°), the bracket of the Gaussian operator-norm bound
  double ratio = 0.0;
};

ChevetDiagnostic chevet_diagnostic(const ConvexBody& body, std::int64_t n, std::uint64_t seed, int workers = 1);

}  // namespace symcap
