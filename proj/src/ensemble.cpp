#include "symcap/ensemble.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "symcap/errors.hpp"

namespace symcap {

namespace {

// Alternating starts are seeded apart from the rotation stream so that every
// ensemble sharing (seed, i) sees the same rotation.
std::uint64_t start_seed(std::uint64_t seed, std::int64_t i) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i) + 0x5eedULL));
}

}  // namespace

void validate(const EnsembleConfig& cfg) {
  validate(cfg.body);
  if (cfg.n_samples < 100) throw std::invalid_argument("ensemble needs at least 100 samples");
  if (cfg.p == 0.0 || !std::isfinite(cfg.p)) throw std::invalid_argument("moment order p must be finite and nonzero");
  if (cfg.workers < 1) throw std::invalid_argument("workers must be positive");
}

FamilySpec family_at_dim(const FamilySpec& spec, int dim) {
  switch (spec.kind) {
    case FamilyKind::Cube: return cube_spec(dim);
    case FamilyKind::CrossPolytope: return cross_spec(dim);
    case FamilyKind::LpBall: return lp_spec(dim, spec.p);
    case FamilyKind::EuclideanBall: return ball_spec(dim, spec.radius);
    case FamilyKind::BallProduct: return ball_product_spec(dim, spec.lambda, spec.radius);
    case FamilyKind::SymplecticEllipsoid:
    case FamilyKind::SymplecticBox: {
      std::vector<double> axes = spec.axes;
      if (2 * static_cast<int>(axes.size()) != dim) {
        const bool constant = !axes.empty() && axes.front() == axes.back();
        const double a0 = constant ? axes.front() : 0.0;
        axes.clear();
        for (int i = 1; i <= dim / 2; ++i) axes.push_back(constant ? a0 : static_cast<double>(i) * i);
      }
      return spec.kind == FamilyKind::SymplecticEllipsoid ? ellipsoid_spec(std::move(axes)) : box_spec(std::move(axes));
    }
    default:
      if (spec.dim == dim) return spec;
      throw InvalidSpec("family " + std::string(to_string(spec.kind)) + " cannot be resized");
  }
}

AlphaEnsemble alpha_ensemble(const EnsembleConfig& cfg) {
  validate(cfg);
  const ConvexBody body = make_body(cfg.body);
  const int d = body.dim();

  // dispatch depends only on the body, so one probe decides certification
  AlphaOptions probe_opt = cfg.alpha_options;
  probe_opt.starts = 1;
  probe_opt.max_iters = 1;
  const AlphaResult probe = alpha(body, std::nullopt, probe_opt);
  if (!probe.certified() && !cfg.allow_heuristic)
    throw UncertifiedComputation("alpha for " + describe(cfg.body) +
                                 " is only available as a lower bound; pass --allow-heuristic");

  AlphaEnsemble ens;
  ens.method = probe.method;
  ens.certified = probe.certified();
  std::vector<char> conv(static_cast<std::size_t>(cfg.n_samples), 1);
  ens.values = parallel_samples<double>(cfg.n_samples, cfg.seed, purpose::kRotations, cfg.workers,
                                        [&](RngStream& rng, std::int64_t i) {
                                          const RotationMatrix o = haar_rotation(rng, d);
                                          AlphaOptions opt = cfg.alpha_options;
                                          opt.seed = start_seed(cfg.seed, i);
                                          const AlphaResult a = alpha(body, o, opt);
                                          conv[static_cast<std::size_t>(i)] = a.converged;
                                          return a.value;
                                        });
  for (char c : conv) ens.converged = ens.converged && c;
  return ens;
}

MomentEstimate moment_from_ensemble(const AlphaEnsemble& ens, const EnsembleConfig& cfg) {
  MomentEstimate m;
  m.result = moment_root(ens.values, cfg.p, cfg.seed);
  if (cfg.bootstrap) m.bootstrap_se = bootstrap_moment_root_se(ens.values, cfg.p, 200, cfg.seed);
  m.samples = ens;
  return m;
}

MomentEstimate expect_alpha_moment(const EnsembleConfig& cfg) {
  return moment_from_ensemble(alpha_ensemble(cfg), cfg);
}

CapacitySandwich sandwich_from_ensemble(const AlphaEnsemble& ens, const EnsembleConfig& cfg) {
  if (!(cfg.p > 0.0)) throw std::invalid_argument("capacity sandwich needs p > 0");
  std::vector<double> inv(ens.values.size());
  for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 / ens.values[i];
  CapacitySandwich s;
  s.lo = moment_root(inv, cfg.p, cfg.seed);
  s.hi = s.lo;
  s.hi.estimate = 4.0 * s.lo.estimate;
  s.hi.std_error = 4.0 * s.lo.std_error;
  s.certified = ens.certified;
  return s;
}

CapacitySandwich capacity_expectation_sandwich(const EnsembleConfig& cfg) {
  return sandwich_from_ensemble(alpha_ensemble(cfg), cfg);
}

EllipsoidCapacityEnsemble ellipsoid_capacity_expectation(const std::vector<double>& axes, double p, std::int64_t n,
                                                         std::uint64_t seed, int workers) {
  if (n < 100) throw std::invalid_argument("ellipsoid capacity ensemble needs at least 100 samples");
  const FamilySpec spec = ellipsoid_spec(axes);
  if (axes.back() / axes.front() > 1e8) throw InvalidSpec("axis ratio exceeds 1e8");
  const Mat a = *make_body(spec).quad_form();
  const int d = spec.dim;
  auto caps = parallel_samples<double>(n, seed, purpose::kRotations, workers, [&](RngStream& rng, std::int64_t) {
    const RotationMatrix o = haar_rotation(rng, d);
    const Mat c = o.matrix() * a * o.matrix().transpose();
    try {
      return ehz_ellipsoid(0.5 * (c + c.transpose()));
    } catch (const SpectralBreakdown&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  });
  EllipsoidCapacityEnsemble out;
  std::vector<double> ok;
  ok.reserve(caps.size());
  for (double c : caps) {
    if (std::isnan(c)) ++out.spectral_failures;
    else ok.push_back(c);
  }
  if (static_cast<double>(out.spectral_failures) > 1e-3 * static_cast<double>(n))
    throw SpectralBreakdown("ellipsoid capacity ensemble: " + std::to_string(out.spectral_failures) +
                            " spectral purity failures exceed 0.1% of draws");
  out.result = moment_root(ok, p, seed);
  out.capacities = std::move(caps);
  return out;
}

std::vector<CapacityAlphaPair> capacity_alpha_pairs(const ConvexBody& body, std::int64_t n, std::uint64_t seed,
                                                    int workers) {
  const auto form = body.quad_form();
  if (!form) throw MissingOracle("capacity_alpha_pairs needs a body with a quadratic form");
  const int d = body.dim();
  return parallel_samples<CapacityAlphaPair>(n, seed, purpose::kRotations, workers, [&](RngStream& rng, std::int64_t) {
    const RotationMatrix o = haar_rotation(rng, d);
    const Mat c = o.matrix() * *form * o.matrix().transpose();
    return CapacityAlphaPair{ehz_ellipsoid(0.5 * (c + c.transpose())), alpha(body, o).value};
  });
}

EstimatorResult expectation_anchor(const ConvexBody& body, std::int64_t n, std::uint64_t seed, int workers) {
  const ContactPoint c = contact_point(body);
  const double r = c.v.norm();
  EstimatorResult m = section_mean_width(polar(body), c.v / r, n, seed, workers);
  m.estimate *= r;
  m.std_error *= r;
  return m;
}

MeanIdentity mean_identity(const ConvexBody& body, std::int64_t n_ensemble, std::int64_t n_reference,
                                     std::uint64_t seed, int workers) {
  if (n_ensemble < 100 || n_reference < 100) throw std::invalid_argument("mean identity needs at least 100 samples");
  const ConvexBody kp = polar(body);
  const ContactPoint c = contact_point(body);
  const Vec vhat = c.v / c.v.norm();
  const int d = body.dim();
  const Mat j = standard_J(d);
  auto vals = parallel_samples<double>(n_ensemble, seed, purpose::kRotations, workers, [&](RngStream& rng, std::int64_t) {
    const RotationMatrix o = haar_rotation(rng, d);
    Vec w = o.matrix().transpose() * (j * (o.matrix() * c.v));
    // <J(O) v, v> = 0 exactly; remove the rounding residue
    w -= w.dot(vhat) * vhat;
    return section_support(kp, vhat, w);
  });
  MeanIdentity out;
  out.ensemble = estimate_mean(vals, seed);
  // distinct seed: the reference pipeline is independent of the ensemble
  out.reference = expectation_anchor(body, n_reference, splitmix64(seed), workers);
  out.contact = c.v;
  return out;
}

TailProfile tail_profile(const std::vector<double>& samples, const std::vector<double>& thresholds) {
  TailProfile t;
  const SampleMoments m = moments(samples);
  t.n_samples = m.count;
  t.mean = m.mean;
  t.sd = m.sd();
  t.thresholds = thresholds;
  if (t.sd <= 1e-12 * std::max(1.0, std::abs(m.mean))) {
    t.degenerate = true;
    t.empirical_tail.assign(thresholds.size(), 0.0);
    return t;
  }
  const double n = static_cast<double>(samples.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double th : thresholds) {
    std::int64_t count = 0;
    for (double s : samples)
      if (std::abs(s - m.mean) >= th) ++count;
    const double tail = static_cast<double>(count) / n;
    t.empirical_tail.push_back(tail);
    if (static_cast<double>(count) >= 20.0) {
      const double x = th * th, y = std::log(tail);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++t.fitted_points;
    }
  }
  if (t.fitted_points >= 2) {
    const double k = t.fitted_points;
    const double den = k * sxx - sx * sx;
    if (den > 0.0) t.fitted_slope = (k * sxy - sx * sy) / den;
  }
  return t;
}

std::vector<TailProfile> concentration_profile(const FamilySpec& family, const std::vector<int>& dims, std::int64_t n,
                                               std::uint64_t seed, int workers, ConcentrationMap map,
                                               bool allow_heuristic) {
  std::vector<std::vector<double>> per_dim;
  for (int d : dims) {
    EnsembleConfig cfg;
    cfg.body = family_at_dim(family, d);
    cfg.n_samples = n;
    cfg.seed = seed;
    cfg.workers = workers;
    cfg.allow_heuristic = allow_heuristic;
    std::vector<double> v = alpha_ensemble(cfg).values;
    if (map == ConcentrationMap::InverseAlpha)
      for (double& x : v) x = 1.0 / x;
    per_dim.push_back(std::move(v));
  }
  // one threshold grid for every dimension, scaled by the first nondegenerate SD
  double unit = 0.0;
  for (const auto& v : per_dim) {
    const double sd = moments(v).sd();
    if (sd > 1e-12) {
      unit = sd / 4.0;
      break;
    }
  }
  std::vector<double> grid;
  if (unit > 0.0)
    for (int k = 1; k <= 16; ++k) grid.push_back(unit * k);
  std::vector<TailProfile> out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    TailProfile t = tail_profile(per_dim[i], grid);
    t.dim = dims[i];
    out.push_back(std::move(t));
  }
  return out;
}

double psi2_norm_estimate(const std::vector<double>& samples, int p_max) {
  if (samples.empty()) throw std::invalid_argument("psi2_norm_estimate: empty input");
  if (samples.size() < 1000) throw std::invalid_argument("psi2_norm_estimate: need at least 1000 samples");
  if (p_max < 1 || p_max > 10) throw std::invalid_argument("psi2_norm_estimate: p_max must lie in [1, 10]");
  double best = 0.0;
  for (int p = 1; p <= p_max; ++p) {
    double s = 0.0;
    for (double z : samples) s += std::pow(std::abs(z), p);
    const double root = std::pow(s / static_cast<double>(samples.size()), 1.0 / p);
    best = std::max(best, root / std::sqrt(static_cast<double>(p)));
  }
  return best;
}

std::vector<double> xi_samples(const VecRef& x_in, const VecRef& y_in, std::int64_t n, std::uint64_t seed,
                               int workers) {
  const int d = static_cast<int>(x_in.size());
  if (y_in.size() != d) throw std::invalid_argument("xi_samples: dimension mismatch");
  const double nx = x_in.norm();
  if (nx == 0.0) throw std::invalid_argument("xi_samples: x must be nonzero");
  // O x = |x| f0, O y = c1 f0 + c2 f1 for a uniform orthonormal pair (f0, f1)
  const Vec b0 = x_in / nx;
  const double c1 = y_in.dot(b0);
  const double c2 = (y_in - c1 * b0).norm();
  const Mat j = standard_J(d);
  const int k = c2 > 0.0 ? 2 : 1;
  return parallel_samples<double>(n, seed, purpose::kFrames, workers, [&](RngStream& rng, std::int64_t) {
    const Mat f = haar_frame(rng, d, k);
    const Vec ox = nx * f.col(0);
    Vec oy = c1 * f.col(0);
    if (k == 2) oy += c2 * f.col(1);
    return (j * ox).dot(oy);
  });
}

std::vector<double> xi_samples_full(const VecRef& x_in, const VecRef& y_in, std::int64_t n, std::uint64_t seed,
                                    int workers) {
  const int d = static_cast<int>(x_in.size());
  const Vec x = x_in, y = y_in;
  const Mat j = standard_J(d);
  return parallel_samples<double>(n, seed, purpose::kRotations, workers, [&](RngStream& rng, std::int64_t) {
    const RotationMatrix o = haar_rotation(rng, d);
    return (conjugate(j, o) * x).dot(y);
  });
}

std::vector<SweepPoint> counterexample_sweep(const std::vector<double>& lambdas, int dim, std::int64_t n,
                                             std::uint64_t seed, int workers, std::int64_t n_reference) {
  if (dim < 6) throw InvalidSpec("counterexample sweep needs dim >= 6");
  std::vector<SweepPoint> out;
  for (double lambda : lambdas) {
    EnsembleConfig cfg;
    cfg.body = ball_product_spec(dim, lambda);
    cfg.n_samples = n;
    cfg.seed = seed;
    cfg.workers = workers;
    cfg.p = 1.0;
    cfg.alpha_options.starts = 16 * dim;
    const AlphaEnsemble ens = alpha_ensemble(cfg);
    SweepPoint pt;
    pt.lambda = lambda;
    pt.certified = ens.certified;
    pt.capacity_lower = sandwich_from_ensemble(ens, cfg).lo;

    const ConvexBody k = make_body(cfg.body);
    const ContactPoint c = contact_point(k);
    const double r = 1.0 / c.v.norm();
    const EstimatorResult m = section_mean_width(polar(k), c.v / c.v.norm(), n_reference, seed, workers);
    pt.ratio = m;
    pt.ratio.estimate = r / m.estimate;
    pt.ratio.std_error = r * m.std_error / (m.estimate * m.estimate);
    out.push_back(pt);
  }
  return out;
}

ChevetDiagnostic chevet_diagnostic(const ConvexBody& body, std::int64_t n, std::uint64_t seed, int workers) {
  const ConvexBody kp = polar(body);
  const int d = body.dim();
  auto norms = parallel_samples<double>(n, seed, purpose::kRotations, workers, [&](RngStream& rng, std::int64_t) {
    const Mat g = rng.gaussian_matrix(d, d) / std::sqrt(static_cast<double>(d));
    AlphaOptions opt;
    opt.seed = rng.next_u64();
    return bilinear_sup(kp, g, opt).value;
  });
  ChevetDiagnostic out;
  out.gaussian_norm = estimate_mean(norms, seed);
  const EstimatorResult mw = mean_width(kp, std::max<std::int64_t>(n, 10000), splitmix64(seed), workers);
  out.bound = 2.0 * circumradius(kp) * mw.estimate;
  out.ratio = out.gaussian_norm.estimate / out.bound;
  return out;
}

}  // namespace symcap
