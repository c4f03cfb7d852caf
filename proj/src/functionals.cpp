#include "symcap/functionals.hpp"

#include <cmath>
#include <limits>

#include "symcap/errors.hpp"

namespace symcap {

std::string_view to_string(ContactSource s) {
  switch (s) {
    case ContactSource::VertexScan: return "vertex_scan";
    case ContactSource::PrincipalAxis: return "principal_axis";
    case ContactSource::ClosedForm: return "closed_form";
  }
  return "unknown";
}

double circumradius(const ConvexBody& body) {
  const auto far = body.farthest_point();
  if (!far)
    throw MissingOracle("no exact circumradius route for this body (" + std::string(body.representation()) +
                        "); use a vertex, ellipsoid or closed-form family");
  return far->norm();
}

double inradius(const ConvexBody& body) { return 1.0 / circumradius(polar(body)); }

ContactPoint contact_point(const ConvexBody& body) {
  const ConvexBody p = polar(body);
  const auto far = p.farthest_point();
  if (!far) throw MissingOracle("no exact route to a contact point of the polar body");
  ContactPoint c;
  c.v = *far;
  if (std::holds_alternative<shape::Vertices>(p.shape())) c.source = ContactSource::VertexScan;
  else if (p.quad_form()) c.source = ContactSource::PrincipalAxis;
  else c.source = ContactSource::ClosedForm;
  return c;
}

Vec sphere_point_orthogonal(RngStream& rng, const VecRef& v) {
  for (;;) {
    Vec g = rng.gaussian_vector(static_cast<int>(v.size()));
    g -= g.dot(v) * v;
    const double n = g.norm();
    if (n > 1e-300) {
      g /= n;
      // one more projection keeps |<g, v>| at rounding level
      g -= g.dot(v) * v;
      return g / g.norm();
    }
  }
}

EstimatorResult mean_width(const ConvexBody& body, std::int64_t n, std::uint64_t seed, int workers) {
  if (n < 100) throw std::invalid_argument("mean_width: need at least 100 samples");
  const int d = body.dim();
  auto h = parallel_samples<double>(n, seed, purpose::kSphere, workers,
                                    [&](RngStream& rng, std::int64_t) { return body.support(rng.sphere_point(d)); });
  return estimate_mean(h, seed);
}

EstimatorResult section_mean_width(const ConvexBody& body_polar, const VecRef& v_in, std::int64_t n,
                                   std::uint64_t seed, int workers) {
  if (n < 100) throw std::invalid_argument("section_mean_width: need at least 100 samples");
  if (std::abs(v_in.norm() - 1.0) > 1e-9) throw std::invalid_argument("section_mean_width: v must be a unit vector");
  const Vec v = v_in;
  auto h = parallel_samples<double>(n, seed, purpose::kSectionSphere, workers, [&](RngStream& rng, std::int64_t) {
    return section_support(body_polar, v, sphere_point_orthogonal(rng, v));
  });
  return estimate_mean(h, seed);
}

namespace {

double log_ball_volume(int dim) { return 0.5 * dim * std::log(M_PI) - std::lgamma(0.5 * dim + 1.0); }

}  // namespace

double volume_radius_sq(const FamilySpec& spec) {
  validate(spec);
  const int d = spec.dim;
  const double n = 0.5 * d;
  double log_vol = 0.0;
  switch (spec.kind) {
    case FamilyKind::Cube: log_vol = d * std::log(2.0); break;
    case FamilyKind::CrossPolytope: log_vol = d * std::log(2.0) - std::lgamma(d + 1.0); break;
    case FamilyKind::EuclideanBall: log_vol = log_ball_volume(d) + d * std::log(spec.radius); break;
    case FamilyKind::LpBall:
      log_vol = std::isinf(spec.p) ? d * std::log(2.0)
                                   : d * std::log(2.0 * std::tgamma(1.0 + 1.0 / spec.p)) -
                                         std::lgamma(1.0 + d / spec.p);
      break;
    case FamilyKind::SymplecticEllipsoid:
      log_vol = log_ball_volume(d);
      for (double a : spec.axes) log_vol += std::log(a / M_PI);
      break;
    case FamilyKind::SymplecticBox:
      for (double a : spec.axes) log_vol += std::log(a);
      break;
    default:
      throw InvalidSpec("volume_radius_sq: no closed-form volume for family " + std::string(to_string(spec.kind)));
  }
  return std::exp((log_vol - log_ball_volume(d)) / n);
}

EstimatorResult nondeg_functional(const ConvexBody& body, double q, std::int64_t n, std::uint64_t seed,
                                  int workers) {
  if (!(q > 0.0)) throw std::invalid_argument("nondeg_functional: q must be positive");
  if (n < 100) throw std::invalid_argument("nondeg_functional: need at least 100 samples");
  const int d = body.dim();
  auto h = parallel_samples<double>(n, seed, purpose::kSphere, workers,
                                    [&](RngStream& rng, std::int64_t) { return body.support(rng.sphere_point(d)); });
  std::vector<double> hq(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0)) throw Error("nondeg_functional: support function vanished on the sphere");
    hq[i] = std::exp(-q * std::log(h[i]));
  }
  const SampleMoments ma = moments(h), mb = moments(hq);
  double cov = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) cov += (h[i] - ma.mean) * (hq[i] - mb.mean);
  cov /= static_cast<double>(h.size() - 1);

  const double root = std::pow(mb.mean, 1.0 / q);
  EstimatorResult r;
  r.estimate = ma.mean * root;
  // gradient of a * b^{1/q}
  const double ga = root;
  const double gb = ma.mean * root / (q * mb.mean);
  const double var = (ga * ga * ma.variance + gb * gb * mb.variance + 2.0 * ga * gb * cov) / static_cast<double>(n);
  r.std_error = std::sqrt(std::max(0.0, var));
  r.n_samples = n;
  r.seed = seed;
  return r;
}

Table1Reference table1_reference(const FamilySpec& spec) {
  const double n = spec.n();
  Table1Reference f;
  switch (spec.kind) {
    case FamilyKind::Cube:
      f = {1.0, std::sqrt(n / std::log(n)), n};
      break;
    case FamilyKind::CrossPolytope:
      f = {1.0 / n, 1.0 / n, 1.0 / n};
      break;
    case FamilyKind::SymplecticEllipsoid: {
      double inv_sum = 0.0, log_prod = 0.0;
      for (double a : spec.axes) {
        inv_sum += 1.0 / a;
        log_prod += std::log(a);
      }
      const double a1 = spec.axes.front();
      f = {a1, std::sqrt(a1) * std::sqrt(n / inv_sum), std::exp(log_prod / n)};
      break;
    }
    case FamilyKind::SymplecticBox: {
      double log_prod = 0.0;
      for (double a : spec.axes) log_prod += std::log(a);
      const double a1 = spec.axes.front();
      double best = std::numeric_limits<double>::infinity();
      // the k = 1 term is infinite (ln 1 = 0)
      for (std::size_t k = 2; k <= spec.axes.size(); ++k)
        best = std::min(best, std::sqrt(n * spec.axes[k - 1] / std::log(static_cast<double>(k))));
      f = {a1, std::sqrt(a1) * best, n * std::exp(log_prod / n)};
      break;
    }
    default:
      throw InvalidSpec("table1: family " + std::string(to_string(spec.kind)) + " has no reference growth");
  }
  return f;
}

Table1Row table1_row(const FamilySpec& spec, std::int64_t n, std::uint64_t seed, int workers) {
  const Table1Reference f = table1_reference(spec);
  const ConvexBody k = make_body(spec);
  const ConvexBody kp = polar(k);
  const ContactPoint c = contact_point(k);
  const double r = 1.0 / c.v.norm();
  const EstimatorResult m = section_mean_width(kp, c.v / c.v.norm(), n, seed, workers);

  Table1Row row;
  row.spec = spec;
  row.contact = c.v;
  row.r_sq = r * r;
  row.ratio = m;
  row.ratio.estimate = r / m.estimate;
  row.ratio.std_error = r * m.std_error / (m.estimate * m.estimate);
  row.volradius_sq = volume_radius_sq(spec);
  row.r_sq_normalized = row.r_sq / f.r_sq;
  row.ratio_normalized = row.ratio.estimate / f.ratio;
  row.volradius_sq_normalized = row.volradius_sq / f.volradius_sq;
  return row;
}

}  // namespace symcap
