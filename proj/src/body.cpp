#include "symcap/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symcap/errors.hpp"
#include "symcap/linprog.hpp"

namespace symcap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double dual_exponent(double p) {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double lp_norm(const Vec& x, double p) {
  if (std::isinf(p)) return x.cwiseAbs().maxCoeff();
  if (p == 1.0) return x.cwiseAbs().sum();
  if (p == 2.0) return x.norm();
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), p);
  return std::pow(s, 1.0 / p);
}

double sign_pos(double v) { return v < 0.0 ? -1.0 : 1.0; }

// argmax over B_p of <w, y>
Vec lp_support_point(const Vec& w, double p) {
  const Eigen::Index d = w.size();
  Vec y = Vec::Zero(d);
  if (std::isinf(p)) {
    for (Eigen::Index i = 0; i < d; ++i) y[i] = sign_pos(w[i]);
    return y;
  }
  if (p == 1.0) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < d; ++i)
      if (std::abs(w[i]) > std::abs(w[best])) best = i;
    y[best] = sign_pos(w[best]);
    return y;
  }
  const double q = dual_exponent(p);
  const double nq = lp_norm(w, q);
  if (nq == 0.0) {
    y[0] = 1.0;
    return y;
  }
  if (p == 2.0) return w / nq;
  for (Eigen::Index i = 0; i < d; ++i)
    y[i] = sign_pos(w[i]) * std::pow(std::abs(w[i]) / nq, q - 1.0);
  return y;
}

double block_norm(const VecRef& x, const std::vector<int>& idx) {
  double s = 0.0;
  for (int i : idx) s += x[i] * x[i];
  return std::sqrt(s);
}

// Unit vector along the block part of c, or the first block axis when c
// vanishes on the block.
Vec block_direction(const VecRef& c, const std::vector<int>& idx, Eigen::Index dim) {
  Vec out = Vec::Zero(dim);
  const double n = block_norm(c, idx);
  if (n == 0.0) {
    out[idx.front()] = 1.0;
    return out;
  }
  for (int i : idx) out[i] = c[i] / n;
  return out;
}

// Lexicographic tie-break key: smaller first-nonzero index wins, then
// positive sign there, then larger coordinates.
bool prefer_canonical(const Vec& a, const Vec& b, double tol) {
  auto first_nz = [tol](const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (std::abs(v[i]) > tol) return i;
    return v.size();
  };
  const auto ia = first_nz(a), ib = first_nz(b);
  if (ia != ib) return ia < ib;
  if (ia == a.size()) return false;
  if ((a[ia] > 0) != (b[ib] > 0)) return a[ia] > 0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return a[i] > b[i];
  return false;
}

Vec pick_farthest_row(const Mat& rows) {
  const Vec norms = rows.rowwise().norm();
  const double rmax = norms.maxCoeff();
  const double tol = 1e-12 * std::max(1.0, rmax);
  std::optional<Vec> best;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    if (norms[i] < rmax - tol) continue;
    Vec v = rows.row(i).transpose();
    if (!best || prefer_canonical(v, *best, tol)) best = std::move(v);
  }
  return *best;
}

// Unit eigenvector of the smallest-eigenvalue eigenspace of a symmetric
// matrix, chosen as the normalized projection of the first basis vector e_i
// with a nonzero component there.
Vec canonical_min_eigenvector(const Mat& a, double* lambda_min) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  const Vec& ev = es.eigenvalues();
  const double lmin = ev[0];
  *lambda_min = lmin;
  const double tol = 1e-10 * std::max(std::abs(ev[ev.size() - 1]), 1e-300);
  Eigen::Index mult = 0;
  while (mult < ev.size() && ev[mult] - lmin <= tol) ++mult;
  const Mat basis = es.eigenvectors().leftCols(mult);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Vec proj = basis * basis.row(i).transpose();
    const double n = proj.norm();
    if (n > 1e-8) return proj / n;
  }
  return basis.col(0);
}

Mat sign_scales_rows_cross(const Vec& s) {
  const Eigen::Index d = s.size();
  Mat rows = Mat::Zero(2 * d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    rows(2 * i, i) = s[i];
    rows(2 * i + 1, i) = -s[i];
  }
  return rows;
}

}  // namespace

std::pair<std::vector<int>, std::vector<int>> first_complex_plane_split(int dim) {
  const int n = dim / 2;
  std::vector<int> plane{0, n};
  std::vector<int> rest;
  for (int i = 0; i < dim; ++i)
    if (i != 0 && i != n) rest.push_back(i);
  return {plane, rest};
}

Vec SignVertexRange::iterator::operator*() const {
  Vec v = *scales_;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if ((index_ >> i) & 1U) v[i] = -v[i];
  return v;
}

SignVertexRange::SignVertexRange(Vec scales) : scales_(std::move(scales)) {
  if (scales_.size() >= 63) throw Error("sign vertex range too large to enumerate");
  count_ = std::uint64_t{1} << scales_.size();
}

ConvexBody::ConvexBody(FamilySpec spec, Shape shape, bool polar_of_spec)
    : spec_(std::move(spec)), shape_(std::move(shape)), polar_of_spec_(polar_of_spec) {}

std::string_view ConvexBody::representation() const {
  return std::visit(overloaded{
                        [](const shape::ScaledLp&) { return std::string_view("scaled_lp"); },
                        [](const shape::Ellipsoid&) { return std::string_view("ellipsoid"); },
                        [](const shape::Vertices&) { return std::string_view("vertices"); },
                        [](const shape::Facets&) { return std::string_view("facets"); },
                        [](const shape::Blocks& b) {
                          return b.hull ? std::string_view("ball_hull")
                                        : std::string_view("ball_product");
                        },
                    },
                    shape_);
}

double ConvexBody::support(const VecRef& u_in) const {
  const Vec u = frame_ ? Vec(frame_->transpose() * u_in) : Vec(u_in);
  return std::visit(
      overloaded{
          [&](const shape::ScaledLp& s) {
            return lp_norm(s.scales.cwiseProduct(u), dual_exponent(s.p));
          },
          [&](const shape::Ellipsoid& s) { return std::sqrt(std::max(0.0, u.dot(s.inverse * u))); },
          [&](const shape::Vertices& s) { return std::max(0.0, (s.rows * u).maxCoeff()); },
          [&](const shape::Facets& s) { return maximize_over_unit_facets(s.rows, u).value; },
          [&](const shape::Blocks& s) {
            const double a = s.r1 * block_norm(u, s.first);
            const double b = s.r2 * block_norm(u, s.second);
            return s.hull ? std::max(a, b) : a + b;
          },
      },
      shape_);
}

double ConvexBody::gauge(const VecRef& x_in) const {
  const Vec x = frame_ ? Vec(frame_->transpose() * x_in) : Vec(x_in);
  return std::visit(
      overloaded{
          [&](const shape::ScaledLp& s) { return lp_norm(x.cwiseQuotient(s.scales), s.p); },
          [&](const shape::Ellipsoid& s) { return std::sqrt(std::max(0.0, x.dot(s.form * x))); },
          [&](const shape::Vertices& s) { return maximize_over_unit_facets(s.rows, x).value; },
          [&](const shape::Facets& s) { return std::max(0.0, (s.rows * x).maxCoeff()); },
          [&](const shape::Blocks& s) {
            const double a = block_norm(x, s.first) / s.r1;
            const double b = block_norm(x, s.second) / s.r2;
            return s.hull ? a + b : std::max(a, b);
          },
      },
      shape_);
}

Vec ConvexBody::support_point(const VecRef& c_in) const {
  const Vec c = frame_ ? Vec(frame_->transpose() * c_in) : Vec(c_in);
  const Eigen::Index d = c.size();
  Vec x = std::visit(
      overloaded{
          [&](const shape::ScaledLp& s) -> Vec {
            return s.scales.cwiseProduct(lp_support_point(s.scales.cwiseProduct(c), s.p));
          },
          [&](const shape::Ellipsoid& s) -> Vec {
            const Vec w = s.inverse * c;
            const double h = std::sqrt(std::max(0.0, c.dot(w)));
            return h > 0.0 ? Vec(w / h) : Vec::Zero(d);
          },
          [&](const shape::Vertices& s) -> Vec {
            Eigen::Index best = 0;
            const Vec vals = s.rows * c;
            for (Eigen::Index i = 1; i < vals.size(); ++i)
              if (vals[i] > vals[best]) best = i;
            return s.rows.row(best).transpose();
          },
          [&](const shape::Facets& s) -> Vec { return maximize_over_unit_facets(s.rows, c).point; },
          [&](const shape::Blocks& s) -> Vec {
            const Vec a = s.r1 * block_direction(c, s.first, d);
            const Vec b = s.r2 * block_direction(c, s.second, d);
            if (!s.hull) return a + b;
            return c.dot(a) >= c.dot(b) ? a : b;
          },
      },
      shape_);
  return frame_ ? Vec(*frame_ * x) : x;
}

std::optional<Mat> ConvexBody::vertices() const {
  if (frame_) return std::nullopt;
  if (const auto* s = std::get_if<shape::Vertices>(&shape_)) return s->rows;
  if (const auto* s = std::get_if<shape::ScaledLp>(&shape_)) {
    if (s->p == 1.0) return sign_scales_rows_cross(s->scales);
    if (std::isinf(s->p) && s->scales.size() <= kMaxSignEnumerationDim) {
      SignVertexRange range(s->scales);
      Mat rows(static_cast<Eigen::Index>(range.size()), s->scales.size());
      Eigen::Index r = 0;
      for (auto it = range.begin(); it != range.end(); ++it) rows.row(r++) = (*it).transpose();
      return rows;
    }
  }
  return std::nullopt;
}

std::optional<Vec> ConvexBody::sign_vertex_scales() const {
  if (frame_) return std::nullopt;
  if (const auto* s = std::get_if<shape::ScaledLp>(&shape_); s && std::isinf(s->p)) return s->scales;
  return std::nullopt;
}

std::optional<SignVertexRange> ConvexBody::sign_vertices() const {
  if (auto s = sign_vertex_scales()) return SignVertexRange(*s);
  return std::nullopt;
}

std::optional<Mat> ConvexBody::quad_form() const {
  std::optional<Mat> a;
  if (const auto* s = std::get_if<shape::Ellipsoid>(&shape_)) a = s->form;
  if (const auto* s = std::get_if<shape::ScaledLp>(&shape_); s && s->p == 2.0)
    a = Mat(s->scales.cwiseInverse().cwiseAbs2().asDiagonal());
  if (a && frame_) a = Mat(*frame_ * *a * frame_->transpose());
  return a;
}

std::optional<Vec> ConvexBody::farthest_point() const {
  if (frame_) {
    // tie-break is coordinate dependent; only report frames without ties
    auto inner = unframed().farthest_point();
    if (!inner) return std::nullopt;
    return Vec(*frame_ * *inner);
  }
  const Eigen::Index d = dim();
  return std::visit(
      overloaded{
          [&](const shape::ScaledLp& s) -> std::optional<Vec> {
            Vec x = Vec::Zero(d);
            if (std::isinf(s.p)) return s.scales;
            if (s.p <= 2.0) {
              Eigen::Index best = 0;
              for (Eigen::Index i = 1; i < d; ++i)
                if (s.scales[i] > s.scales[best]) best = i;
              x[best] = s.scales[best];
              return x;
            }
            // maximize sum s_i^2 y_i^2 over sum |y_i|^p = 1: y_i ~ s_i^{2/(p-2)}
            Vec y(d);
            const double smax = s.scales.maxCoeff();
            for (Eigen::Index i = 0; i < d; ++i) y[i] = std::pow(s.scales[i] / smax, 2.0 / (s.p - 2.0));
            y /= lp_norm(y, s.p);
            return Vec(s.scales.cwiseProduct(y));
          },
          [&](const shape::Ellipsoid& s) -> std::optional<Vec> {
            double lmin = 0.0;
            Vec v = canonical_min_eigenvector(s.form, &lmin);
            return Vec(v / std::sqrt(lmin));
          },
          [&](const shape::Vertices& s) -> std::optional<Vec> { return pick_farthest_row(s.rows); },
          [&](const shape::Facets&) -> std::optional<Vec> { return std::nullopt; },
          [&](const shape::Blocks& s) -> std::optional<Vec> {
            Vec x = Vec::Zero(d);
            const int i1 = s.first.front(), i2 = s.second.front();
            if (!s.hull) {
              x[i1] = s.r1;
              x[i2] = s.r2;
              return x;
            }
            if (s.r1 > s.r2 || (s.r1 == s.r2 && i1 < i2)) x[i1] = s.r1;
            else x[i2] = s.r2;
            return x;
          },
      },
      shape_);
}

ConvexBody ConvexBody::with_frame(const Mat& rotation) const {
  ConvexBody out = *this;
  out.frame_ = frame_ ? Mat(rotation * *frame_) : rotation;
  return out;
}

ConvexBody ConvexBody::unframed() const {
  ConvexBody out = *this;
  out.frame_.reset();
  return out;
}

ConvexBody make_body(const FamilySpec& spec) {
  validate(spec);
  const int d = spec.dim;
  switch (spec.kind) {
    case FamilyKind::Cube:
      return ConvexBody(spec, shape::ScaledLp{kInf, Vec::Ones(d)});
    case FamilyKind::CrossPolytope:
      return ConvexBody(spec, shape::ScaledLp{1.0, Vec::Ones(d)});
    case FamilyKind::LpBall:
      return ConvexBody(spec, shape::ScaledLp{spec.p, Vec::Ones(d)});
    case FamilyKind::EuclideanBall:
      return ConvexBody(spec, shape::ScaledLp{2.0, Vec::Constant(d, spec.radius)});
    case FamilyKind::SymplecticEllipsoid: {
      const int n = spec.n();
      Vec diag(d);
      for (int i = 0; i < n; ++i) diag[i] = diag[n + i] = M_PI / spec.axes[static_cast<std::size_t>(i)];
      return ConvexBody(spec, shape::Ellipsoid{Mat(diag.asDiagonal()), Mat(diag.cwiseInverse().asDiagonal())});
    }
    case FamilyKind::SymplecticBox: {
      const int n = spec.n();
      Vec s(d);
      for (int i = 0; i < n; ++i) s[i] = s[n + i] = 0.5 * std::sqrt(spec.axes[static_cast<std::size_t>(i)]);
      return ConvexBody(spec, shape::ScaledLp{kInf, s});
    }
    case FamilyKind::BallProduct: {
      auto [plane, rest] = first_complex_plane_split(d);
      return ConvexBody(spec, shape::Blocks{plane, rest, spec.radius, spec.lambda, false});
    }
    case FamilyKind::VPolytope:
      return ConvexBody(spec, shape::Vertices{spec.vertices});
    case FamilyKind::EllipsoidMatrix:
      return ConvexBody(spec, shape::Ellipsoid{spec.matrix, spec.matrix.inverse()});
  }
  throw InvalidSpec("unreachable");
}

ConvexBody polar(const ConvexBody& body) {
  const FamilySpec& spec = body.spec();
  Shape dual = std::visit(
      overloaded{
          [](const shape::ScaledLp& s) -> Shape {
            return shape::ScaledLp{dual_exponent(s.p), s.scales.cwiseInverse()};
          },
          [](const shape::Ellipsoid& s) -> Shape { return shape::Ellipsoid{s.inverse, s.form}; },
          [](const shape::Vertices& s) -> Shape { return shape::Facets{s.rows}; },
          [](const shape::Facets& s) -> Shape { return shape::Vertices{s.rows}; },
          [](const shape::Blocks& s) -> Shape {
            return shape::Blocks{s.first, s.second, 1.0 / s.r1, 1.0 / s.r2, !s.hull};
          },
      },
      body.shape());

  // Families closed under polarity keep a family descriptor.
  std::optional<FamilySpec> named;
  if (!body.is_polar_of_spec()) {
    switch (spec.kind) {
      case FamilyKind::Cube: named = cross_spec(spec.dim); break;
      case FamilyKind::CrossPolytope: named = cube_spec(spec.dim); break;
      case FamilyKind::LpBall: named = lp_spec(spec.dim, dual_exponent(spec.p)); break;
      case FamilyKind::EuclideanBall: named = ball_spec(spec.dim, 1.0 / spec.radius); break;
      case FamilyKind::EllipsoidMatrix: named = ellipsoid_matrix_spec(spec.matrix.inverse()); break;
      default: break;
    }
  }
  ConvexBody out = named ? ConvexBody(*named, std::move(dual), false)
                         : ConvexBody(spec, std::move(dual), !body.is_polar_of_spec());
  if (body.frame()) out = out.with_frame(*body.frame());
  return out;
}

ConvexBody rotate(const ConvexBody& body, const Mat& o) {
  if (o.rows() != body.dim() || o.cols() != body.dim())
    throw InvalidSpec("rotation shape does not match body dimension");
  if (body.frame()) return body.with_frame(o);
  const Mat ot = o.transpose();
  auto explicit_shape = std::visit(
      overloaded{
          [&](const shape::ScaledLp& s) -> std::optional<Shape> {
            if (std::isinf(s.p)) return shape::Facets{sign_scales_rows_cross(s.scales.cwiseInverse()) * ot};
            if (s.p == 1.0) return shape::Vertices{sign_scales_rows_cross(s.scales) * ot};
            if (s.p == 2.0) {
              const Mat a = s.scales.cwiseInverse().cwiseAbs2().asDiagonal();
              const Mat ai = s.scales.cwiseAbs2().asDiagonal();
              return shape::Ellipsoid{o * a * ot, o * ai * ot};
            }
            return std::nullopt;
          },
          [&](const shape::Ellipsoid& s) -> std::optional<Shape> {
            return shape::Ellipsoid{o * s.form * ot, o * s.inverse * ot};
          },
          [&](const shape::Vertices& s) -> std::optional<Shape> { return shape::Vertices{s.rows * ot}; },
          [&](const shape::Facets& s) -> std::optional<Shape> { return shape::Facets{s.rows * ot}; },
          [&](const shape::Blocks&) -> std::optional<Shape> { return std::nullopt; },
      },
      body.shape());
  if (!explicit_shape) return body.with_frame(o);
  return ConvexBody(body.spec(), std::move(*explicit_shape), body.is_polar_of_spec());
}

double section_support(const ConvexBody& body, const VecRef& v, const VecRef& u) {
  const double un = u.norm();
  if (std::abs(v.norm() - 1.0) > 1e-9) throw std::invalid_argument("section_support: v must be a unit vector");
  if (std::abs(u.dot(v)) > 1e-12 * std::max(un, 1e-300) && un > 0.0)
    throw std::invalid_argument("section_support: u must be orthogonal to v");
  if (un == 0.0) return 0.0;

  Vec w(u.size());
  auto f = [&](double t) {
    w = u + t * v;
    return body.support(w);
  };
  const double f0 = body.support(u);
  const double hv = body.support(v);

  // f is convex in t, so f(-T) >= f(0) <= f(T) brackets the minimizer.
  double span = hv > 0.0 ? std::max(f0 / hv, 1e-12) : 1.0;
  int expansions = 0;
  while (f(span) < f0 || f(-span) < f0) {
    span *= 2.0;
    if (++expansions > 60 || !std::isfinite(span))
      throw BracketError("section_support: support function is not coercive along v");
  }

  const double tol = 1e-9 * (1.0 + f0);
  const double slope = std::max(hv, 1e-300);
  constexpr double kInvPhi = 0.6180339887498949;
  double a = -span, b = span;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  double best = std::min({f0, fc, fd});
  for (int it = 0; it < 200 && (b - a) * slope > tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      best = std::min(best, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      best = std::min(best, fd);
    }
  }
  return std::max(0.0, best);
}

}  // namespace symcap
