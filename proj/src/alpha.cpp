#include "symcap/alpha.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "symcap/errors.hpp"
#include "symcap/functionals.hpp"

namespace symcap {

std::string_view to_string(AlphaMethod m) {
  switch (m) {
    case AlphaMethod::VertexExact: return "vertex_exact";
    case AlphaMethod::Spectral: return "spectral";
    case AlphaMethod::AlternatingLowerBound: return "alternating_lower_bound";
  }
  return "unknown";
}

namespace {

AlphaResult vertex_scan(const Mat& rows, const Mat& m) {
  // entry (j, i) = <M v_i, v_j>
  const Mat b = rows * m.transpose() * rows.transpose();
  Eigen::Index bi = 0, bj = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < b.cols(); ++i)
    for (Eigen::Index j = 0; j < b.rows(); ++j)
      if (b(j, i) > best) {
        best = b(j, i);
        bi = i;
        bj = j;
      }
  AlphaResult r;
  r.value = best;
  r.method = AlphaMethod::VertexExact;
  r.certificate = std::make_pair(Vec(rows.row(bi).transpose()), Vec(rows.row(bj).transpose()));
  r.gap_bound = 0.0;
  return r;
}

// max over sign vectors sigma of ||N sigma||_1 with N = D M D, by Gray code.
AlphaResult sign_scan(const Vec& scales, const Mat& m) {
  const Eigen::Index d = scales.size();
  const Mat n = scales.asDiagonal() * m * scales.asDiagonal();
  Vec sigma = Vec::Ones(d);
  Vec w = n * sigma;
  double best = w.cwiseAbs().sum();
  Vec best_sigma = sigma;
  // sigma_0 stays +1: sigma and -sigma give the same value
  const std::uint64_t count = std::uint64_t{1} << (d - 1);
  for (std::uint64_t g = 1; g < count; ++g) {
    const int k = 1 + std::countr_zero(g);
    w -= (2.0 * sigma[k]) * n.col(k);
    sigma[k] = -sigma[k];
    const double val = w.cwiseAbs().sum();
    if (val > best) {
      best = val;
      best_sigma = sigma;
    }
  }
  const Vec wb = n * best_sigma;
  Vec tau(d);
  for (Eigen::Index i = 0; i < d; ++i) tau[i] = wb[i] < 0.0 ? -1.0 : 1.0;
  AlphaResult r;
  r.value = best;
  r.method = AlphaMethod::VertexExact;
  r.certificate = std::make_pair(Vec(scales.cwiseProduct(best_sigma)), Vec(scales.cwiseProduct(tau)));
  r.gap_bound = 0.0;
  return r;
}

AlphaResult spectral_form(const Mat& form_of_k, const Mat& m) {
  // K° = A^{1/2} B, so the sup is the top singular value of A^{1/2} M A^{1/2}.
  Eigen::SelfAdjointEigenSolver<Mat> es(form_of_k);
  const Mat root = es.operatorSqrt();
  const Mat s = root * m * root;
  Eigen::JacobiSVD<Mat> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
  AlphaResult r;
  r.value = svd.singularValues()[0];
  r.method = AlphaMethod::Spectral;
  // S a = sigma b with a = V_0, b = U_0
  r.certificate = std::make_pair(Vec(root * svd.matrixV().col(0)), Vec(root * svd.matrixU().col(0)));
  r.gap_bound = 0.0;
  return r;
}

AlphaResult hull_of_balls(const shape::Blocks& b, const Mat& m) {
  // extreme points of conv(B_P(r1) u B_Q(r2)) lie on the two spheres
  const Eigen::Index d = m.rows();
  struct Piece {
    const std::vector<int>* idx;
    double radius;
  };
  const Piece pieces[2] = {{&b.first, b.r1}, {&b.second, b.r2}};
  AlphaResult best;
  best.value = -1.0;
  for (const auto& px : pieces)
    for (const auto& py : pieces) {
      Mat sub(static_cast<Eigen::Index>(py.idx->size()), static_cast<Eigen::Index>(px.idx->size()));
      for (std::size_t r = 0; r < py.idx->size(); ++r)
        for (std::size_t c = 0; c < px.idx->size(); ++c) sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m((*py.idx)[r], (*px.idx)[c]);
      Eigen::JacobiSVD<Mat> svd(sub, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const double val = px.radius * py.radius * svd.singularValues()[0];
      if (val > best.value) {
        Vec x = Vec::Zero(d), y = Vec::Zero(d);
        for (std::size_t c = 0; c < px.idx->size(); ++c) x[(*px.idx)[c]] = px.radius * svd.matrixV()(static_cast<Eigen::Index>(c), 0);
        for (std::size_t r = 0; r < py.idx->size(); ++r) y[(*py.idx)[r]] = py.radius * svd.matrixU()(static_cast<Eigen::Index>(r), 0);
        best.value = val;
        best.certificate = std::make_pair(std::move(x), std::move(y));
      }
    }
  best.method = AlphaMethod::Spectral;
  best.gap_bound = 0.0;
  return best;
}

AlphaResult alternating(const ConvexBody& p, const Mat& m, const AlphaOptions& opt) {
  const int d = p.dim();
  const int starts = opt.starts > 0 ? opt.starts : 8 * d;
  RngStream rng(opt.seed, stream_id(purpose::kAlphaStarts, 0));
  const Mat mt = m.transpose();
  AlphaResult r;
  r.method = AlphaMethod::AlternatingLowerBound;
  r.value = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < starts; ++s) {
    Vec x = p.support_point(rng.gaussian_vector(d));
    Vec y = p.support_point(m * x);
    double val = (m * x).dot(y);
    bool done = false;
    for (int it = 0; it < opt.max_iters; ++it) {
      x = p.support_point(mt * y);
      y = p.support_point(m * x);
      const double next = (m * x).dot(y);
      const bool small = next - val <= opt.rel_tol * std::max(std::abs(next), 1e-300);
      val = std::max(val, next);
      if (small) {
        done = true;
        break;
      }
    }
    if (!done) r.converged = false;
    if (val > r.value) {
      r.value = val;
      r.certificate = std::make_pair(x, y);
    }
  }
  return r;
}

}  // namespace

AlphaResult bilinear_sup(const ConvexBody& p_in, const Mat& m_in, const AlphaOptions& options) {
  if (m_in.rows() != p_in.dim() || m_in.cols() != p_in.dim())
    throw std::invalid_argument("bilinear_sup: operator shape does not match body");
  const ConvexBody p = p_in.unframed();
  Mat m = m_in;
  const auto& frame = p_in.frame();
  if (frame) m = frame->transpose() * m_in * *frame;

  AlphaResult r;
  bool done = false;
  if (!options.force_alternating) {
    if (auto scales = p.sign_vertex_scales()) {
      if (scales->size() <= options.max_sign_dim) {
        r = sign_scan(*scales, m);
        done = true;
      }
    } else if (auto v = p.vertices()) {
      r = vertex_scan(*v, m);
      done = true;
    }
    if (!done) {
      if (auto form_p = p.quad_form()) {
        r = spectral_form(form_p->inverse(), m);
        done = true;
      } else if (const auto* b = std::get_if<shape::Blocks>(&p.shape()); b && b->hull) {
        r = hull_of_balls(*b, m);
        done = true;
      }
    }
  }
  if (!done) r = alternating(p, m, options);
  if (frame && r.certificate)
    r.certificate = std::make_pair(Vec(*frame * r.certificate->first), Vec(*frame * r.certificate->second));
  return r;
}

AlphaResult alpha(const ConvexBody& body, const std::optional<RotationMatrix>& rotation,
                  const AlphaOptions& options) {
  if (body.dim() < 4 || body.dim() % 2 != 0)
    throw InvalidSpec("alpha needs an even dimension >= 4");
  if (rotation && rotation->dim() != body.dim())
    throw InvalidSpec("rotation dimension does not match body");
  const Mat m = rotation ? conjugated_J(*rotation) : standard_J(body.dim());
  return bilinear_sup(polar(body), m, options);
}

CapacityInterval ehz_sandwich(const AlphaResult& a) {
  if (!(a.value > 0.0)) throw Error("ehz_sandwich: alpha must be positive");
  return {1.0 / a.value, 4.0 / a.value, a.certified()};
}

CapacityInterval ehz_sandwich(const ConvexBody& body, const std::optional<RotationMatrix>& rotation,
                              const AlphaOptions& options) {
  return ehz_sandwich(alpha(body, rotation, options));
}

double ehz_ellipsoid(const Mat& c) {
  const Eigen::Index d = c.rows();
  if (c.cols() != d || d % 2 != 0 || d == 0) throw InvalidSpec("ehz_ellipsoid: need an even square matrix");
  const double cmax = c.cwiseAbs().maxCoeff();
  if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(cmax, 1e-300))
    throw InvalidSpec("ehz_ellipsoid: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> sym(c, Eigen::EigenvaluesOnly);
  const double lmin = sym.eigenvalues()[0], lmax = sym.eigenvalues()[d - 1];
  if (!(lmin > 0.0)) throw InvalidSpec("ehz_ellipsoid: matrix is not positive definite");
  if (lmax / lmin > 1e8) throw InvalidSpec("ehz_ellipsoid: axis ratio exceeds 1e8");

  Eigen::EigenSolver<Mat> es(standard_J(static_cast<int>(d)) * c, false);
  const auto& ev = es.eigenvalues();
  double beta = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (std::abs(ev[i].real()) > 1e-8 * lmax)
      throw SpectralBreakdown("ehz_ellipsoid: eigenvalue of J*C with real part " + std::to_string(ev[i].real()));
    beta = std::max(beta, std::abs(ev[i].imag()));
  }
  return M_PI / beta;
}

LipschitzGap lipschitz_gap(const ConvexBody& body, const RotationMatrix& o1, const RotationMatrix& o2) {
  const AlphaResult a1 = alpha(body, o1), a2 = alpha(body, o2);
  if (!a1.certified() || !a2.certified())
    throw UncertifiedComputation("lipschitz_gap needs an exact alpha method for this body");
  const double rp = circumradius(polar(body));
  return {a1.value - a2.value, 2.0 * rp * rp * hilbert_schmidt_distance(o1, o2)};
}

}  // namespace symcap
