#include "symcap/family.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "symcap/errors.hpp"

namespace symcap {

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Cube: return "cube";
    case FamilyKind::CrossPolytope: return "cross";
    case FamilyKind::LpBall: return "lp";
    case FamilyKind::EuclideanBall: return "ball";
    case FamilyKind::SymplecticEllipsoid: return "ellipsoid";
    case FamilyKind::SymplecticBox: return "box";
    case FamilyKind::BallProduct: return "ballproduct";
    case FamilyKind::VPolytope: return "vpolytope";
    case FamilyKind::EllipsoidMatrix: return "ellipsoid_matrix";
  }
  return "unknown";
}

namespace {

FamilyKind kind_from_string(std::string_view s) {
  for (auto k : {FamilyKind::Cube, FamilyKind::CrossPolytope, FamilyKind::LpBall,
                 FamilyKind::EuclideanBall, FamilyKind::SymplecticEllipsoid,
                 FamilyKind::SymplecticBox, FamilyKind::BallProduct, FamilyKind::VPolytope,
                 FamilyKind::EllipsoidMatrix})
    if (to_string(k) == s) return k;
  throw InvalidSpec("unknown body family '" + std::string(s) + "'");
}

void check_dim(int dim) {
  if (dim <= 0 || dim % 2 != 0)
    throw InvalidSpec("dimension must be a positive even integer, got " + std::to_string(dim));
}

void check_axes(const std::vector<double>& axes) {
  if (axes.empty()) throw InvalidSpec("axis list is empty");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (!(axes[i] > 0.0) || !std::isfinite(axes[i]))
      throw InvalidSpec("axes must be strictly positive and finite");
    if (i > 0 && axes[i] < axes[i - 1]) throw InvalidSpec("axes must be sorted ascending");
  }
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(std::string_view s) {
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw InvalidSpec("cannot parse number '" + std::string(s) + "'");
  return v;
}

int parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw InvalidSpec("cannot parse integer '" + std::string(s) + "'");
  return v;
}

std::vector<double> parse_list(std::string_view s) {
  std::vector<double> out;
  for (auto part : split(s, ',')) out.push_back(parse_real(part));
  return out;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw InvalidSpec(std::string(what) + " must be a nonempty array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InvalidSpec(std::string(what) + " rows must have equal length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  auto j = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    j.push_back(std::move(row));
  }
  return j;
}

std::string format_real(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void validate(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::Cube:
    case FamilyKind::CrossPolytope:
      check_dim(spec.dim);
      break;
    case FamilyKind::LpBall:
      check_dim(spec.dim);
      if (!(spec.p >= 1.0)) throw InvalidSpec("lp exponent must lie in [1, inf]");
      break;
    case FamilyKind::EuclideanBall:
      check_dim(spec.dim);
      if (!(spec.radius > 0.0) || !std::isfinite(spec.radius))
        throw InvalidSpec("ball radius must be positive");
      break;
    case FamilyKind::SymplecticEllipsoid:
    case FamilyKind::SymplecticBox:
      check_axes(spec.axes);
      if (spec.dim != 2 * static_cast<int>(spec.axes.size()))
        throw InvalidSpec("dimension must be twice the number of axes");
      break;
    case FamilyKind::BallProduct:
      check_dim(spec.dim);
      if (spec.dim < 4) throw InvalidSpec("ball product needs dimension >= 4");
      if (!(spec.radius > 0.0) || !(spec.lambda > 0.0))
        throw InvalidSpec("ball product radii must be positive");
      break;
    case FamilyKind::VPolytope: {
      check_dim(spec.dim);
      const auto& v = spec.vertices;
      if (v.cols() != spec.dim || v.rows() == 0)
        throw InvalidSpec("vertex list must have one row per vertex of length dim");
      const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
      for (Eigen::Index i = 0; i < v.rows(); ++i) {
        bool found = false;
        for (Eigen::Index k = 0; k < v.rows() && !found; ++k)
          found = (v.row(i) + v.row(k)).cwiseAbs().maxCoeff() <= 1e-12 * scale;
        if (!found) throw InvalidSpec("vertex list is not centrally symmetric");
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(v);
      lu.setThreshold(1e-10);
      if (lu.rank() != spec.dim) throw InvalidSpec("vertex list does not span the space");
      break;
    }
    case FamilyKind::EllipsoidMatrix: {
      check_dim(spec.dim);
      const auto& a = spec.matrix;
      if (a.rows() != spec.dim || a.cols() != spec.dim)
        throw InvalidSpec("ellipsoid matrix must be dim x dim");
      if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()))
        throw InvalidSpec("ellipsoid matrix must be symmetric");
      Eigen::LLT<Eigen::MatrixXd> llt(a);
      if (llt.info() != Eigen::Success) throw InvalidSpec("ellipsoid matrix must be positive definite");
      break;
    }
  }
}

FamilySpec cube_spec(int dim) {
  FamilySpec s;
  s.kind = FamilyKind::Cube;
  s.dim = dim;
  validate(s);
  return s;
}

FamilySpec cross_spec(int dim) {
  FamilySpec s;
  s.kind = FamilyKind::CrossPolytope;
  s.dim = dim;
  validate(s);
  return s;
}

FamilySpec lp_spec(int dim, double p) {
  FamilySpec s;
  s.kind = FamilyKind::LpBall;
  s.dim = dim;
  s.p = p;
  validate(s);
  return s;
}

FamilySpec ball_spec(int dim, double radius) {
  FamilySpec s;
  s.kind = FamilyKind::EuclideanBall;
  s.dim = dim;
  s.radius = radius;
  validate(s);
  return s;
}

FamilySpec ellipsoid_spec(std::vector<double> axes) {
  FamilySpec s;
  s.kind = FamilyKind::SymplecticEllipsoid;
  s.dim = 2 * static_cast<int>(axes.size());
  s.axes = std::move(axes);
  validate(s);
  return s;
}

FamilySpec box_spec(std::vector<double> axes) {
  FamilySpec s;
  s.kind = FamilyKind::SymplecticBox;
  s.dim = 2 * static_cast<int>(axes.size());
  s.axes = std::move(axes);
  validate(s);
  return s;
}

FamilySpec ball_product_spec(int dim, double lambda, double radius) {
  FamilySpec s;
  s.kind = FamilyKind::BallProduct;
  s.dim = dim;
  s.lambda = lambda;
  s.radius = radius;
  validate(s);
  return s;
}

FamilySpec vpolytope_spec(Eigen::MatrixXd vertices) {
  FamilySpec s;
  s.kind = FamilyKind::VPolytope;
  s.dim = static_cast<int>(vertices.cols());
  s.vertices = std::move(vertices);
  validate(s);
  return s;
}

FamilySpec ellipsoid_matrix_spec(Eigen::MatrixXd matrix) {
  FamilySpec s;
  s.kind = FamilyKind::EllipsoidMatrix;
  s.dim = static_cast<int>(matrix.rows());
  s.matrix = std::move(matrix);
  validate(s);
  return s;
}

FamilySpec parse_family_spec(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  if (!text.empty() && text.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidSpec(std::string("malformed body JSON: ") + e.what());
    }
    return family_from_json(j);
  }
  const auto parts = split(text, ':');
  const FamilyKind kind = kind_from_string(parts[0]);
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo || parts.size() > hi)
      throw InvalidSpec("wrong number of fields in '" + std::string(text) + "'");
  };
  switch (kind) {
    case FamilyKind::Cube: need(2, 2); return cube_spec(parse_int(parts[1]));
    case FamilyKind::CrossPolytope: need(2, 2); return cross_spec(parse_int(parts[1]));
    case FamilyKind::LpBall: need(3, 3); return lp_spec(parse_int(parts[1]), parse_real(parts[2]));
    case FamilyKind::EuclideanBall:
      need(2, 3);
      return ball_spec(parse_int(parts[1]), parts.size() == 3 ? parse_real(parts[2]) : 1.0);
    case FamilyKind::SymplecticEllipsoid: need(2, 2); return ellipsoid_spec(parse_list(parts[1]));
    case FamilyKind::SymplecticBox: need(2, 2); return box_spec(parse_list(parts[1]));
    case FamilyKind::BallProduct:
      need(3, 4);
      return ball_product_spec(parse_int(parts[1]), parse_real(parts[2]),
                               parts.size() == 4 ? parse_real(parts[3]) : 1.0);
    case FamilyKind::VPolytope:
    case FamilyKind::EllipsoidMatrix:
      throw InvalidSpec(std::string(to_string(kind)) + " bodies are given in JSON form");
  }
  throw InvalidSpec("unreachable");
}

nlohmann::json to_json(const FamilySpec& spec) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(spec.kind));
  j["dim"] = spec.dim;
  switch (spec.kind) {
    case FamilyKind::LpBall:
      if (std::isinf(spec.p)) j["p"] = "inf";
      else j["p"] = spec.p;
      break;
    case FamilyKind::EuclideanBall: j["radius"] = spec.radius; break;
    case FamilyKind::SymplecticEllipsoid:
    case FamilyKind::SymplecticBox: j["axes"] = spec.axes; break;
    case FamilyKind::BallProduct:
      j["radius"] = spec.radius;
      j["lambda"] = spec.lambda;
      break;
    case FamilyKind::VPolytope: j["vertices"] = matrix_to_json(spec.vertices); break;
    case FamilyKind::EllipsoidMatrix: j["matrix"] = matrix_to_json(spec.matrix); break;
    default: break;
  }
  return j;
}

FamilySpec family_from_json(const nlohmann::json& j) {
  try {
    const FamilyKind kind = kind_from_string(j.at("kind").get<std::string>());
    switch (kind) {
      case FamilyKind::Cube: return cube_spec(j.at("dim").get<int>());
      case FamilyKind::CrossPolytope: return cross_spec(j.at("dim").get<int>());
      case FamilyKind::LpBall: {
        const auto& p = j.at("p");
        return lp_spec(j.at("dim").get<int>(),
                       p.is_string() ? parse_real(p.get<std::string>()) : p.get<double>());
      }
      case FamilyKind::EuclideanBall:
        return ball_spec(j.at("dim").get<int>(), j.value("radius", 1.0));
      case FamilyKind::SymplecticEllipsoid:
        return ellipsoid_spec(j.at("axes").get<std::vector<double>>());
      case FamilyKind::SymplecticBox: return box_spec(j.at("axes").get<std::vector<double>>());
      case FamilyKind::BallProduct:
        return ball_product_spec(j.at("dim").get<int>(), j.at("lambda").get<double>(),
                                 j.value("radius", 1.0));
      case FamilyKind::VPolytope: return vpolytope_spec(matrix_from_json(j.at("vertices"), "vertices"));
      case FamilyKind::EllipsoidMatrix:
        return ellipsoid_matrix_spec(matrix_from_json(j.at("matrix"), "matrix"));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpec(std::string("invalid body JSON: ") + e.what());
  }
  throw InvalidSpec("unreachable");
}

std::string describe(const FamilySpec& spec) {
  const std::string k(to_string(spec.kind));
  auto join = [](const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + format_real(xs[i]);
    return s;
  };
  switch (spec.kind) {
    case FamilyKind::Cube:
    case FamilyKind::CrossPolytope: return k + ":" + std::to_string(spec.dim);
    case FamilyKind::LpBall: return k + ":" + std::to_string(spec.dim) + ":" + format_real(spec.p);
    case FamilyKind::EuclideanBall:
      return k + ":" + std::to_string(spec.dim) + ":" + format_real(spec.radius);
    case FamilyKind::SymplecticEllipsoid:
    case FamilyKind::SymplecticBox: return k + ":" + join(spec.axes);
    case FamilyKind::BallProduct:
      return k + ":" + std::to_string(spec.dim) + ":" + format_real(spec.lambda) +
             (spec.radius != 1.0 ? ":" + format_real(spec.radius) : "");
    default: return to_json(spec).dump();
  }
}

}  // namespace symcap
