#include "symcap/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "symcap/alpha.hpp"
#include "symcap/ensemble.hpp"
#include "symcap/errors.hpp"
#include "symcap/functionals.hpp"
#include "symcap/rotation.hpp"

namespace symcap {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

const FamilySpec& require_body(const CommandOptions& opt) {
  if (!opt.body) throw InvalidSpec("--body is required");
  return *opt.body;
}

json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

ReportDocument start(const std::string& command, const CommandOptions& opt) {
  ReportDocument doc;
  doc.command = command;
  doc.body = opt.body ? to_json(*opt.body) : json();
  doc.seed = opt.seed;
  doc.n_samples = opt.samples;
  return doc;
}

void finish(ReportDocument& doc, Clock::time_point t0) {
  doc.timing_ms = static_cast<std::int64_t>(ms_since(t0));
}

json interval_json(const CapacityInterval& c) { return {{"lo", c.lo}, {"hi", c.hi}, {"certified", c.certified}}; }

json alpha_json(const AlphaResult& a) {
  json j = {{"value", a.value},
            {"method", std::string(to_string(a.method))},
            {"certified", a.certified()},
            {"converged", a.converged}};
  if (a.gap_bound) j["gap_bound"] = *a.gap_bound;
  if (a.certificate) j["certificate"] = {{"x", vec_json(a.certificate->first)}, {"y", vec_json(a.certificate->second)}};
  return j;
}

json profile_json(const TailProfile& t) {
  return {{"dim", t.dim},
          {"n_samples", t.n_samples},
          {"mean", t.mean},
          {"sd", t.sd},
          {"thresholds", t.thresholds},
          {"empirical_tail", t.empirical_tail},
          {"fitted_slope", t.fitted_slope},
          {"fitted_points", t.fitted_points},
          {"degenerate", t.degenerate}};
}

// Ball and E(a) are the ellipsoids with an exact capacity ensemble.
std::optional<std::vector<double>> ellipsoid_axes(const FamilySpec& spec) {
  if (spec.kind == FamilyKind::SymplecticEllipsoid) return spec.axes;
  if (spec.kind == FamilyKind::EuclideanBall)
    return std::vector<double>(static_cast<std::size_t>(spec.n()), M_PI * spec.radius * spec.radius);
  return std::nullopt;
}

FamilySpec table1_family(const std::string& name, int dim) {
  if (name.find(':') != std::string::npos || name.starts_with("{"))
    return family_at_dim(parse_family_spec(name), dim);
  FamilySpec base;
  if (name == "cube") return cube_spec(dim);
  if (name == "cross") return cross_spec(dim);
  if (name == "ellipsoid") base.kind = FamilyKind::SymplecticEllipsoid;
  else if (name == "box") base.kind = FamilyKind::SymplecticBox;
  else throw InvalidSpec("table1: unsupported family '" + name + "' (cube, cross, ellipsoid, box)");
  return family_at_dim(base, dim);
}

}  // namespace

CommandOutcome cmd_alpha(const CommandOptions& opt) {
  const auto t0 = Clock::now();
  const FamilySpec& spec = require_body(opt);
  const ConvexBody body = make_body(spec);
  std::optional<RotationMatrix> rot;
  if (opt.rotation_seed) {
    RngStream rng(*opt.rotation_seed, stream_id(purpose::kRotations, 0));
    rot = haar_rotation(rng, body.dim());
  }
  AlphaOptions ao;
  ao.seed = opt.seed;
  const AlphaResult a = alpha(body, rot, ao);
  if (!a.certified() && !opt.allow_heuristic)
    throw UncertifiedComputation("alpha for " + describe(spec) +
                                 " is only available as a lower bound; pass --allow-heuristic");
  CommandOutcome out;
  out.report = start("alpha", opt);
  out.report.n_samples = 0;
  auto& r = out.report.results;
  r["alpha"] = alpha_json(a);
  r["ehz_interval"] = interval_json(ehz_sandwich(a));
  if (opt.rotation_seed) r["rotation_seed"] = *opt.rotation_seed;
  add_plot_point(out.report, "alpha", 0.0, a.value, 0.0);
  finish(out.report, t0);
  return out;
}

CommandOutcome cmd_expect(const CommandOptions& opt) {
  const auto t0 = Clock::now();
  EnsembleConfig cfg;
  cfg.body = require_body(opt);
  cfg.n_samples = opt.samples;
  cfg.seed = opt.seed;
  cfg.p = opt.p;
  cfg.workers = opt.workers;
  cfg.allow_heuristic = opt.allow_heuristic;
  cfg.bootstrap = opt.bootstrap;
  const AlphaEnsemble ens = alpha_ensemble(cfg);
  const MomentEstimate m = moment_from_ensemble(ens, cfg);

  CommandOutcome out;
  out.report = start("expect", opt);
  auto& r = out.report.results;
  r["p"] = opt.p;
  r["alpha_moment"] = to_json(m.result);
  r["alpha_moment"]["method"] = std::string(to_string(ens.method));
  r["alpha_moment"]["certified"] = ens.certified;
  r["alpha_moment"]["converged"] = ens.converged;
  if (m.bootstrap_se) r["alpha_moment"]["bootstrap_se"] = *m.bootstrap_se;
  add_plot_point(out.report, "alpha_moment", opt.p, m.result.estimate, m.result.std_error);

  std::optional<CapacitySandwich> sw;
  if (opt.p > 0.0) {
    sw = sandwich_from_ensemble(ens, cfg);
    r["capacity_sandwich"] = {{"lo", to_json(sw->lo)}, {"hi", to_json(sw->hi)}, {"certified", sw->certified}};
    add_plot_point(out.report, "capacity_lo", opt.p, sw->lo.estimate, sw->lo.std_error);
    add_plot_point(out.report, "capacity_hi", opt.p, sw->hi.estimate, sw->hi.std_error);
  } else {
    r["capacity_sandwich"] = {{"skipped", "the sandwich is defined for p > 0"}};
  }

  if (const auto axes = ellipsoid_axes(cfg.body)) {
    const EllipsoidCapacityEnsemble ex =
        ellipsoid_capacity_expectation(*axes, opt.p, opt.samples, opt.seed, opt.workers);
    json e = to_json(ex.result);
    e["spectral_failures"] = ex.spectral_failures;
    // rotation i is shared with the alpha ensemble
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < ex.capacities.size(); ++i) {
      if (std::isnan(ex.capacities[i])) continue;
      const double prod = ex.capacities[i] * ens.values[i];
      lo = std::min(lo, prod);
      hi = std::max(hi, prod);
    }
    e["per_sample_product_min"] = lo;
    e["per_sample_product_max"] = hi;
    e["per_sample_sandwich_pass"] = lo >= 1.0 - 1e-6 && hi <= 4.0 + 1e-6;
    if (sw) {
      const double tol_lo = 4.0 * joint_se(ex.result, sw->lo), tol_hi = 4.0 * joint_se(ex.result, sw->hi);
      e["within_sandwich_pass"] =
          ex.result.estimate >= sw->lo.estimate - tol_lo && ex.result.estimate <= sw->hi.estimate + tol_hi;
    }
    r["exact_capacity"] = e;
    add_plot_point(out.report, "capacity_exact", opt.p, ex.result.estimate, ex.result.std_error);
  }

  try {
    const ConvexBody body = make_body(cfg.body);
    const EstimatorResult anchor = expectation_anchor(body, std::max<std::int64_t>(opt.samples, 20000), opt.seed,
                                                      opt.workers);
    EstimatorResult ratio = anchor;
    ratio.estimate = 1.0 / anchor.estimate;
    ratio.std_error = anchor.std_error / (anchor.estimate * anchor.estimate);
    r["anchor"] = {{"R_polar_times_section_mean_width", to_json(anchor)}, {"inradius_over_section_mean_width", to_json(ratio)}};
  } catch (const MissingOracle& e) {
    r["anchor"] = {{"skipped", e.what()}};
  }
  finish(out.report, t0);
  return out;
}

CommandOutcome cmd_table1(const CommandOptions& opt) {
  const auto t0 = Clock::now();
  const std::vector<std::string> families =
      opt.families.empty() ? std::vector<std::string>{"cube", "cross", "ellipsoid", "box"} : opt.families;
  const std::vector<int> dims = opt.dims.empty() ? std::vector<int>{8, 16, 32, 64} : opt.dims;
  CommandOutcome out;
  out.report = start("table1", opt);
  json rows = json::array();
  for (const auto& name : families) {
    for (int d : dims) {
      const FamilySpec spec = table1_family(name, d);
      const Table1Row row = table1_row(spec, opt.samples, opt.seed, opt.workers);
      const Table1Reference f = table1_reference(spec);
      rows.push_back({{"family", name},
                      {"dim", d},
                      {"body", to_json(spec)},
                      {"r_sq", row.r_sq},
                      {"ratio", to_json(row.ratio)},
                      {"volradius_sq", row.volradius_sq},
                      {"reference", {{"r_sq", f.r_sq}, {"ratio", f.ratio}, {"volradius_sq", f.volradius_sq}}},
                      {"r_sq_normalized", row.r_sq_normalized},
                      {"ratio_normalized", row.ratio_normalized},
                      {"volradius_sq_normalized", row.volradius_sq_normalized}});
      add_plot_point(out.report, name + "/r_sq_normalized", d, row.r_sq_normalized, 0.0);
      add_plot_point(out.report, name + "/ratio_normalized", d, row.ratio_normalized,
                     row.ratio.std_error / f.ratio);
      add_plot_point(out.report, name + "/volradius_sq_normalized", d, row.volradius_sq_normalized, 0.0);
    }
  }
  out.report.results["rows"] = rows;
  finish(out.report, t0);
  return out;
}

CommandOutcome cmd_concentration(const CommandOptions& opt) {
  const auto t0 = Clock::now();
  const FamilySpec& spec = require_body(opt);
  const std::vector<int> dims = opt.dims.empty() ? std::vector<int>{8, 16, 32, 64} : opt.dims;
  ConcentrationMap map;
  if (opt.map == "alpha") map = ConcentrationMap::Alpha;
  else if (opt.map == "inverse") map = ConcentrationMap::InverseAlpha;
  else throw InvalidSpec("--map must be alpha or inverse");
  const auto profiles =
      concentration_profile(spec, dims, opt.samples, opt.seed, opt.workers, map, opt.allow_heuristic);
  CommandOutcome out;
  out.report = start("concentration", opt);
  out.report.results["map"] = opt.map;
  json arr = json::array();
  for (const auto& t : profiles) {
    arr.push_back(profile_json(t));
    add_plot_point(out.report, "sd", t.dim, t.sd, t.sd / std::sqrt(2.0 * (t.n_samples - 1)));
    add_plot_point(out.report, "fitted_slope", t.dim, t.fitted_slope, 0.0);
  }
  out.report.results["profiles"] = arr;
  finish(out.report, t0);
  return out;
}

CommandOutcome cmd_sweep(const CommandOptions& opt) {
  const auto t0 = Clock::now();
  const std::vector<double> lambdas = opt.lambdas.empty() ? std::vector<double>{1, 4, 16, 64} : opt.lambdas;
  const int dim = opt.dims.empty() ? 8 : opt.dims.front();
  const auto pts = counterexample_sweep(lambdas, dim, opt.samples, opt.seed, opt.workers);
  CommandOutcome out;
  out.report = start("sweep", opt);
  out.report.results["dim"] = dim;
  json arr = json::array();
  for (const auto& s : pts) {
    arr.push_back({{"lambda", s.lambda},
                   {"capacity_lower", to_json(s.capacity_lower)},
                   {"ratio", to_json(s.ratio)},
                   {"certified", s.certified}});
    add_plot_point(out.report, "capacity_lower", s.lambda, s.capacity_lower.estimate, s.capacity_lower.std_error);
    add_plot_point(out.report, "ratio", s.lambda, s.ratio.estimate, s.ratio.std_error);
  }
  out.report.results["points"] = arr;
  finish(out.report, t0);
  return out;
}

CommandOutcome cmd_chevet(const CommandOptions& opt) {
  const auto t0 = Clock::now();
  const ConvexBody body = make_body(require_body(opt));
  const ChevetDiagnostic c = chevet_diagnostic(body, opt.samples, opt.seed, opt.workers);
  CommandOutcome out;
  out.report = start("chevet", opt);
  out.report.results = {{"gaussian_norm", to_json(c.gaussian_norm)}, {"bound", c.bound}, {"ratio", c.ratio}};
  finish(out.report, t0);
  return out;
}

json to_json(const ContractCheck& c) {
  json j = {{"criterion", c.criterion}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}};
  if (c.budget_ms > 0.0) j["budget_ms"] = c.budget_ms;
  return j;
}

CommandOutcome cmd_verify(const std::string& suite, const CommandOptions& opt) {
  const auto t0 = Clock::now();
  const auto checks = run_suite(suite, opt.seed, opt.workers);
  CommandOutcome out;
  out.report = start("verify", opt);
  out.report.n_samples = 0;
  out.report.results["suite"] = suite;
  json arr = json::array();
  json times = json::object();
  bool all = true;
  for (const auto& c : checks) {
    arr.push_back(to_json(c));
    times[c.name] = c.elapsed_ms;
    all = all && c.pass;
  }
  out.report.results["contracts"] = arr;
  out.report.results["pass"] = all;
  out.report.timing_detail = times;
  out.exit_code = all ? kExitOk : kExitAcceptance;
  finish(out.report, t0);
  return out;
}

// ---------------------------------------------------------------------------
// verification suites

namespace {

using CheckBody = std::function<bool(json&)>;

ContractCheck timed(int criterion, std::string name, double budget_ms, const CheckBody& fn) {
  ContractCheck c;
  c.criterion = criterion;
  c.name = std::move(name);
  c.budget_ms = budget_ms;
  const auto t0 = Clock::now();
  bool ok = false;
  try {
    ok = fn(c.detail);
  } catch (const std::exception& e) {
    c.detail["exception"] = e.what();
  }
  c.elapsed_ms = ms_since(t0);
  const bool in_time = budget_ms <= 0.0 || c.elapsed_ms <= budget_ms;
  if (!in_time) c.detail["over_budget"] = true;
  c.pass = ok && in_time;
  return c;
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

std::vector<ContractCheck> suite_pushforward(std::uint64_t seed, int workers) {
  std::vector<ContractCheck> out;
  out.push_back(timed(1, "pushforward identities", 5000, [&](json& d) {
    double worst_t = 0.0, worst_r = 0.0;
    int count = 0;
    for (int dim : {8, 16}) {
      RngStream rng(seed, stream_id(purpose::kTestData, static_cast<std::uint32_t>(dim)));
      for (int i = 0; i < 100; ++i) {
        const Mat a = rng.gaussian_matrix(dim, dim);
        const Vec y = rng.sphere_point(dim);
        const RotationMatrix o = haar_rotation(rng, dim);
        const auto id = pushforward_identities(a, y, o);
        worst_t = std::max(worst_t, std::abs(id.t_obs - id.t_pred));
        worst_r = std::max(worst_r, std::abs(id.r_obs - id.r_pred));
        ++count;
      }
    }
    d = {{"samples", count}, {"max_t_error", worst_t}, {"max_r_error", worst_r}, {"tolerance", 1e-9}};
    return worst_t <= 1e-9 && worst_r <= 1e-9;
  }));
  out.push_back(timed(2, "J-pushforward uniformity", 30000, [&](json& d) {
    RngStream rng(seed, stream_id(purpose::kTestData, 1000));
    const Vec y = rng.sphere_point(16);
    const UniformityResult u = pushforward_uniformity_test(seed, 16, y, 5000, workers);
    d = {{"dim", 16},
         {"n_samples", u.n_samples},
         {"ks_statistic", u.ks_statistic},
         {"p_value", u.p_value},
         {"max_inner_with_y", u.max_inner_with_y},
         {"max_norm_defect", u.max_norm_defect}};
    return u.p_value >= 0.01;
  }));
  return out;
}

std::vector<ContractCheck> suite_sandwich(std::uint64_t seed, int) {
  return {timed(3, "EHZ sandwich on ellipsoids", 60000, [&](json& d) {
    RngStream rng(seed, stream_id(purpose::kTestData, 3));
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, worst_pi = 0.0;
    for (int t = 0; t < 500; ++t) {
      std::vector<double> axes(4);
      for (double& a : axes) a = std::exp(rng.uniform() * std::log(10.0));
      std::sort(axes.begin(), axes.end());
      const ConvexBody body = make_body(ellipsoid_spec(axes));
      const Mat a = *body.quad_form();
      const RotationMatrix o = haar_rotation(rng, 8);
      const Mat c = o.matrix() * a * o.matrix().transpose();
      const double prod = ehz_ellipsoid(0.5 * (c + c.transpose())) * alpha(body, o).value;
      lo = std::min(lo, prod);
      hi = std::max(hi, prod);
      worst_pi = std::max(worst_pi, std::abs(ehz_ellipsoid(a) * alpha(body).value - M_PI));
    }
    d = {{"trials", 500}, {"min_product", lo}, {"max_product", hi}, {"max_unrotated_error_vs_pi", worst_pi}};
    return lo >= 1.0 - 1e-6 && hi <= 4.0 + 1e-6 && worst_pi <= 1e-9;
  })};
}

std::vector<ContractCheck> suite_mean_identity(std::uint64_t seed, int workers) {
  return {timed(4, "exact-mean identity, cube dim 16", 60000, [&](json& d) {
    const MeanIdentity m = mean_identity(make_body(cube_spec(16)), 20000, 1000000, seed, workers);
    const double diff = std::abs(m.ensemble.estimate - m.reference.estimate);
    const double tol = 4.0 * joint_se(m.ensemble, m.reference);
    d = {{"ensemble", to_json(m.ensemble)}, {"reference", to_json(m.reference)}, {"difference", diff}, {"tolerance", tol}};
    return diff <= tol;
  })};
}

std::vector<ContractCheck> suite_expectation(std::uint64_t seed, int workers) {
  struct Cell {
    std::string family;
    int dim;
    EstimatorResult mean, anchor;
    bool certified;
  };
  std::vector<Cell> cells;
  std::vector<ContractCheck> out;
  const std::vector<std::pair<std::string, FamilySpec>> families = {
      {"cube", cube_spec(8)}, {"cross", cross_spec(8)}, {"ellipsoid", ellipsoid_spec({1, 4, 9, 16})}};
  out.push_back(timed(5, "expectation lower bound with constant 1", 90000, [&](json& d) {
    bool ok = true;
    d = json::array();
    for (const auto& [name, base] : families) {
      for (int dim : {8, 16, 32}) {
        EnsembleConfig cfg;
        cfg.body = family_at_dim(base, dim);
        cfg.n_samples = 2000;
        cfg.seed = seed;
        cfg.workers = workers;
        cfg.allow_heuristic = true;
        const AlphaEnsemble ens = alpha_ensemble(cfg);
        const Cell c{name, dim, estimate_mean(ens.values, seed),
                     expectation_anchor(make_body(cfg.body), 200000, seed, workers), ens.certified};
        const double tol = 3.0 * joint_se(c.mean, c.anchor);
        const bool pass = c.mean.estimate >= c.anchor.estimate - tol;
        ok = ok && pass;
        d.push_back({{"family", name},
                     {"dim", dim},
                     {"mean_alpha", to_json(c.mean)},
                     {"anchor", to_json(c.anchor)},
                     {"method", std::string(to_string(ens.method))},
                     {"pass", pass}});
        cells.push_back(c);
      }
    }
    return ok;
  }));
  out.push_back(timed(6, "expectation upper-bound trend", 0, [&](json& d) {
    if (cells.empty()) throw Error("no ensembles from the lower-bound run");
    bool ok = true;
    d = json::array();
    for (const auto& [name, base] : families) {
      std::vector<double> ratios;
      json per = json::array();
      bool in_window = true, certified = true;
      for (const auto& c : cells) {
        if (c.family != name) continue;
        const double ratio = c.mean.estimate / c.anchor.estimate;
        const double se = ratio * std::hypot(c.mean.std_error / c.mean.estimate, c.anchor.std_error / c.anchor.estimate);
        const bool w = ratio >= 1.0 - 3.0 * se && ratio <= 10.0;
        in_window = in_window && w;
        certified = certified && c.certified;
        ratios.push_back(ratio);
        per.push_back({{"dim", c.dim}, {"ratio", ratio}, {"std_error", se}, {"in_window", w}});
      }
      const double s = spread(ratios);
      const bool pass = in_window && s <= 2.0;
      ok = ok && pass;
      d.push_back({{"family", name}, {"ratios", per}, {"spread", s}, {"alpha_certified", certified}, {"pass", pass}});
    }
    return ok;
  }));
  return out;
}

std::vector<ContractCheck> suite_table1(std::uint64_t seed, int workers) {
  return {timed(7, "cube ratio scaling sqrt(n / ln n)", 60000, [&](json& d) {
    std::vector<double> norm;
    d = json::array();
    for (int dim : {8, 16, 32, 64}) {
      const Table1Row row = table1_row(cube_spec(dim), 20000, seed, workers);
      norm.push_back(row.ratio_normalized);
      d.push_back({{"dim", dim}, {"ratio", to_json(row.ratio)}, {"ratio_normalized", row.ratio_normalized}});
    }
    d.push_back({{"spread", spread(norm)}});
    return spread(norm) <= 2.0;
  })};
}

std::vector<ContractCheck> suite_lipschitz(std::uint64_t seed, int) {
  return {timed(8, "Lipschitz bound over Haar pairs", 0, [&](json& d) {
    bool ok = true;
    d = json::array();
    const std::vector<std::pair<std::string, FamilySpec>> bodies = {
        {"cube", cube_spec(8)}, {"ellipsoid", family_at_dim(ellipsoid_spec({1, 4}), 8)}};
    std::uint32_t tag = 0;
    for (const auto& [name, spec] : bodies) {
      const ConvexBody body = make_body(spec);
      RngStream rng(seed, stream_id(purpose::kTestData, 80 + tag++));
      double worst = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < 200; ++i) {
        const RotationMatrix o1 = haar_rotation(rng, 8), o2 = haar_rotation(rng, 8);
        const LipschitzGap g = lipschitz_gap(body, o1, o2);
        worst = std::max(worst, std::abs(g.lhs) - g.rhs);
      }
      const bool pass = worst <= 1e-9;
      ok = ok && pass;
      d.push_back({{"body", to_json(spec)}, {"pairs", 200}, {"max_excess", worst}, {"pass", pass}});
    }
    return ok;
  })};
}

std::vector<ContractCheck> suite_concentration(std::uint64_t seed, int workers) {
  return {timed(9, "cube concentration across dims", 0, [&](json& d) {
    const auto profiles = concentration_profile(cube_spec(8), {8, 16, 32, 64}, 4000, seed, workers);
    bool monotone = true;
    d["profiles"] = json::array();
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      if (i > 0 && profiles[i].sd > profiles[i - 1].sd) monotone = false;
      d["profiles"].push_back(profile_json(profiles[i]));
    }
    const double shrink = profiles.back().sd / profiles.front().sd;
    d["sd_ratio_64_to_8"] = shrink;
    d["sd_non_increasing"] = monotone;
    return monotone && shrink <= 0.8;
  })};
}

std::vector<ContractCheck> suite_psi2(std::uint64_t seed, int workers) {
  return {timed(10, "psi2 scaling of <J(O)x, y>", 60000, [&](json& d) {
    bool ok = true;
    d = json::array();
    for (int dim : {8, 32, 128}) {
      RngStream rng(seed, stream_id(purpose::kTestData, 100 + static_cast<std::uint32_t>(dim)));
      const Vec x = rng.sphere_point(dim), y = rng.sphere_point(dim);
      const auto xi = xi_samples(x, y, 100000, seed, workers);
      const double scaled = std::sqrt(0.5 * dim) * psi2_norm_estimate(xi);
      const bool pass = scaled >= 0.2 && scaled <= 3.0;
      ok = ok && pass;
      d.push_back({{"dim", dim}, {"sqrt_n_psi2", scaled}, {"pass", pass}});
    }
    return ok;
  })};
}

std::vector<ContractCheck> suite_nondeg(std::uint64_t seed, int workers) {
  return {timed(11, "non-degeneracy", 0, [&](json& d) {
    bool ok = true;
    d = json::array();
    const std::vector<std::pair<std::string, FamilySpec>> bodies = {
        {"cube", cube_spec(16)}, {"cross", cross_spec(16)}, {"ellipsoid", family_at_dim(ellipsoid_spec({1, 4}), 16)}};
    for (const auto& [name, spec] : bodies) {
      const EstimatorResult nd = nondeg_functional(make_body(spec), 0.5, 100000, seed, workers);
      const bool pass = nd.estimate <= 5.0;
      ok = ok && pass;
      d.push_back({{"family", name}, {"q", 0.5}, {"nd", to_json(nd)}, {"pass", pass}});
    }
    for (double q : {0.5, 1.0, 2.0}) {
      const EstimatorResult nd = nondeg_functional(make_body(ball_spec(16, 1.0)), q, 100000, seed, workers);
      // SE is zero up to rounding for the ball; 1e-12 is the rounding floor
      const double tol = std::max(4.0 * nd.std_error, 1e-12);
      const bool pass = std::abs(nd.estimate - 1.0) <= tol;
      ok = ok && pass;
      d.push_back({{"family", "ball"}, {"q", q}, {"nd", to_json(nd)}, {"pass", pass}});
    }
    return ok;
  })};
}

std::vector<ContractCheck> suite_counterexample(std::uint64_t seed, int workers) {
  return {timed(12, "K_lambda counterexample sweep", 0, [&](json& d) {
    const auto pts = counterexample_sweep({1, 4, 16, 64}, 8, 2000, seed, workers);
    bool increasing = true;
    std::vector<double> ratios;
    d["points"] = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i > 0 && !(pts[i].capacity_lower.estimate > pts[i - 1].capacity_lower.estimate)) increasing = false;
      ratios.push_back(pts[i].ratio.estimate);
      d["points"].push_back({{"lambda", pts[i].lambda},
                             {"capacity_lower", to_json(pts[i].capacity_lower)},
                             {"ratio", to_json(pts[i].ratio)},
                             {"certified", pts[i].certified}});
    }
    const double growth = pts.back().capacity_lower.estimate / pts.front().capacity_lower.estimate;
    const double band = spread(ratios);
    const bool cap_ok = increasing && growth >= 3.0;
    const bool ratio_ok = band <= 1.5;
    d["strictly_increasing"] = increasing;
    d["final_over_initial"] = growth;
    d["capacity_pass"] = cap_ok;
    d["ratio_band"] = band;
    d["ratio_pass"] = ratio_ok;
    return cap_ok && ratio_ok;
  })};
}

std::vector<ContractCheck> suite_determinism(std::uint64_t seed, int workers) {
  std::vector<ContractCheck> out;
  CommandOptions opt;
  opt.body = cube_spec(8);
  opt.samples = 1000;
  opt.seed = seed;
  opt.workers = workers;
  out.push_back(timed(13, "repeated expect gives identical hashes", 0, [&](json& d) {
    const auto h1 = determinism_hash(cmd_expect(opt).report);
    const auto h2 = determinism_hash(cmd_expect(opt).report);
    d = {{"first", hex64(h1)}, {"second", hex64(h2)}};
    return h1 == h2;
  }));
  out.push_back(timed(0, "expect hash independent of worker count", 0, [&](json& d) {
    CommandOptions a = opt, b = opt;
    a.workers = 1;
    b.workers = 3;
    const auto h1 = determinism_hash(cmd_expect(a).report);
    const auto h2 = determinism_hash(cmd_expect(b).report);
    d = {{"workers_1", hex64(h1)}, {"workers_3", hex64(h2)}};
    return h1 == h2;
  }));
  return out;
}

using SuiteFn = std::vector<ContractCheck> (*)(std::uint64_t, int);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"pushforward", suite_pushforward},   {"sandwich", suite_sandwich},
      {"mean-identity", suite_mean_identity}, {"expectation", suite_expectation},
      {"table1", suite_table1},             {"lipschitz", suite_lipschitz},
      {"concentration", suite_concentration}, {"psi2", suite_psi2},
      {"nondeg", suite_nondeg},             {"counterexample", suite_counterexample},
      {"determinism", suite_determinism},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, _] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

std::vector<ContractCheck> run_suite(const std::string& suite, std::uint64_t seed, int workers) {
  for (const auto& [k, fn] : registry())
    if (k == suite) return fn(seed, workers);
  throw InvalidSpec("unknown suite '" + suite + "'");
}

}  // namespace symcap
