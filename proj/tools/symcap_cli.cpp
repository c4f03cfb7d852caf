#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symcap/commands.hpp"
#include "symcap/errors.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw symcap::InvalidSpec("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int emit(const symcap::ReportDocument& doc, const std::string& format, const std::string& out_path) {
  const std::string text = format == "csv" ? symcap::to_csv(doc) : symcap::to_json(doc).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "symcap: cannot write " << out_path << "\n";
    return symcap::kExitUsage;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-rotation estimates of symplectic capacity proxies"};
  app.set_config("--config", "", "Flat key=value defaults; flags override the file");
  app.require_subcommand(1);
  app.fallthrough();

  std::string body_text, format = "json", out_path, map = "alpha";
  symcap::CommandOptions opt;
  std::int64_t rotation_seed = -1;

  app.add_option("--body", body_text, "Body spec, e.g. cube:8, ellipsoid:1,4, ballproduct:8:16, JSON, or @file.json");
  app.add_option("--p", opt.p, "Moment order (nonzero; negative allowed)");
  app.add_option("--samples", opt.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Master seed")->envname("SYMCAP_SEED");
  app.add_option("--workers", opt.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_flag("--allow-heuristic", opt.allow_heuristic, "Accept lower-bound alpha values");
  app.add_flag("--bootstrap", opt.bootstrap, "Add bootstrap standard errors");
  app.add_option("--dims", opt.dims, "Dimension list")->delimiter(',');
  app.add_option("--families", opt.families, "Family list for table1")->delimiter(',');
  app.add_option("--lambdas", opt.lambdas, "Lambda grid for sweep")->delimiter(',');

  auto* alpha = app.add_subcommand("alpha", "alpha(K) with its method, certificate and EHZ interval");
  alpha->add_option("--rotation-seed", rotation_seed, "Evaluate at one Haar rotation drawn from this seed");
  auto* expect = app.add_subcommand("expect", "Moment and capacity estimates over Haar rotations");
  auto* table1 = app.add_subcommand("table1", "Inradius, ratio and volume-radius columns per family and dim");
  auto* conc = app.add_subcommand("concentration", "Tail profiles of alpha(OK) across dims");
  conc->add_option("--map", map, "alpha or inverse")->check(CLI::IsMember({"alpha", "inverse"}));
  auto* sweep = app.add_subcommand("sweep", "K_lambda sweep of the capacity lower bound and r/M*");
  auto* chevet = app.add_subcommand("chevet", "Gaussian operator norm against the Chevet bracket");
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(symcap::verify_suites()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : symcap::kExitUsage;
  }

  try {
    if (!body_text.empty())
      opt.body = symcap::parse_family_spec(body_text.starts_with("@") ? read_file(body_text.substr(1)) : body_text);
    if (rotation_seed >= 0) opt.rotation_seed = static_cast<std::uint64_t>(rotation_seed);
    opt.map = map;

    symcap::CommandOutcome outcome;
    if (*alpha) outcome = symcap::cmd_alpha(opt);
    else if (*expect) outcome = symcap::cmd_expect(opt);
    else if (*table1) outcome = symcap::cmd_table1(opt);
    else if (*conc) outcome = symcap::cmd_concentration(opt);
    else if (*sweep) outcome = symcap::cmd_sweep(opt);
    else if (*chevet) outcome = symcap::cmd_chevet(opt);
    else outcome = symcap::cmd_verify(suite, opt);

    if (const int rc = emit(outcome.report, format, out_path); rc != 0) return rc;
    return outcome.exit_code;
  } catch (const symcap::UncertifiedComputation& e) {
    std::cerr << "symcap: " << e.what() << "\n";
    return symcap::kExitUncertified;
  } catch (const std::exception& e) {
    std::cerr << "symcap: " << e.what() << "\n";
    return symcap::kExitUsage;
  }
}
