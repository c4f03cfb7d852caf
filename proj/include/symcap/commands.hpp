#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symcap/family.hpp"
#include "symcap/report.hpp"

namespace symcap {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitUncertified = 2, kExitAcceptance = 3 };

struct CommandOptions {
  std::optional<FamilySpec> body;
  double p = 1.0;
  std::int64_t samples = 2000;
  std::uint64_t seed = 0;
  int workers = 1;
  bool allow_heuristic = false;
  bool bootstrap = false;
  std::vector<int> dims;
  std::vector<std::string> families;
  std::vector<double> lambdas;
  /// alpha: evaluate at one Haar rotation drawn from this seed.
  std::optional<std::uint64_t> rotation_seed;
  /// concentration: "alpha" or "inverse".
  std::string map = "alpha";
};

struct CommandOutcome {
  ReportDocument report;
  int exit_code = kExitOk;
};

CommandOutcome cmd_alpha(const CommandOptions& opt);
CommandOutcome cmd_expect(const CommandOptions& opt);
CommandOutcome cmd_table1(const CommandOptions& opt);
CommandOutcome cmd_concentration(const CommandOptions& opt);
CommandOutcome cmd_sweep(const CommandOptions& opt);
CommandOutcome cmd_chevet(const CommandOptions& opt);
CommandOutcome cmd_verify(const std::string& suite, const CommandOptions& opt);

/// One evaluated contract of a verification suite.
struct ContractCheck {
  /// Acceptance criterion number, 0 for supplementary contracts.
  int criterion = 0;
  std::string name;
  bool pass = false;
  double elapsed_ms = 0.0;
  /// Wall-time budget in ms, 0 when the contract has none.
  double budget_ms = 0.0;
  nlohmann::json detail;
};

const std::vector<std::string>& verify_suites();

/// Runs a suite with its registered sample budgets. Throws InvalidSpec for
/// an unknown name.
std::vector<ContractCheck> run_suite(const std::string& suite, std::uint64_t seed, int workers = 1);

nlohmann::json to_json(const ContractCheck& c);

}  // namespace symcap
