// rulebook: rank, tabulate, explain, and check risk-aware rulebook instances.
//
//   rulebook rank    <file> [--json] [overrides]
//   rulebook risk    <file> --rule <id> [--alphas a,b,...] [--json] [overrides]
//   rulebook explain <file> <traj_a> <traj_b> [--json] [overrides]
//   rulebook check   <file> [--json] [overrides]
//
// Overrides: --measure <expected|worst_case|var|cvar> --alpha <a> --threshold <g>,
// applied to the rule named by --rule, or to every rule when --rule is absent.
//
// Exit codes: 0 success, 1 validation error (or failed check), 2 parse error
// (malformed instance document or command line).

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rulebook/error.hpp"
#include "rulebook/instance_io.hpp"
#include "rulebook/report.hpp"

namespace {

struct CommonOptions {
  std::string file;
  bool json = false;
  std::optional<std::string> rule;
  std::optional<std::string> measure;
  std::optional<double> alpha;
  std::optional<double> threshold;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool rule_required = false) {
  cmd->add_option("file", opts.file, "Instance document (JSON)")->required();
  cmd->add_flag("--json", opts.json, "Machine-readable output");
  auto* rule = cmd->add_option("--rule", opts.rule, "Rule to tabulate or to scope overrides to");
  if (rule_required) rule->required();
  cmd->add_option("--measure", opts.measure, "Override risk measure")
      ->check(CLI::IsMember({"expected", "worst_case", "var", "cvar"}));
  cmd->add_option("--alpha", opts.alpha, "Override alpha for var/cvar");
  cmd->add_option("--threshold", opts.threshold, "Override threshold");
}

rulebook::Instance load(const CommonOptions& opts) {
  rulebook::Instance instance = rulebook::load_instance(opts.file);
  rulebook::RiskOverride override{opts.rule, opts.measure, opts.alpha, opts.threshold};
  return rulebook::apply_override(instance, override);
}

template <typename Report>
void emit(const Report& report, bool json) {
  if (json) {
    std::cout << rulebook::to_json(report).dump(2) << "\n";
  } else {
    std::cout << rulebook::render_text(report);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Risk-aware rulebook evaluation of candidate trajectories"};
  app.require_subcommand(1);

  CommonOptions rank_opts, risk_opts, explain_opts, check_opts;
  std::vector<double> alphas = rulebook::kDefaultAlphas;
  std::string traj_a, traj_b;

  auto* rank = app.add_subcommand("rank", "Rank trajectories; report safety, optimal set, tradeoffs");
  add_common(rank, rank_opts);

  auto* risk = app.add_subcommand("risk", "Risk table of one rule under several measures");
  add_common(risk, risk_opts, true);
  risk->add_option("--alphas", alphas, "Alpha levels for the VaR/CVaR columns")->delimiter(',');

  auto* explain = app.add_subcommand("explain", "Explain the verdict between two trajectories");
  add_common(explain, explain_opts);
  explain->add_option("traj_a", traj_a)->required();
  explain->add_option("traj_b", traj_b)->required();

  auto* check = app.add_subcommand("check", "Validate an instance and re-verify its invariants");
  add_common(check, check_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the parse-error exit code; --help still exits 0.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (rank->parsed()) {
      emit(rulebook::run_rank(load(rank_opts)), rank_opts.json);
    } else if (risk->parsed()) {
      emit(rulebook::run_risk_table(load(risk_opts), *risk_opts.rule, alphas), risk_opts.json);
    } else if (explain->parsed()) {
      emit(rulebook::run_explain(load(explain_opts), traj_a, traj_b), explain_opts.json);
    } else if (check->parsed()) {
      const auto report = rulebook::run_check(load(check_opts));
      emit(report, check_opts.json);
      return report.passed() ? 0 : 1;
    }
  } catch (const rulebook::Error& e) {
    std::cerr << "error (" << rulebook::to_string(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == rulebook::ErrorKind::ParseError ? 2 : 1;
  }
  return 0;
}
