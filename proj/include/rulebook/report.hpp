#ifndef RULEBOOK_REPORT_HPP
#define RULEBOOK_REPORT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rulebook/riskaware.hpp"

namespace rulebook {

/// Twelve significant digits, trailing zeros dropped; -0 prints as 0. JSON
/// output keeps full precision.
std::string format_number(double v);

// ---------------------------------------------------------------- rank

struct RuleAssessment {
  std::string rule;
  double risk = 0.0;
  double threshold = 0.0;
  double violation = 0.0;  // max{risk - threshold, 0}
  bool safe = true;
};

struct TrajectoryAssessment {
  std::string trajectory;
  bool safe = false;
  bool optimal = false;
  std::vector<RuleAssessment> rules;
};

/// Why `competitor`, better than the optimal `star` on the witness's
/// improving rule, still does not beat it.
struct Justification {
  std::string star;
  std::string competitor;
  TradeoffWitness witness;
};

struct RankingReport {
  std::vector<std::string> rules;
  std::vector<std::string> measures;  // RiskMeasure::describe(), rule order
  std::vector<double> thresholds;
  std::vector<TrajectoryAssessment> trajectories;
  /// matrix[a][b] = compare_trajectories(a, b).
  std::vector<std::vector<Verdict>> matrix;
  std::vector<std::string> optimal;
  std::vector<Justification> explanations;
};

RankingReport run_rank(const Instance& instance);

// ---------------------------------------------------------------- risk table

inline const std::vector<double> kDefaultAlphas = {0.9, 0.98, 0.99, 0.995, 0.999, 0.9995, 1.0};

struct RiskTableRow {
  std::string trajectory;
  std::vector<Atom> distribution;
  double configured = 0.0;
  double violation = 0.0;
  double expected = 0.0;
  double worst_case = 0.0;
  std::vector<double> var;   // one per alpha
  std::vector<double> cvar;  // one per alpha
};

struct RiskTable {
  std::string rule;
  std::string measure;
  double threshold = 0.0;
  std::vector<double> alphas;
  std::vector<RiskTableRow> rows;
};

/// Risk of every trajectory on one rule under the configured measure, the
/// expectation, the worst case, and VaR/CVaR at each of `alphas`.
RiskTable run_risk_table(const Instance& instance, std::string_view rule_id,
                         const std::vector<double>& alphas = kDefaultAlphas);

// ---------------------------------------------------------------- explain

/// A rule on which one side is worse, and the strictly higher-priority
/// rules on which that side is better (empty: uncompensated).
struct Disadvantage {
  std::string rule;
  double worse = 0.0;
  double better = 0.0;
  std::vector<std::string> compensated_by;
};

struct Explanation {
  std::string a;
  std::string b;
  Verdict verdict = Verdict::Equal;
  std::string summary;
  std::vector<Disadvantage> a_worse;
  std::vector<Disadvantage> b_worse;
  bool a_optimal = false;
  bool b_optimal = false;
  /// Witnesses for the optimal side(s), for every rule the other side wins.
  std::vector<Justification> witnesses;
};

Explanation run_explain(const Instance& instance, std::string_view a, std::string_view b);

// ---------------------------------------------------------------- check

struct CheckItem {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckItem> items;
  bool passed() const;
};

/// Re-verifies structural invariants of an instance and the laws the
/// evaluation must satisfy on it. Custom measures get a randomized
/// monotonicity spot check (seeded, so the report stays reproducible) and
/// are reported as unverified.
CheckReport run_check(const Instance& instance, std::uint64_t seed = 0x5eed,
                      int spot_checks = 200);

// ---------------------------------------------------------------- rendering

std::string render_text(const RankingReport& report);
std::string render_text(const RiskTable& table);
std::string render_text(const Explanation& explanation);
std::string render_text(const CheckReport& report);

nlohmann::ordered_json to_json(const RankingReport& report);
nlohmann::ordered_json to_json(const RiskTable& table);
nlohmann::ordered_json to_json(const Explanation& explanation);
nlohmann::ordered_json to_json(const CheckReport& report);

}  // namespace rulebook

#endif  // RULEBOOK_REPORT_HPP
