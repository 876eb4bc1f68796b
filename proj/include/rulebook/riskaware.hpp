#ifndef RULEBOOK_RISKAWARE_HPP
#define RULEBOOK_RISKAWARE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rulebook/preorder.hpp"
#include "rulebook/probspace.hpp"
#include "rulebook/risk.hpp"
#include "rulebook/rulebook.hpp"

namespace rulebook {

/// Which environment trajectory unfolds for a given system trajectory under
/// a given scenario. Stored as env indices, row-major by trajectory.
class InteractionModel {
 public:
  InteractionModel() = default;
  InteractionModel(std::size_t trajectories, std::size_t scenarios, std::vector<std::size_t> env);

  std::size_t env(std::size_t trajectory, std::size_t scenario) const {
    return env_[trajectory * scenarios_ + scenario];
  }
  std::size_t trajectory_count() const { return trajectories_; }
  std::size_t scenario_count() const { return scenarios_; }
  const std::vector<std::size_t>& table() const { return env_; }

  friend bool operator==(const InteractionModel&, const InteractionModel&) = default;

 private:
  std::size_t trajectories_ = 0;
  std::size_t scenarios_ = 0;
  std::vector<std::size_t> env_;
};

/// Risk measure and threshold attached to one rule.
struct RiskConfig {
  RiskMeasure measure = RiskMeasure::expected();
  double threshold = 0.0;

  friend bool operator==(const RiskConfig&, const RiskConfig&) = default;
};

/// A complete evaluation problem: scenarios, interaction, rulebook, and one
/// risk configuration per rule (aligned with rule order).
class Instance {
 public:
  Instance() = default;

  /// Throws Error{ValidationError} if the interaction map does not cover
  /// trajectories x scenarios, references an unknown environment
  /// trajectory, a config is missing, or a threshold is negative.
  Instance(FiniteProbSpace space, InteractionModel interaction, Rulebook rulebook,
           std::vector<RiskConfig> risk, std::string description = {});

  const FiniteProbSpace& space() const { return space_; }
  const InteractionModel& interaction() const { return interaction_; }
  const Rulebook& rulebook() const { return rulebook_; }
  const std::vector<RiskConfig>& risk() const { return risk_; }
  const RiskConfig& risk(std::size_t rule) const { return risk_[rule]; }
  const std::string& description() const { return description_; }

  const std::vector<std::string>& trajectories() const { return rulebook_.trajectories(); }
  std::size_t trajectory_count() const { return rulebook_.trajectories().size(); }
  std::size_t rule_count() const { return rulebook_.rule_count(); }

  /// Copy with one rule's configuration replaced.
  Instance with_risk(std::size_t rule, RiskConfig config) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  FiniteProbSpace space_;
  InteractionModel interaction_;
  Rulebook rulebook_;
  std::vector<RiskConfig> risk_;
  std::string description_;
};

/// r_tau(w) = r(tau, E(tau, w)).
RandomCost induced_random_cost(const Instance& instance, std::size_t rule, std::size_t trajectory);
/// Throws Error{UnknownRule} or Error{UnknownTrajectory}.
RandomCost induced_random_cost(const Instance& instance, std::string_view rule_id,
                               std::string_view trajectory);

/// Rulebook comparison of the two realizations a scenario induces.
/// Throws Error{UnknownScenario} or Error{UnknownTrajectory}.
Verdict compare_given_scenario(const Instance& instance, std::string_view a, std::string_view b,
                               std::string_view scenario);

/// A not-lower-priority rule on which the competitor is strictly worse with
/// positive probability.
struct TradeoffWitness {
  std::string improving_rule;
  std::string compensating_rule;
  std::vector<std::string> witness_scenarios;
  double witness_probability = 0.0;
};

enum class PointwiseCaseKind { NullAdvantage, SafeAtStar, CompensatedElsewhere };

std::string_view to_string(PointwiseCaseKind kind);

/// Classification of a scenario-level advantage of a competitor over an
/// optimal trajectory.
struct PointwiseCase {
  PointwiseCaseKind kind = PointwiseCaseKind::NullAdvantage;
  /// Pr(competitor strictly better on the rule).
  double advantage_probability = 0.0;
  double risk_at_star = 0.0;
  double threshold = 0.0;
  std::optional<TradeoffWitness> witness;
};

/// Risk-aware evaluation of an instance. Risks are computed once at
/// construction; every query afterwards is a read of immutable state, so an
/// Evaluation may be shared across threads.
///
/// Comparison results follow Verdict: Lower means the first trajectory is
/// strictly less risky.
class Evaluation {
 public:
  explicit Evaluation(const Instance& instance);

  const Instance& instance() const { return instance_; }

  double risk_of(std::size_t rule, std::size_t trajectory) const {
    return risk_[rule * trajectories_ + trajectory];
  }
  double risk_of(std::string_view rule_id, std::string_view trajectory) const;

  /// max{risk - threshold, 0}.
  double risk_aware_violation(std::size_t rule, std::size_t trajectory) const {
    return excess_[rule * trajectories_ + trajectory];
  }
  double risk_aware_violation(std::string_view rule_id, std::string_view trajectory) const;

  bool is_safe_wrt_rule(std::size_t rule, std::size_t trajectory) const;
  bool is_safe_wrt_rule(std::string_view rule_id, std::string_view trajectory) const;
  bool is_safe(std::size_t trajectory) const;
  bool is_safe(std::string_view trajectory) const;

  /// Risk-aware violation of every rule, in rule order.
  std::vector<double> risk_profile(std::size_t trajectory) const;

  Verdict compare_trajectories(std::size_t a, std::size_t b) const;
  Verdict compare_trajectories(std::string_view a, std::string_view b) const;

  /// a is no riskier than b.
  bool no_riskier(std::size_t a, std::size_t b) const;

  /// Trajectories no other trajectory is strictly less risky than, in
  /// declaration order. Never tie-broken.
  std::vector<std::string> optimal_set() const;
  std::vector<std::size_t> optimal_indices() const;
  bool is_optimal(std::size_t trajectory) const;

  /// The trajectory preorder as a Preorder whose "higher" is "riskier".
  Preorder trajectory_preorder() const;

  /// First witness in rule declaration order explaining why `competitor`,
  /// which is strictly less risky than `star` on `improving_rule`, does not
  /// beat `star` overall.
  ///
  /// Throws Error{PreconditionViolated} unless the competitor's risk-aware
  /// violation on `improving_rule` is strictly below star's, and
  /// Error{NoWitness} when no rule qualifies (star not optimal, or a
  /// non-monotone measure).
  TradeoffWitness tradeoff_witness(std::size_t star, std::size_t competitor,
                                   std::size_t improving_rule) const;
  TradeoffWitness tradeoff_witness(std::string_view star, std::string_view competitor,
                                   std::string_view improving_rule) const;

  /// Every witness, rule declaration order. Empty when none exists; same
  /// precondition as tradeoff_witness.
  std::vector<TradeoffWitness> all_tradeoff_witnesses(std::size_t star, std::size_t competitor,
                                                      std::size_t improving_rule) const;

  /// Which of the three scenario-level cases applies, checked in the order
  /// null advantage, safe at star, compensated elsewhere.
  ///
  /// Throws Error{AssumptionUnmet} unless every configured measure is in the
  /// strictly monotone class, Error{PreconditionViolated} unless star is
  /// optimal and the competitor is strictly better on the rule at the
  /// scenario.
  PointwiseCase pointwise_case(std::size_t star, std::size_t competitor, std::size_t rule,
                               std::size_t scenario) const;
  PointwiseCase pointwise_case(std::string_view star, std::string_view competitor,
                               std::string_view rule, std::string_view scenario) const;

 private:
  std::optional<TradeoffWitness> witness_for(std::size_t star, std::size_t competitor,
                                             std::size_t improving_rule,
                                             std::size_t candidate) const;

  Instance instance_;
  std::size_t trajectories_;
  std::vector<RandomCost> costs_;
  std::vector<double> risk_;
  std::vector<double> excess_;
};

}  // namespace rulebook

#endif  // RULEBOOK_RISKAWARE_HPP
