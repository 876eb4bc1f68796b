#include "rulebook/riskaware.hpp"

#include <algorithm>
#include <cmath>

#include "rulebook/error.hpp"
#include "rulebook/tolerance.hpp"

namespace rulebook {

InteractionModel::InteractionModel(std::size_t trajectories, std::size_t scenarios,
                                   std::vector<std::size_t> env)
    : trajectories_(trajectories), scenarios_(scenarios), env_(std::move(env)) {
  if (env_.size() != trajectories_ * scenarios_) {
    throw Error(ErrorKind::ValidationError, "interaction map has " + std::to_string(env_.size()) +
                                                " cells, expected " +
                                                std::to_string(trajectories_ * scenarios_));
  }
}

Instance::Instance(FiniteProbSpace space, InteractionModel interaction, Rulebook rulebook,
                   std::vector<RiskConfig> risk, std::string description)
    : space_(std::move(space)),
      interaction_(std::move(interaction)),
      rulebook_(std::move(rulebook)),
      risk_(std::move(risk)),
      description_(std::move(description)) {
  if (interaction_.trajectory_count() != rulebook_.trajectories().size() ||
      interaction_.scenario_count() != space_.size()) {
    throw Error(ErrorKind::ValidationError,
                "interaction map does not cover every (trajectory, scenario) pair");
  }
  for (std::size_t e : interaction_.table()) {
    if (e >= rulebook_.env_trajectories().size()) {
      throw Error(ErrorKind::ValidationError,
                  "interaction map references an undeclared environment trajectory");
    }
  }
  if (risk_.size() != rulebook_.rule_count()) {
    throw Error(ErrorKind::ValidationError, "every rule needs exactly one risk configuration");
  }
  for (std::size_t r = 0; r < risk_.size(); ++r) {
    const double g = risk_[r].threshold;
    if (!std::isfinite(g) || g < 0.0) {
      throw Error(ErrorKind::ValidationError,
                  "threshold of rule '" + rulebook_.rules()[r].id + "' must be nonnegative");
    }
  }
}

Instance Instance::with_risk(std::size_t rule, RiskConfig config) const {
  auto risk = risk_;
  risk.at(rule) = std::move(config);
  return Instance(space_, interaction_, rulebook_, std::move(risk), description_);
}

RandomCost induced_random_cost(const Instance& instance, std::size_t rule, std::size_t trajectory) {
  const auto& space = instance.space();
  std::vector<double> values(space.size());
  for (std::size_t w = 0; w < space.size(); ++w) {
    values[w] = instance.rulebook().violation(rule, trajectory,
                                              instance.interaction().env(trajectory, w));
  }
  return RandomCost(space, std::move(values));
}

RandomCost induced_random_cost(const Instance& instance, std::string_view rule_id,
                               std::string_view trajectory) {
  const auto& rb = instance.rulebook();
  return induced_random_cost(instance, rb.rule_index(rule_id), rb.trajectory_index(trajectory));
}

Verdict compare_given_scenario(const Instance& instance, std::string_view a, std::string_view b,
                               std::string_view scenario) {
  const auto& rb = instance.rulebook();
  const std::size_t ta = rb.trajectory_index(a);
  const std::size_t tb = rb.trajectory_index(b);
  const std::size_t w = instance.space().index_of(scenario);
  const auto& envs = rb.env_trajectories();
  return rb.compare_realizations({std::string(a), envs[instance.interaction().env(ta, w)]},
                                 {std::string(b), envs[instance.interaction().env(tb, w)]});
}

std::string_view to_string(PointwiseCaseKind kind) {
  switch (kind) {
    case PointwiseCaseKind::NullAdvantage: return "null_advantage";
    case PointwiseCaseKind::SafeAtStar: return "safe_at_star";
    case PointwiseCaseKind::CompensatedElsewhere: return "compensated_elsewhere";
  }
  return "?";
}

Evaluation::Evaluation(const Instance& instance)
    : instance_(instance), trajectories_(instance.trajectory_count()) {
  const std::size_t rules = instance_.rule_count();
  costs_.reserve(rules * trajectories_);
  risk_.reserve(rules * trajectories_);
  excess_.reserve(rules * trajectories_);
  for (std::size_t r = 0; r < rules; ++r) {
    const RiskConfig& config = instance_.risk(r);
    for (std::size_t t = 0; t < trajectories_; ++t) {
      costs_.push_back(induced_random_cost(instance_, r, t));
      const double risk = assess(config.measure, instance_.space(), costs_.back());
      risk_.push_back(risk);
      excess_.push_back(std::max(risk - config.threshold, 0.0));
    }
  }
}

double Evaluation::risk_of(std::string_view rule_id, std::string_view trajectory) const {
  const auto& rb = instance_.rulebook();
  return risk_of(rb.rule_index(rule_id), rb.trajectory_index(trajectory));
}

double Evaluation::risk_aware_violation(std::string_view rule_id,
                                        std::string_view trajectory) const {
  const auto& rb = instance_.rulebook();
  return risk_aware_violation(rb.rule_index(rule_id), rb.trajectory_index(trajectory));
}

bool Evaluation::is_safe_wrt_rule(std::size_t rule, std::size_t trajectory) const {
  return risk_aware_violation(rule, trajectory) <= kTolerance;
}

bool Evaluation::is_safe_wrt_rule(std::string_view rule_id, std::string_view trajectory) const {
  const auto& rb = instance_.rulebook();
  return is_safe_wrt_rule(rb.rule_index(rule_id), rb.trajectory_index(trajectory));
}

bool Evaluation::is_safe(std::size_t trajectory) const {
  for (std::size_t r = 0; r < instance_.rule_count(); ++r) {
    if (!is_safe_wrt_rule(r, trajectory)) return false;
  }
  return true;
}

bool Evaluation::is_safe(std::string_view trajectory) const {
  return is_safe(instance_.rulebook().trajectory_index(trajectory));
}

std::vector<double> Evaluation::risk_profile(std::size_t trajectory) const {
  std::vector<double> out(instance_.rule_count());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = risk_aware_violation(r, trajectory);
  return out;
}

bool Evaluation::no_riskier(std::size_t a, std::size_t b) const {
  return at_least_as_good(instance_.rulebook().priority(), risk_profile(a), risk_profile(b));
}

Verdict Evaluation::compare_trajectories(std::size_t a, std::size_t b) const {
  return compare_profiles(instance_.rulebook().priority(), risk_profile(a), risk_profile(b));
}

Verdict Evaluation::compare_trajectories(std::string_view a, std::string_view b) const {
  const auto& rb = instance_.rulebook();
  return compare_trajectories(rb.trajectory_index(a), rb.trajectory_index(b));
}

bool Evaluation::is_optimal(std::size_t trajectory) const {
  for (std::size_t other = 0; other < trajectories_; ++other) {
    if (compare_trajectories(other, trajectory) == Verdict::Lower) return false;
  }
  return true;
}

std::vector<std::size_t> Evaluation::optimal_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < trajectories_; ++t) {
    if (is_optimal(t)) out.push_back(t);
  }
  return out;
}

std::vector<std::string> Evaluation::optimal_set() const {
  std::vector<std::string> out;
  for (std::size_t t : optimal_indices()) out.push_back(instance_.trajectories()[t]);
  return out;
}

Preorder Evaluation::trajectory_preorder() const {
  std::vector<Edge> edges;
  const auto& ids = instance_.trajectories();
  for (std::size_t a = 0; a < trajectories_; ++a) {
    for (std::size_t b = 0; b < trajectories_; ++b) {
      if (a != b && no_riskier(b, a)) edges.emplace_back(ids[a], ids[b]);
    }
  }
  return Preorder::build(ids, edges);
}

std::optional<TradeoffWitness> Evaluation::witness_for(std::size_t star, std::size_t competitor,
                                                       std::size_t improving_rule,
                                                       std::size_t candidate) const {
  const auto& rb = instance_.rulebook();
  if (rb.priority().strictly_above(improving_rule, candidate)) return std::nullopt;

  const auto& space = instance_.space();
  const RandomCost& worse = costs_[candidate * trajectories_ + competitor];
  const RandomCost& better = costs_[candidate * trajectories_ + star];
  const auto where = scenarios_where(space, worse, Relation::Greater, better);
  if (where.empty()) return std::nullopt;

  TradeoffWitness w;
  w.improving_rule = rb.rules()[improving_rule].id;
  w.compensating_rule = rb.rules()[candidate].id;
  for (std::size_t s : where) {
    w.witness_scenarios.push_back(space.id(s));
    w.witness_probability += space.prob(s);
  }
  return w;
}

std::vector<TradeoffWitness> Evaluation::all_tradeoff_witnesses(std::size_t star,
                                                                std::size_t competitor,
                                                                std::size_t improving_rule) const {
  if (!definitely_less(risk_aware_violation(improving_rule, competitor),
                       risk_aware_violation(improving_rule, star))) {
    throw Error(ErrorKind::PreconditionViolated,
                "competitor is not strictly less risky than the reference on rule '" +
                    instance_.rulebook().rules()[improving_rule].id + "'");
  }
  std::vector<TradeoffWitness> out;
  for (std::size_t r = 0; r < instance_.rule_count(); ++r) {
    if (auto w = witness_for(star, competitor, improving_rule, r)) out.push_back(std::move(*w));
  }
  return out;
}

TradeoffWitness Evaluation::tradeoff_witness(std::size_t star, std::size_t competitor,
                                             std::size_t improving_rule) const {
  auto all = all_tradeoff_witnesses(star, competitor, improving_rule);
  if (all.empty()) {
    const auto& ids = instance_.trajectories();
    throw Error(ErrorKind::NoWitness, "no compensating rule explains why '" + ids[competitor] +
                                          "' does not beat '" + ids[star] + "'");
  }
  return std::move(all.front());
}

TradeoffWitness Evaluation::tradeoff_witness(std::string_view star, std::string_view competitor,
                                             std::string_view improving_rule) const {
  const auto& rb = instance_.rulebook();
  return tradeoff_witness(rb.trajectory_index(star), rb.trajectory_index(competitor),
                          rb.rule_index(improving_rule));
}

PointwiseCase Evaluation::pointwise_case(std::size_t star, std::size_t competitor,
                                         std::size_t rule, std::size_t scenario) const {
  const auto& rb = instance_.rulebook();
  for (std::size_t r = 0; r < instance_.rule_count(); ++r) {
    if (!is_strictly_monotone_class(instance_.risk(r).measure)) {
      throw Error(ErrorKind::AssumptionUnmet,
                  "rule '" + rb.rules()[r].id + "' uses " + instance_.risk(r).measure.describe() +
                      ", which is not strictly monotone");
    }
  }
  if (!is_optimal(star)) {
    throw Error(ErrorKind::PreconditionViolated,
                "'" + instance_.trajectories()[star] + "' is not optimal");
  }
  const RandomCost& at_competitor = costs_[rule * trajectories_ + competitor];
  const RandomCost& at_star = costs_[rule * trajectories_ + star];
  if (!definitely_less(at_competitor[scenario], at_star[scenario])) {
    throw Error(ErrorKind::PreconditionViolated,
                "competitor is not strictly better on rule '" + rb.rules()[rule].id +
                    "' at scenario '" + instance_.space().id(scenario) + "'");
  }

  PointwiseCase out;
  out.advantage_probability =
      probability(instance_.space(), at_competitor, Relation::Less, at_star);
  out.risk_at_star = risk_of(rule, star);
  out.threshold = instance_.risk(rule).threshold;

  if (out.advantage_probability <= 0.0) {
    out.kind = PointwiseCaseKind::NullAdvantage;
    return out;
  }
  if (!definitely_greater(out.risk_at_star, out.threshold)) {
    out.kind = PointwiseCaseKind::SafeAtStar;
    return out;
  }
  for (std::size_t r = 0; r < instance_.rule_count(); ++r) {
    if (auto w = witness_for(star, competitor, rule, r)) {
      out.kind = PointwiseCaseKind::CompensatedElsewhere;
      out.witness = std::move(w);
      return out;
    }
  }
  throw Error(ErrorKind::NoWitness, "no compensating rule found for the pointwise advantage");
}

PointwiseCase Evaluation::pointwise_case(std::string_view star, std::string_view competitor,
                                         std::string_view rule, std::string_view scenario) const {
  const auto& rb = instance_.rulebook();
  return pointwise_case(rb.trajectory_index(star), rb.trajectory_index(competitor),
                        rb.rule_index(rule), instance_.space().index_of(scenario));
}

}  // namespace rulebook
