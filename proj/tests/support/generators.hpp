#ifndef RULEBOOK_TESTS_GENERATORS_HPP
#define RULEBOOK_TESTS_GENERATORS_HPP

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rulebook/riskaware.hpp"

namespace rulebook::testing {

struct RandomCase {
  Instance instance;
  // Declared priority edges as (higher, lower) rule indices.
  std::vector<std::pair<int, int>> edges;
};

struct Limits {
  int max_trajectories = 6;
  int max_rules = 5;
  int max_scenarios = 6;
  int max_envs = 4;
};

inline int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& choose(std::mt19937_64& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(items.size()) - 1))];
}

inline const std::vector<double> kAlphaGrid = {0.0, 0.25, 0.5, 0.8, 0.9, 0.95, 0.99, 1.0};

// Probabilities from small integer weights, at least one positive; zero
// weights exercise the almost-sure semantics.
inline FiniteProbSpace random_space(std::mt19937_64& rng, int scenarios) {
  std::vector<int> weights(scenarios);
  int total = 0;
  while (total == 0) {
    total = 0;
    for (auto& w : weights) total += (w = pick(rng, 0, 4));
  }
  std::vector<std::string> ids;
  std::vector<double> probs;
  for (int i = 0; i < scenarios; ++i) {
    ids.push_back("w" + std::to_string(i));
    probs.push_back(static_cast<double>(weights[i]) / total);
  }
  return FiniteProbSpace(ids, probs);
}

inline RiskMeasure random_measure(std::mt19937_64& rng, bool expected_only = false) {
  if (expected_only) return RiskMeasure::expected();
  switch (pick(rng, 0, 3)) {
    case 0: return RiskMeasure::expected();
    case 1: return RiskMeasure::worst_case();
    case 2: return RiskMeasure::value_at_risk(choose(rng, kAlphaGrid));
    default: return RiskMeasure::conditional_value_at_risk(choose(rng, kAlphaGrid));
  }
}

inline RandomCase random_case(std::mt19937_64& rng, Limits lim = {}, bool expected_only = false) {
  static const std::vector<double> kViolations = {0, 0, 0.5, 1, 2, 3, 5, 8};
  static const std::vector<double> kThresholds = {0, 0, 0, 0.5, 1, 2, 3};

  const int nt = pick(rng, 1, lim.max_trajectories);
  const int nr = pick(rng, 1, lim.max_rules);
  const int nw = pick(rng, 1, lim.max_scenarios);
  const int ne = pick(rng, 1, lim.max_envs);

  FiniteProbSpace space = random_space(rng, nw);
  std::vector<std::string> trajectories, envs, rule_ids;
  for (int i = 0; i < nt; ++i) trajectories.push_back("t" + std::to_string(i));
  for (int i = 0; i < ne; ++i) envs.push_back("x" + std::to_string(i));
  for (int i = 0; i < nr; ++i) rule_ids.push_back("r" + std::to_string(i));

  std::vector<std::size_t> interaction(static_cast<std::size_t>(nt * nw));
  for (auto& e : interaction) e = static_cast<std::size_t>(pick(rng, 0, ne - 1));

  std::vector<Rule> rules;
  std::vector<RiskConfig> configs;
  for (int r = 0; r < nr; ++r) {
    Rule rule{rule_ids[r], {}};
    for (int c = 0; c < nt * ne; ++c) rule.violations.push_back(choose(rng, kViolations));
    rules.push_back(std::move(rule));
    configs.push_back({random_measure(rng, expected_only), choose(rng, kThresholds)});
  }

  // Acyclic edges along a random permutation, plus occasional reversed
  // edges that declare equal rank.
  std::vector<int> order(nr);
  for (int i = 0; i < nr; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < nr; ++i) {
    for (int j = i + 1; j < nr; ++j) {
      if (coin(rng, 0.4)) {
        edges.emplace_back(order[i], order[j]);
        if (coin(rng, 0.15)) edges.emplace_back(order[j], order[i]);
      }
    }
  }
  std::vector<Edge> named;
  for (auto [a, b] : edges) named.emplace_back(rule_ids[a], rule_ids[b]);

  Rulebook rb(trajectories, envs, std::move(rules), Preorder::build(rule_ids, named));
  InteractionModel im(nt, nw, std::move(interaction));
  return {Instance(std::move(space), std::move(im), std::move(rb), std::move(configs)),
          std::move(edges)};
}

// Instance with one rule's table and threshold multiplied by c.
inline Instance scaled(const Instance& base, std::size_t rule, double c) {
  const Rulebook& rb = base.rulebook();
  std::vector<Rule> rules = rb.rules();
  for (double& v : rules[rule].violations) v *= c;
  Rulebook scaled_rb(rb.trajectories(), rb.env_trajectories(), std::move(rules), rb.priority());
  std::vector<RiskConfig> risk = base.risk();
  risk[rule].threshold *= c;
  return Instance(base.space(), base.interaction(), std::move(scaled_rb), std::move(risk));
}

}  // namespace rulebook::testing

#endif  // RULEBOOK_TESTS_GENERATORS_HPP
