#ifndef RULEBOOK_TESTS_PROPERTIES_HPP
#define RULEBOOK_TESTS_PROPERTIES_HPP

// Property checkers shared by the unit property suite and the acceptance
// runner. Each returns an empty string on success, otherwise a description
// of the first counterexample.

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "rulebook/riskaware.hpp"

namespace rulebook::testing {

inline std::vector<std::vector<bool>> oracle_priority(const RandomCase& rc) {
  return oracle::closure(rc.instance.rule_count(), rc.edges);
}

// Trajectory relation: reflexive, transitive, verdicts consistent with both
// directions, and the direction itself agrees with the verbatim oracle.
inline std::string check_trajectory_preorder(const RandomCase& rc) {
  const Evaluation eval(rc.instance);
  const std::size_t n = rc.instance.trajectory_count();
  const auto above = oracle_priority(rc);
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      le[a][b] = eval.no_riskier(a, b);
      if (le[a][b] != oracle::at_least_as_good(above, eval.risk_profile(a), eval.risk_profile(b))) {
        return "no_riskier disagrees with oracle";
      }
    }
    if (!le[a][a] || eval.compare_trajectories(a, a) != Verdict::Equal) return "not reflexive";
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (eval.compare_trajectories(a, b) != verdict_from(le[b][a], le[a][b])) {
        return "verdict inconsistent with relation";
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (le[a][b] && le[b][c] && !le[a][c]) return "not transitive";
      }
    }
  }
  return {};
}

// Safe implies optimal; anything no riskier than a safe trajectory is safe;
// if some trajectory is safe, safe and optimal coincide.
inline std::string check_safe_optimal(const Instance& inst) {
  const Evaluation eval(inst);
  const std::size_t n = inst.trajectory_count();
  std::vector<std::size_t> safe;
  for (std::size_t t = 0; t < n; ++t) {
    if (eval.is_safe(t)) safe.push_back(t);
  }
  const auto optimal = eval.optimal_indices();
  if (optimal.empty()) return "empty optimal set";
  for (std::size_t t : safe) {
    if (!eval.is_optimal(t)) return "safe trajectory not optimal";
    for (std::size_t o = 0; o < n; ++o) {
      const Verdict v = eval.compare_trajectories(o, t);
      if ((v == Verdict::Lower || v == Verdict::Equal) && !(eval.is_safe(o) && eval.is_optimal(o))) {
        return "trajectory no riskier than a safe one is not safe and optimal";
      }
    }
  }
  if (!safe.empty() && safe != optimal) return "safe set differs from optimal set";
  return {};
}

// f <= f' pointwise implies rho(f) <= rho(f') for every built-in measure.
inline std::string check_monotonicity(std::mt19937_64& rng) {
  const FiniteProbSpace space = random_space(rng, pick(rng, 1, 6));
  std::uniform_real_distribution<double> value(0.0, 50.0);
  std::vector<double> lo(space.size()), hi(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    lo[i] = coin(rng, 0.3) ? 0.0 : value(rng);
    hi[i] = lo[i] + (coin(rng, 0.5) ? value(rng) : 0.0);
  }
  const RandomCost f(space, lo), g(space, hi);
  const double random_alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  std::vector<RiskMeasure> measures = {RiskMeasure::expected(), RiskMeasure::worst_case()};
  for (double a : {choose(rng, kAlphaGrid), random_alpha}) {
    measures.push_back(RiskMeasure::value_at_risk(a));
    measures.push_back(RiskMeasure::conditional_value_at_risk(a));
  }
  for (const auto& m : measures) {
    if (assess(m, space, f) > assess(m, space, g) + oracle::kTol) {
      return "monotonicity fails for " + m.describe();
    }
  }
  return {};
}

// Exact CVaR against the sorted-tail average.
inline std::string check_cvar_oracle(std::mt19937_64& rng) {
  const int n = pick(rng, 1, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> probs(n);
  double total = 0.0;
  for (auto& p : probs) total += (p = coin(rng, 0.15) ? 0.0 : unit(rng) + 1e-3);
  if (total == 0.0) {
    probs[0] = 1.0;
    total = 1.0;
  }
  for (auto& p : probs) p /= total;
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("w" + std::to_string(i));
  const FiniteProbSpace space(ids, probs);

  std::vector<double> values(n);
  for (auto& v : values) v = coin(rng, 0.2) ? 0.0 : std::floor(unit(rng) * 1000.0) / 10.0;
  const RandomCost f(space, values);

  const double alpha = coin(rng, 0.1) ? 1.0 : std::uniform_real_distribution<double>(0.0, 0.999)(rng);
  const double got = assess(RiskMeasure::conditional_value_at_risk(alpha), space, f);
  const double want = oracle::cvar_tail_average(values, space.probs(), alpha);
  if (std::abs(got - want) > oracle::kTol) {
    std::ostringstream os;
    os.precision(17);
    os << "cvar(" << alpha << ") = " << got << ", tail average = " << want;
    return os.str();
  }
  return {};
}

struct Outcome {
  std::vector<std::vector<Verdict>> matrix;
  std::vector<bool> safe;
  std::vector<std::size_t> optimal;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

inline Outcome outcome_of(const Instance& inst) {
  const Evaluation eval(inst);
  const std::size_t n = inst.trajectory_count();
  Outcome out;
  out.matrix.assign(n, std::vector<Verdict>(n));
  for (std::size_t a = 0; a < n; ++a) {
    out.safe.push_back(eval.is_safe(a));
    for (std::size_t b = 0; b < n; ++b) out.matrix[a][b] = eval.compare_trajectories(a, b);
  }
  out.optimal = eval.optimal_indices();
  return out;
}

// Scaling one rule's table and threshold by c leaves every verdict, the safe
// set and the optimal set unchanged.
inline std::string check_scale_invariance(const Instance& inst, double c) {
  const Outcome base = outcome_of(inst);
  for (std::size_t r = 0; r < inst.rule_count(); ++r) {
    if (!(outcome_of(scaled(inst, r, c)) == base)) {
      return "outcome changes when rule " + std::to_string(r) + " is scaled by " +
             std::to_string(c);
    }
  }
  return {};
}

// Every (optimal star, competitor, improving rule) triple has a witness, and
// the returned witness matches an exhaustive scan over rules x scenarios.
inline std::string check_witness_existence(const RandomCase& rc, int* triples = nullptr) {
  const Instance& inst = rc.instance;
  const Evaluation eval(inst);
  const auto above = oracle_priority(rc);
  const auto& space = inst.space();
  const auto& rb = inst.rulebook();
  const std::size_t nenv = rb.env_trajectories().size();

  auto cost = [&](std::size_t r, std::size_t t, std::size_t w) {
    return rb.rules()[r].violations[t * nenv + inst.interaction().env(t, w)];
  };

  for (std::size_t star : eval.optimal_indices()) {
    for (std::size_t other = 0; other < inst.trajectory_count(); ++other) {
      for (std::size_t r = 0; r < inst.rule_count(); ++r) {
        if (!(eval.risk_aware_violation(r, star) - eval.risk_aware_violation(r, other) >
              oracle::kTol)) {
          continue;
        }
        if (triples) ++*triples;

        // Oracle: first rule not strictly below r with a positive-probability
        // scenario where the competitor is strictly worse.
        int expected_rule = -1;
        std::vector<std::string> expected_scenarios;
        double expected_prob = 0.0;
        for (std::size_t q = 0; q < inst.rule_count() && expected_rule < 0; ++q) {
          if (above[r][q] && !above[q][r]) continue;
          for (std::size_t w = 0; w < space.size(); ++w) {
            if (space.prob(w) > 0.0 && cost(q, other, w) - cost(q, star, w) > oracle::kTol) {
              expected_rule = static_cast<int>(q);
              expected_scenarios.push_back(space.id(w));
              expected_prob += space.prob(w);
            }
          }
        }
        if (expected_rule < 0) return "oracle finds no witness for a valid triple";

        TradeoffWitness w;
        try {
          w = eval.tradeoff_witness(star, other, r);
        } catch (const std::exception& e) {
          return std::string("tradeoff_witness threw: ") + e.what();
        }
        if (w.compensating_rule != rb.rules()[expected_rule].id ||
            w.witness_scenarios != expected_scenarios ||
            std::abs(w.witness_probability - expected_prob) > oracle::kTol ||
            !(w.witness_probability > 0.0)) {
          return "witness differs from exhaustive scan";
        }
      }
    }
  }
  return {};
}

// Realization preorder on the full T x E grid: reflexive, transitive, agrees
// with the oracle, Equal exactly when every rule value matches, and
// pointwise dominance implies Lower or Equal.
inline std::string check_realization_preorder(const RandomCase& rc) {
  const Rulebook& rb = rc.instance.rulebook();
  const auto above = oracle_priority(rc);
  std::vector<std::vector<double>> profiles;
  for (std::size_t t = 0; t < rb.trajectories().size(); ++t) {
    for (std::size_t e = 0; e < rb.env_trajectories().size(); ++e) profiles.push_back(rb.profile(t, e));
  }
  const std::size_t n = profiles.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      le[a][b] = at_least_as_good(rb.priority(), profiles[a], profiles[b]);
      if (le[a][b] != oracle::at_least_as_good(above, profiles[a], profiles[b])) {
        return "realization relation disagrees with oracle";
      }
      const Verdict v = compare_profiles(rb.priority(), profiles[a], profiles[b]);
      bool all_equal = true, dominated = true;
      for (std::size_t r = 0; r < profiles[a].size(); ++r) {
        all_equal = all_equal && std::abs(profiles[a][r] - profiles[b][r]) <= oracle::kTol;
        dominated = dominated && profiles[a][r] <= profiles[b][r] + oracle::kTol;
      }
      if ((v == Verdict::Equal) != all_equal) return "Equal verdict without equal values";
      if (dominated && v != Verdict::Lower && v != Verdict::Equal) return "dominance not respected";
    }
    if (!le[a][a]) return "realization relation not reflexive";
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!le[a][b]) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (le[b][c] && !le[a][c]) return "realization relation not transitive";
      }
    }
  }
  return {};
}

// Scenario-wise dominance of every induced cost lifts to the trajectory
// preorder; the risk-aware violation is nonnegative and zero exactly when
// the risk is within threshold.
inline std::string check_dominance_lifting(const Instance& inst) {
  const Evaluation eval(inst);
  const std::size_t n = inst.trajectory_count();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t r = 0; r < inst.rule_count(); ++r) {
      const double v = eval.risk_aware_violation(r, a);
      if (v < 0.0) return "negative risk-aware violation";
      const bool within = eval.risk_of(r, a) <= inst.risk(r).threshold + oracle::kTol;
      if (within != (v <= oracle::kTol)) return "safety disagrees with threshold";
    }
    for (std::size_t b = 0; b < n; ++b) {
      bool dominated = true;
      for (std::size_t r = 0; r < inst.rule_count() && dominated; ++r) {
        const RandomCost fa = induced_random_cost(inst, r, a);
        const RandomCost fb = induced_random_cost(inst, r, b);
        for (std::size_t w = 0; w < inst.space().size(); ++w) {
          if (fa[w] > fb[w]) dominated = false;
        }
      }
      const Verdict v = eval.compare_trajectories(a, b);
      if (dominated && v != Verdict::Lower && v != Verdict::Equal) {
        return "pointwise dominance does not lift";
      }
    }
  }
  return {};
}

}  // namespace rulebook::testing

#endif  // RULEBOOK_TESTS_PROPERTIES_HPP
