#ifndef RULEBOOK_RULEBOOK_HPP
#define RULEBOOK_RULEBOOK_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rulebook/preorder.hpp"

namespace rulebook {

/// A system trajectory paired with an environment trajectory.
struct Realization {
  std::string trajectory;
  std::string env_trajectory;
};

/// Degree of violation over the trajectory x environment-trajectory grid,
/// stored row-major (one row per system trajectory). Zero is full
/// compliance.
struct Rule {
  std::string id;
  std::vector<double> violations;
};

/// Compares two violation profiles (one value per rule, aligned with the
/// priority preorder's elements).
///
/// x is at least as good as y when every rule on which x is worse is
/// outweighed by some strictly higher-priority rule on which x is better.
/// The result is Lower when x is strictly better, Higher when strictly
/// worse.
Verdict compare_profiles(const Preorder& priority, std::span<const double> x,
                         std::span<const double> y);

/// One direction of compare_profiles.
bool at_least_as_good(const Preorder& priority, std::span<const double> x,
                      std::span<const double> y);

/// A finite set of rules over declared system and environment trajectories,
/// with a priority preorder whose elements are exactly the rule ids.
class Rulebook {
 public:
  Rulebook() = default;

  /// Throws Error{ValidationError} on a table of the wrong size, a negative
  /// or non-finite violation, a priority preorder whose elements differ
  /// from the rule ids, and Error{DuplicateElement} on repeated ids.
  Rulebook(std::vector<std::string> trajectories, std::vector<std::string> env_trajectories,
           std::vector<Rule> rules, Preorder priority);

  const std::vector<std::string>& trajectories() const { return trajectories_; }
  const std::vector<std::string>& env_trajectories() const { return env_trajectories_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const Preorder& priority() const { return priority_; }
  std::size_t rule_count() const { return rules_.size(); }

  /// Throws Error{UnknownRule}.
  std::size_t rule_index(std::string_view id) const;
  /// Throws Error{UnknownTrajectory}.
  std::size_t trajectory_index(std::string_view id) const;
  /// Throws Error{UnknownRealization}.
  std::size_t env_index(std::string_view id) const;

  double violation(std::size_t rule, std::size_t trajectory, std::size_t env) const {
    return rules_[rule].violations[trajectory * env_trajectories_.size() + env];
  }

  /// Throws Error{UnknownRule} or Error{UnknownRealization}.
  double violation(std::string_view rule_id, const Realization& x) const;

  /// Every rule's value at (trajectory, env), in rule order.
  std::vector<double> profile(std::size_t trajectory, std::size_t env) const;

  /// Lower when x is strictly better than y.
  Verdict compare_realizations(const Realization& x, const Realization& y) const;

  friend bool operator==(const Rulebook& a, const Rulebook& b);

 private:
  std::pair<std::size_t, std::size_t> resolve(const Realization& x) const;

  std::vector<std::string> trajectories_;
  std::vector<std::string> env_trajectories_;
  std::vector<Rule> rules_;
  Preorder priority_;
  std::unordered_map<std::string, std::size_t> rule_index_;
  std::unordered_map<std::string, std::size_t> trajectory_index_;
  std::unordered_map<std::string, std::size_t> env_index_;
};

}  // namespace rulebook

#endif  // RULEBOOK_RULEBOOK_HPP
