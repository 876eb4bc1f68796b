#include "rulebook/rulebook.hpp"

#include <cmath>

#include "rulebook/error.hpp"
#include "rulebook/tolerance.hpp"

namespace rulebook {

namespace {

std::unordered_map<std::string, std::size_t> index_ids(const std::vector<std::string>& ids,
                                                       std::string_view what) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!index.emplace(ids[i], i).second) {
      throw Error(ErrorKind::DuplicateElement,
                  "duplicate " + std::string(what) + " '" + ids[i] + "'");
    }
  }
  return index;
}

std::size_t lookup(const std::unordered_map<std::string, std::size_t>& index,
                   std::string_view id, ErrorKind kind, std::string_view what) {
  auto it = index.find(std::string(id));
  if (it == index.end()) {
    throw Error(kind, "unknown " + std::string(what) + " '" + std::string(id) + "'");
  }
  return it->second;
}

}  // namespace

bool at_least_as_good(const Preorder& priority, std::span<const double> x,
                      std::span<const double> y) {
  const std::size_t n = priority.size();
  for (std::size_t r = 0; r < n; ++r) {
    if (!definitely_greater(x[r], y[r])) continue;
    bool compensated = false;
    for (std::size_t s = 0; s < n && !compensated; ++s) {
      compensated = priority.strictly_above(s, r) && definitely_less(x[s], y[s]);
    }
    if (!compensated) return false;
  }
  return true;
}

Verdict compare_profiles(const Preorder& priority, std::span<const double> x,
                         std::span<const double> y) {
  // "x at least as good as y" is the x-below-y direction.
  return verdict_from(at_least_as_good(priority, y, x), at_least_as_good(priority, x, y));
}

Rulebook::Rulebook(std::vector<std::string> trajectories,
                   std::vector<std::string> env_trajectories, std::vector<Rule> rules,
                   Preorder priority)
    : trajectories_(std::move(trajectories)),
      env_trajectories_(std::move(env_trajectories)),
      rules_(std::move(rules)),
      priority_(std::move(priority)) {
  trajectory_index_ = index_ids(trajectories_, "trajectory");
  env_index_ = index_ids(env_trajectories_, "environment trajectory");

  std::vector<std::string> rule_ids;
  for (const Rule& r : rules_) rule_ids.push_back(r.id);
  rule_index_ = index_ids(rule_ids, "rule");
  if (priority_.elements() != rule_ids) {
    throw Error(ErrorKind::ValidationError,
                "priority preorder elements must be exactly the rule ids, in rule order");
  }

  const std::size_t cells = trajectories_.size() * env_trajectories_.size();
  for (const Rule& r : rules_) {
    if (r.violations.size() != cells) {
      throw Error(ErrorKind::ValidationError, "rule '" + r.id + "' has " +
                                                  std::to_string(r.violations.size()) +
                                                  " violation cells, expected " +
                                                  std::to_string(cells));
    }
    for (std::size_t c = 0; c < cells; ++c) {
      const double v = r.violations[c];
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorKind::ValidationError,
                    "rule '" + r.id + "' has a negative or non-finite violation at (" +
                        trajectories_[c / env_trajectories_.size()] + ", " +
                        env_trajectories_[c % env_trajectories_.size()] + ")");
      }
    }
  }
}

std::size_t Rulebook::rule_index(std::string_view id) const {
  return lookup(rule_index_, id, ErrorKind::UnknownRule, "rule");
}

std::size_t Rulebook::trajectory_index(std::string_view id) const {
  return lookup(trajectory_index_, id, ErrorKind::UnknownTrajectory, "trajectory");
}

std::size_t Rulebook::env_index(std::string_view id) const {
  return lookup(env_index_, id, ErrorKind::UnknownRealization, "environment trajectory");
}

std::pair<std::size_t, std::size_t> Rulebook::resolve(const Realization& x) const {
  return {lookup(trajectory_index_, x.trajectory, ErrorKind::UnknownRealization, "trajectory"),
          env_index(x.env_trajectory)};
}

double Rulebook::violation(std::string_view rule_id, const Realization& x) const {
  const std::size_t r = rule_index(rule_id);
  const auto [t, e] = resolve(x);
  return violation(r, t, e);
}

std::vector<double> Rulebook::profile(std::size_t trajectory, std::size_t env) const {
  std::vector<double> out(rules_.size());
  for (std::size_t r = 0; r < rules_.size(); ++r) out[r] = violation(r, trajectory, env);
  return out;
}

Verdict Rulebook::compare_realizations(const Realization& x, const Realization& y) const {
  const auto [tx, ex] = resolve(x);
  const auto [ty, ey] = resolve(y);
  return compare_profiles(priority_, profile(tx, ex), profile(ty, ey));
}

bool operator==(const Rulebook& a, const Rulebook& b) {
  if (a.trajectories_ != b.trajectories_ || a.env_trajectories_ != b.env_trajectories_ ||
      !(a.priority_ == b.priority_) || a.rules_.size() != b.rules_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.rules_.size(); ++i) {
    if (a.rules_[i].id != b.rules_[i].id || a.rules_[i].violations != b.rules_[i].violations) {
      return false;
    }
  }
  return true;
}

}  // namespace rulebook
