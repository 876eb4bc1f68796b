#include "rulebook/probspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rulebook/error.hpp"
#include "rulebook/tolerance.hpp"

namespace rulebook {

namespace {

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

bool holds(double a, Relation rel, double b) {
  switch (rel) {
    case Relation::Less: return definitely_less(a, b);
    case Relation::LessEqual: return !definitely_greater(a, b);
    case Relation::Greater: return definitely_greater(a, b);
    case Relation::GreaterEqual: return !definitely_less(a, b);
    case Relation::Equal: return approx_equal(a, b);
  }
  return false;
}

}  // namespace

FiniteProbSpace::FiniteProbSpace(std::vector<std::string> scenarios, std::vector<double> probs)
    : scenarios_(std::move(scenarios)), probs_(std::move(probs)) {
  if (scenarios_.size() != probs_.size()) {
    throw Error(ErrorKind::ValidationError, "scenario and probability lists differ in length");
  }
  if (scenarios_.empty()) {
    throw Error(ErrorKind::ValidationError, "probability space has no scenarios");
  }
  for (std::size_t i = 0; i < scenarios_.size(); ++i) {
    if (!index_.emplace(scenarios_[i], i).second) {
      throw Error(ErrorKind::DuplicateElement, "duplicate scenario '" + scenarios_[i] + "'");
    }
    const double p = probs_[i];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw Error(ErrorKind::ValidationError, "probability of scenario '" + scenarios_[i] +
                                                  "' is " + format_number(p) +
                                                  ", outside [0, 1]");
    }
  }
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (!approx_equal(total, 1.0)) {
    throw Error(ErrorKind::ValidationError, "probabilities sum to " + format_number(total));
  }
}

std::size_t FiniteProbSpace::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) {
    throw Error(ErrorKind::UnknownScenario, "unknown scenario '" + std::string(id) + "'");
  }
  return it->second;
}

RandomCost::RandomCost(const FiniteProbSpace& space, std::vector<double> values)
    : scenarios_(space.scenarios()), values_(std::move(values)) {
  if (values_.size() != scenarios_.size()) {
    throw Error(ErrorKind::DomainMismatch, "random cost has " + std::to_string(values_.size()) +
                                               " values for " +
                                               std::to_string(scenarios_.size()) + " scenarios");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      throw Error(ErrorKind::ValidationError, "cost at scenario '" + scenarios_[i] +
                                                  "' must be a nonnegative number");
    }
  }
}

RandomCost RandomCost::constant(const FiniteProbSpace& space, double value) {
  return RandomCost(space, std::vector<double>(space.size(), value));
}

void RandomCost::require_on(const FiniteProbSpace& space) const {
  if (scenarios_ != space.scenarios()) {
    throw Error(ErrorKind::DomainMismatch, "random cost is defined on a different scenario set");
  }
}

double expectation(const FiniteProbSpace& space, const RandomCost& f) {
  f.require_on(space);
  double sum = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) sum += space.prob(i) * f[i];
  return sum;
}

std::vector<std::size_t> scenarios_where(const FiniteProbSpace& space, const RandomCost& f,
                                         Relation rel, const RandomCost& g) {
  f.require_on(space);
  g.require_on(space);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (space.prob(i) > 0.0 && holds(f[i], rel, g[i])) out.push_back(i);
  }
  return out;
}

double probability(const FiniteProbSpace& space, const RandomCost& f, Relation rel,
                   const RandomCost& g) {
  double p = 0.0;
  for (std::size_t i : scenarios_where(space, f, rel, g)) p += space.prob(i);
  return p;
}

double exceedance_prob(const FiniteProbSpace& space, const RandomCost& f, const RandomCost& g) {
  return probability(space, f, Relation::Greater, g);
}

std::vector<Atom> distribution(const FiniteProbSpace& space, const RandomCost& f) {
  f.require_on(space);
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (space.prob(i) > 0.0) atoms.push_back({f[i], space.prob(i)});
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });

  // Each merged atom keeps the smallest value of its group.
  std::vector<Atom> merged;
  for (const Atom& a : atoms) {
    if (!merged.empty() && approx_equal(a.value, merged.back().value)) {
      merged.back().prob += a.prob;
    } else {
      merged.push_back(a);
    }
  }
  return merged;
}

}  // namespace rulebook
