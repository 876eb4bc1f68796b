#ifndef RULEBOOK_PROBSPACE_HPP
#define RULEBOOK_PROBSPACE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rulebook {

/// Finite scenario set with a probability per scenario. Every subset of the
/// scenarios is an event.
class FiniteProbSpace {
 public:
  FiniteProbSpace() = default;

  /// Throws Error{ValidationError} when the lists differ in length, a
  /// probability lies outside [0, 1], or the total misses 1 by more than the
  /// shared tolerance; Error{DuplicateElement} on a repeated scenario id.
  FiniteProbSpace(std::vector<std::string> scenarios, std::vector<double> probs);

  std::size_t size() const { return scenarios_.size(); }
  const std::vector<std::string>& scenarios() const { return scenarios_; }
  const std::vector<double>& probs() const { return probs_; }
  const std::string& id(std::size_t i) const { return scenarios_[i]; }
  double prob(std::size_t i) const { return probs_[i]; }

  /// Throws Error{UnknownScenario}.
  std::size_t index_of(std::string_view id) const;

  friend bool operator==(const FiniteProbSpace& a, const FiniteProbSpace& b) {
    return a.scenarios_ == b.scenarios_ && a.probs_ == b.probs_;
  }

 private:
  std::vector<std::string> scenarios_;
  std::vector<double> probs_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Nonnegative cost per scenario. Values are stored in the scenario order of
/// the space they were built for.
class RandomCost {
 public:
  RandomCost() = default;

  /// Throws Error{DomainMismatch} on a length mismatch and
  /// Error{ValidationError} on a negative or non-finite value.
  RandomCost(const FiniteProbSpace& space, std::vector<double> values);

  static RandomCost constant(const FiniteProbSpace& space, double value);

  const std::vector<std::string>& scenarios() const { return scenarios_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  /// Throws Error{DomainMismatch} unless defined on exactly the scenarios of
  /// `space`, in the same order.
  void require_on(const FiniteProbSpace& space) const;

 private:
  std::vector<std::string> scenarios_;
  std::vector<double> values_;
};

enum class Relation { Less, LessEqual, Greater, GreaterEqual, Equal };

/// One point of a discrete distribution.
struct Atom {
  double value = 0.0;
  double prob = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

double expectation(const FiniteProbSpace& space, const RandomCost& f);

/// Pr({w : f(w) R g(w)}). Comparisons use the shared tolerance, so
/// Greater and LessEqual are exact complements.
double probability(const FiniteProbSpace& space, const RandomCost& f, Relation rel,
                   const RandomCost& g);

/// Pr(f > g).
double exceedance_prob(const FiniteProbSpace& space, const RandomCost& f, const RandomCost& g);

/// Scenarios of positive probability where f(w) R g(w).
std::vector<std::size_t> scenarios_where(const FiniteProbSpace& space, const RandomCost& f,
                                         Relation rel, const RandomCost& g);

/// Pushforward of the space through f: ascending values, atoms within
/// tolerance merged, zero-probability scenarios dropped.
std::vector<Atom> distribution(const FiniteProbSpace& space, const RandomCost& f);

}  // namespace rulebook

#endif  // RULEBOOK_PROBSPACE_HPP
