#ifndef RULEBOOK_PREORDER_HPP
#define RULEBOOK_PREORDER_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rulebook {

/// Outcome of comparing two elements a, b of a preorder.
///
/// Higher: (a, b) is related but (b, a) is not. Lower is the mirror case.
/// Equal: both directed pairs are related. Incomparable: neither is.
///
/// For rule priorities "Higher" reads as "strictly more important". For
/// realizations and trajectories the same verdict reads as "strictly
/// worse", so Lower always denotes the preferred side.
enum class Verdict { Higher, Lower, Equal, Incomparable };

std::string_view to_string(Verdict verdict);

/// Mirror of a verdict when the operands are swapped.
Verdict flip(Verdict verdict);

/// Verdict from the two directed relation bits.
Verdict verdict_from(bool a_over_b, bool b_over_a);

using Edge = std::pair<std::string, std::string>;

/// Reflexive-transitive closure over a finite, ordered set of identifiers.
///
/// Immutable once built. Element order is the declaration order and is the
/// order of every list the class returns.
class Preorder {
 public:
  Preorder() = default;

  /// Closure of `edges`, each read as (higher, lower). Two opposite edges
  /// declare equal rank.
  ///
  /// Throws Error{DuplicateElement} on a repeated identifier and
  /// Error{UnknownElement} when an edge names an undeclared one.
  static Preorder build(std::vector<std::string> elements, std::span<const Edge> edges);

  const std::vector<std::string>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  bool contains(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;

  bool relates(std::size_t a, std::size_t b) const { return matrix_[a * size() + b] != 0; }
  bool relates(std::string_view a, std::string_view b) const;

  /// Strict part of the relation: (a, b) related and (b, a) not.
  bool strictly_above(std::size_t a, std::size_t b) const { return relates(a, b) && !relates(b, a); }

  Verdict compare(std::size_t a, std::size_t b) const;
  Verdict compare(std::string_view a, std::string_view b) const;

  /// Members of `subset` with nothing in `subset` strictly below them.
  /// Output follows the order of `subset`.
  std::vector<std::string> minimal_elements(std::span<const std::string> subset) const;

  /// Every related pair, in row-major declaration order.
  std::vector<Edge> relation_pairs() const;

  friend bool operator==(const Preorder&, const Preorder&) = default;

 private:
  std::vector<std::string> elements_;
  std::vector<char> matrix_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace rulebook

#endif  // RULEBOOK_PREORDER_HPP
