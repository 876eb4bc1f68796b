#include "rulebook/preorder.hpp"

#include "rulebook/error.hpp"

namespace rulebook {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Higher: return "higher";
    case Verdict::Lower: return "lower";
    case Verdict::Equal: return "equal";
    case Verdict::Incomparable: return "incomparable";
  }
  return "?";
}

Verdict flip(Verdict verdict) {
  switch (verdict) {
    case Verdict::Higher: return Verdict::Lower;
    case Verdict::Lower: return Verdict::Higher;
    default: return verdict;
  }
}

Verdict verdict_from(bool a_over_b, bool b_over_a) {
  if (a_over_b && b_over_a) return Verdict::Equal;
  if (a_over_b) return Verdict::Higher;
  if (b_over_a) return Verdict::Lower;
  return Verdict::Incomparable;
}

Preorder Preorder::build(std::vector<std::string> elements, std::span<const Edge> edges) {
  Preorder p;
  p.elements_ = std::move(elements);
  const std::size_t n = p.elements_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.index_.emplace(p.elements_[i], i).second) {
      throw Error(ErrorKind::DuplicateElement, "duplicate element '" + p.elements_[i] + "'");
    }
  }

  p.matrix_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) p.matrix_[i * n + i] = 1;
  for (const auto& [hi, lo] : edges) {
    p.matrix_[p.index_of(hi) * n + p.index_of(lo)] = 1;
  }

  // Warshall
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!p.matrix_[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (p.matrix_[k * n + j]) p.matrix_[i * n + j] = 1;
      }
    }
  }
  return p;
}

bool Preorder::contains(std::string_view id) const {
  return index_.find(std::string(id)) != index_.end();
}

std::size_t Preorder::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) {
    throw Error(ErrorKind::UnknownElement, "unknown element '" + std::string(id) + "'");
  }
  return it->second;
}

bool Preorder::relates(std::string_view a, std::string_view b) const {
  return relates(index_of(a), index_of(b));
}

Verdict Preorder::compare(std::size_t a, std::size_t b) const {
  return verdict_from(relates(a, b), relates(b, a));
}

Verdict Preorder::compare(std::string_view a, std::string_view b) const {
  return compare(index_of(a), index_of(b));
}

std::vector<std::string> Preorder::minimal_elements(std::span<const std::string> subset) const {
  std::vector<std::size_t> idx;
  idx.reserve(subset.size());
  for (const auto& id : subset) idx.push_back(index_of(id));

  std::vector<std::string> out;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < idx.size() && !dominated; ++b) {
      dominated = strictly_above(idx[a], idx[b]);
    }
    if (!dominated) out.push_back(subset[a]);
  }
  return out;
}

std::vector<Edge> Preorder::relation_pairs() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (relates(i, j)) out.emplace_back(elements_[i], elements_[j]);
    }
  }
  return out;
}

}  // namespace rulebook
