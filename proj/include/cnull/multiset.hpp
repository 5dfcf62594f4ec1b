#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <initializer_list>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "cnull/error.hpp"
#include "cnull/field.hpp"
#include "cnull/poly.hpp"

namespace cnull {

/// Finite nonempty multiset of field elements with positive multiplicities,
/// iterated in canonical element order.
class Multiset {
 public:
  using Entries = std::map<FieldElement, std::uint32_t>;

  Multiset(const FieldSpec& spec, const std::vector<std::pair<FieldElement, std::uint32_t>>& items)
      : spec_(spec) {
    if (items.empty()) throw argument_error("multiset must be nonempty");
    for (const auto& [value, mult] : items) {
      if (!(value.spec() == spec)) throw argument_error("multiset element is from a different field");
      if (mult == 0) throw argument_error("multiplicity of " + value.to_string() + " must be positive");
      if (!entries_.emplace(value, mult).second)
        throw argument_error("duplicate multiset element " + value.to_string());
    }
  }

  /// Convenience for integer-valued elements.
  static Multiset of(const FieldSpec& spec, std::initializer_list<std::pair<long long, std::uint32_t>> items) {
    std::vector<std::pair<FieldElement, std::uint32_t>> v;
    for (const auto& [x, m] : items) v.emplace_back(FieldElement(spec, x), m);
    return Multiset(spec, v);
  }

  const FieldSpec& spec() const noexcept { return spec_; }
  const Entries& entries() const noexcept { return entries_; }

  /// d(S), the sum of multiplicities.
  std::uint64_t size() const {
    std::uint64_t d = 0;
    for (const auto& [s, m] : entries_) d += m;
    return d;
  }
  std::size_t distinct() const noexcept { return entries_.size(); }

  std::uint32_t multiplicity(const FieldElement& s) const {
    auto it = entries_.find(s);
    return it == entries_.end() ? 0 : it->second;
  }
  bool contains(const FieldElement& s) const { return entries_.count(s) != 0; }

  /// Same multiset with one copy of `s` removed.
  Multiset without_one(const FieldElement& s) const {
    Multiset r = *this;
    auto it = r.entries_.find(s);
    if (it == r.entries_.end()) throw argument_error("element " + s.to_string() + " is not in the multiset");
    if (--it->second == 0) r.entries_.erase(it);
    if (r.entries_.empty()) throw argument_error("removing " + s.to_string() + " would empty the multiset");
    return r;
  }

  /// Every element of *this appears in `outer` with exactly the same multiplicity.
  bool is_tight_subset_of(const Multiset& outer) const {
    for (const auto& [s, m] : entries_)
      if (outer.multiplicity(s) != m) return false;
    return true;
  }

  friend bool operator==(const Multiset& a, const Multiset& b) {
    return a.spec_ == b.spec_ && a.entries_ == b.entries_;
  }
  friend bool operator<(const Multiset& a, const Multiset& b) { return a.entries_ < b.entries_; }

 private:
  FieldSpec spec_;
  Entries entries_;
};

inline std::uint64_t multiset_size(const Multiset& s) { return s.size(); }

/// The product S_1 x ... x S_n of multisets over one field.
class MultisetGrid {
 public:
  explicit MultisetGrid(std::vector<Multiset> sets) : sets_(std::move(sets)) {
    if (sets_.empty()) throw argument_error("grid needs at least one multiset");
    for (const auto& s : sets_)
      if (!(s.spec() == sets_.front().spec())) throw argument_error("grid multisets use different fields");
  }

  std::size_t arity() const noexcept { return sets_.size(); }
  const FieldSpec& spec() const noexcept { return sets_.front().spec(); }
  const std::vector<Multiset>& sets() const noexcept { return sets_; }
  const Multiset& set(std::size_t i) const { return sets_.at(i); }

  /// (d_1, ..., d_n).
  Exponents sizes() const {
    Exponents d;
    for (const auto& s : sets_) d.push_back(static_cast<std::uint32_t>(s.size()));
    return d;
  }
  /// t = d - 1.
  Exponents top_exponent() const {
    Exponents t = sizes();
    for (auto& x : t) --x;
    return t;
  }

  std::uint64_t point_count() const {
    std::uint64_t c = 1;
    for (const auto& s : sets_) c *= s.distinct();
    return c;
  }

  /// All points of the support in lexicographic (canonical) order.
  std::vector<std::vector<FieldElement>> points() const {
    std::vector<std::vector<FieldElement>> out{{}};
    for (const auto& s : sets_) {
      std::vector<std::vector<FieldElement>> next;
      next.reserve(out.size() * s.distinct());
      for (const auto& prefix : out) {
        for (const auto& [x, m] : s.entries()) {
          next.push_back(prefix);
          next.back().push_back(x);
        }
      }
      out = std::move(next);
    }
    return out;
  }

  bool contains(std::span<const FieldElement> point) const {
    if (point.size() != arity()) return false;
    for (std::size_t i = 0; i < arity(); ++i)
      if (!sets_[i].contains(point[i])) return false;
    return true;
  }

  /// m(s) = (m_1(s_1), ..., m_n(s_n)).
  Exponents multiplicity(std::span<const FieldElement> point) const {
    if (point.size() != arity()) throw argument_error("point arity does not match grid");
    Exponents m;
    for (std::size_t i = 0; i < arity(); ++i) {
      auto mi = sets_[i].multiplicity(point[i]);
      if (mi == 0) throw argument_error("point is not in the grid");
      m.push_back(mi);
    }
    return m;
  }

  /// |m(s)|.
  std::uint64_t weight(std::span<const FieldElement> point) const { return total_degree(multiplicity(point)); }

  MultisetGrid with_set(std::size_t i, Multiset s) const {
    auto copy = sets_;
    copy.at(i) = std::move(s);
    return MultisetGrid(std::move(copy));
  }

  friend bool operator==(const MultisetGrid&, const MultisetGrid&) = default;
  friend bool operator<(const MultisetGrid& a, const MultisetGrid& b) { return a.sets_ < b.sets_; }

 private:
  std::vector<Multiset> sets_;
};

}  // namespace cnull
