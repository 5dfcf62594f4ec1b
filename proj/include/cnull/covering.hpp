#pragma once

// Hyperplane covers of a multiset grid that avoid the origin: verification,
// the extremal construction, and brute-force search for small covers.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cnull/error.hpp"
#include "cnull/field.hpp"
#include "cnull/multiset.hpp"
#include "cnull/poly.hpp"

namespace cnull {

/// Zero set of c_0 + c_1 x_1 + ... + c_n x_n with (c_1, ..., c_n) != 0.
class Hyperplane {
 public:
  explicit Hyperplane(std::vector<FieldElement> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2) throw argument_error("hyperplane needs a constant and at least one linear coefficient");
    bool linear = false;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      if (!(coeffs_[i].spec() == coeffs_[0].spec())) throw argument_error("hyperplane coefficients mix fields");
      linear = linear || !coeffs_[i].is_zero();
    }
    if (!linear) throw argument_error("hyperplane has all linear coefficients zero");
  }

  std::size_t arity() const noexcept { return coeffs_.size() - 1; }
  const FieldSpec& spec() const noexcept { return coeffs_.front().spec(); }
  /// c_0, c_1, ..., c_n.
  const std::vector<FieldElement>& coefficients() const noexcept { return coeffs_; }

  FieldElement eval(std::span<const FieldElement> point) const {
    if (point.size() != arity()) throw argument_error("point arity does not match hyperplane");
    FieldElement v = coeffs_[0];
    for (std::size_t i = 0; i < point.size(); ++i) v += coeffs_[i + 1] * point[i];
    return v;
  }
  bool contains(std::span<const FieldElement> point) const { return eval(point).is_zero(); }

  MultiPoly to_poly() const {
    MultiPoly p = MultiPoly::constant(arity(), coeffs_[0]);
    for (std::size_t i = 0; i < arity(); ++i) p += MultiPoly::variable(arity(), spec(), i).scaled(coeffs_[i + 1]);
    return p;
  }

  /// Same zero set: one coefficient vector is a nonzero multiple of the other.
  bool proportional_to(const Hyperplane& o) const {
    if (o.coeffs_.size() != coeffs_.size()) return false;
    std::optional<FieldElement> ratio;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero() != o.coeffs_[i].is_zero()) return false;
      if (coeffs_[i].is_zero()) continue;
      auto r = o.coeffs_[i] / coeffs_[i];
      if (ratio && !(*ratio == r)) return false;
      ratio = r;
    }
    return true;
  }

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;

 private:
  std::vector<FieldElement> coeffs_;
};

struct CoverReport {
  enum class Verdict { valid_cover, origin_violated, undercovered };

  struct PointCount {
    std::vector<FieldElement> point;
    std::uint64_t required;  // |m(s)| - n + 1
    std::uint64_t achieved;  // hyperplanes through s
  };

  std::vector<PointCount> counts;  // every nonzero grid point, in order
  bool origin_covered = false;
  std::uint64_t bound = 0;  // d(S_1) + ... + d(S_n) - n
  std::size_t k = 0;
  Verdict verdict = Verdict::valid_cover;
  std::vector<std::vector<FieldElement>> undercovered;
  /// Index pairs of listed hyperplanes with the same zero set. Informational.
  std::vector<std::pair<std::size_t, std::size_t>> proportional_duplicates;

  bool meets_bound() const { return k >= bound; }
};

inline std::string verdict_name(CoverReport::Verdict v) {
  switch (v) {
    case CoverReport::Verdict::valid_cover: return "valid_cover";
    case CoverReport::Verdict::origin_violated: return "origin_violated";
    case CoverReport::Verdict::undercovered: return "undercovered";
  }
  return "?";
}

/// 0 is in every S_i with multiplicity exactly 1.
inline void check_cover_hypothesis(const MultisetGrid& grid) {
  auto zero = FieldElement::zero(grid.spec());
  for (std::size_t i = 0; i < grid.arity(); ++i) {
    auto m = grid.set(i).multiplicity(zero);
    if (m != 1)
      throw precondition_error("cover hypothesis: 0 must lie in S_" + std::to_string(i + 1) +
                               " with multiplicity 1, found " + std::to_string(m));
  }
}

inline CoverReport cover_verify(std::span<const Hyperplane> planes, const MultisetGrid& grid) {
  check_cover_hypothesis(grid);
  const auto n = grid.arity();
  for (const auto& h : planes) {
    if (h.arity() != n) throw argument_error("hyperplane arity does not match grid");
    if (!(h.spec() == grid.spec())) throw argument_error("hyperplane field does not match grid");
  }
  CoverReport rep;
  rep.k = planes.size();
  rep.bound = total_degree(grid.sizes()) - n;
  std::vector<FieldElement> origin(n, FieldElement::zero(grid.spec()));
  for (const auto& h : planes) rep.origin_covered = rep.origin_covered || h.contains(origin);
  for (const auto& s : grid.points()) {
    if (s == origin) continue;
    CoverReport::PointCount pc{s, grid.weight(s) - n + 1, 0};
    for (const auto& h : planes)
      if (h.contains(s)) ++pc.achieved;
    if (pc.achieved < pc.required) rep.undercovered.push_back(s);
    rep.counts.push_back(std::move(pc));
  }
  for (std::size_t a = 0; a < planes.size(); ++a)
    for (std::size_t b = a + 1; b < planes.size(); ++b)
      if (planes[a].proportional_to(planes[b])) rep.proportional_duplicates.emplace_back(a, b);
  rep.verdict = rep.origin_covered         ? CoverReport::Verdict::origin_violated
                : !rep.undercovered.empty() ? CoverReport::Verdict::undercovered
                                            : CoverReport::Verdict::valid_cover;
  return rep;
}

/// x_i = s for every nonzero s in S_i, repeated m_i(s) times: a valid cover
/// with exactly d(S_1) + ... + d(S_n) - n hyperplanes.
inline std::vector<Hyperplane> cover_extremal(const MultisetGrid& grid) {
  check_cover_hypothesis(grid);
  const auto n = grid.arity();
  const auto& spec = grid.spec();
  std::vector<Hyperplane> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [s, m] : grid.set(i).entries()) {
      if (s.is_zero()) continue;
      std::vector<FieldElement> c(n + 1, FieldElement::zero(spec));
      c[0] = -s;
      c[i + 1] = FieldElement::one(spec);
      for (std::uint32_t k = 0; k < m; ++k) out.emplace_back(c);
    }
  }
  return out;
}

/// Every hyperplane of F_p^n missing the origin, normalized to c_0 = 1.
inline std::vector<Hyperplane> hyperplanes_avoiding_origin(const FieldSpec& spec, std::size_t arity) {
  if (!spec.is_prime()) throw argument_error("hyperplane enumeration needs a prime field");
  const auto p = spec.modulus();
  std::vector<Hyperplane> out;
  std::vector<std::uint64_t> c(arity, 0);
  while (true) {
    std::size_t i = arity;
    while (i > 0) {
      --i;
      if (++c[i] < p) break;
      c[i] = 0;
    }
    bool all_zero = true;
    for (auto x : c) all_zero = all_zero && x == 0;
    if (all_zero) break;
    std::vector<FieldElement> coeffs{FieldElement::one(spec)};
    for (auto x : c) coeffs.emplace_back(spec, static_cast<long long>(x));
    out.emplace_back(std::move(coeffs));
  }
  return out;
}

/// Brute force over multisets of at most `max_k` origin-avoiding hyperplanes
/// in F_p^n. Returns the first valid cover found, smallest size first.
inline std::optional<std::vector<Hyperplane>> search_cover(const MultisetGrid& grid, std::size_t max_k) {
  check_cover_hypothesis(grid);
  const auto all = hyperplanes_avoiding_origin(grid.spec(), grid.arity());
  for (std::size_t k = 0; k <= max_k; ++k) {
    std::vector<std::size_t> idx(k, 0);
    std::optional<std::vector<Hyperplane>> hit;
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) -> bool {
      if (pos == k) {
        std::vector<Hyperplane> planes;
        for (auto j : idx) planes.push_back(all[j]);
        if (cover_verify(planes, grid).verdict == CoverReport::Verdict::valid_cover) {
          hit = std::move(planes);
          return true;
        }
        return false;
      }
      for (std::size_t j = from; j < all.size(); ++j) {
        idx[pos] = j;
        if (rec(pos + 1, j)) return true;
      }
      return false;
    };
    if (rec(0, 0)) return hit;
  }
  return std::nullopt;
}

}  // namespace cnull
