#pragma once

// JSON encodings of fields, multisets, grids, hyperplane lists and vector
// multisets.
//
//   field     {"kind": "prime", "p": 7} | {"kind": "rational"}
//   multiset  [{"value": "0", "mult": 2}, {"value": "3", "mult": 1}]
//   grid      {"field": <field>, "sets": [<multiset>, ...]}
//   planes    [["c0", "c1", ..., "cn"], ...]
//   vectors   [{"vector": [0, 1], "mult": 1}, ...]
//
// Element values are decimal strings ("a/b" for rationals); plain JSON
// integers are accepted as well.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cnull/additive.hpp"
#include "cnull/covering.hpp"
#include "cnull/error.hpp"
#include "cnull/field.hpp"
#include "cnull/multiset.hpp"
#include "cnull/poly.hpp"

namespace cnull::io {

using json = nlohmann::ordered_json;

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error("invalid JSON in " + what + ": " + e.what(), e.byte);
  }
}

inline FieldSpec field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw input_error("field must be an object with a \"kind\" string");
  auto kind = j["kind"].get<std::string>();
  if (kind == "rational") return FieldSpec::rationals();
  if (kind == "prime") {
    if (!j.contains("p") || !j["p"].is_number_unsigned()) throw input_error("prime field needs a positive integer \"p\"");
    try {
      return FieldSpec::prime(j["p"].get<std::uint64_t>());
    } catch (const argument_error& e) {
      throw input_error(e.what());
    }
  }
  throw input_error("unknown field kind \"" + kind + "\"");
}

inline json field_to_json(const FieldSpec& spec) {
  if (spec.is_prime()) return json{{"kind", "prime"}, {"p", spec.modulus()}};
  return json{{"kind", "rational"}};
}

inline FieldElement element_from_json(const json& j, const FieldSpec& spec) {
  if (j.is_string()) return FieldElement::parse(spec, j.get<std::string>());
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return FieldElement(spec, mpz_class(std::to_string(j.get<std::uint64_t>())));
    return FieldElement(spec, static_cast<long long>(j.get<std::int64_t>()));
  }
  throw input_error("field element must be a decimal string or an integer, got " + j.dump());
}

/// Integers as JSON numbers when they fit, anything else as a string.
inline json element_to_json(const FieldElement& x) {
  if (x.spec().is_prime()) return x.residue();
  const auto& q = x.rational();
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return x.to_string();
}

inline json point_to_json(std::span<const FieldElement> s) {
  json a = json::array();
  for (const auto& x : s) a.push_back(element_to_json(x));
  return a;
}

inline Multiset multiset_from_json(const json& j, const FieldSpec& spec) {
  if (!j.is_array()) throw input_error("multiset must be an array of {\"value\", \"mult\"} objects");
  std::vector<std::pair<FieldElement, std::uint32_t>> items;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("value") || !e.contains("mult"))
      throw input_error("multiset entry needs \"value\" and \"mult\": " + e.dump());
    if (!e["mult"].is_number_unsigned() || e["mult"].get<std::uint64_t>() == 0 ||
        e["mult"].get<std::uint64_t>() > std::numeric_limits<std::uint32_t>::max())
      throw input_error("multiplicity must be a positive integer: " + e.dump());
    items.emplace_back(element_from_json(e["value"], spec), static_cast<std::uint32_t>(e["mult"].get<std::uint64_t>()));
  }
  try {
    return Multiset(spec, items);
  } catch (const argument_error& e) {
    throw input_error(e.what());
  }
}

inline json multiset_to_json(const Multiset& m) {
  json a = json::array();
  for (const auto& [x, k] : m.entries()) a.push_back(json{{"value", x.to_string()}, {"mult", k}});
  return a;
}

/// `fallback` supplies the field when the document has none; when both are
/// present they must agree.
inline MultisetGrid grid_from_json(const json& j, std::optional<FieldSpec> fallback = std::nullopt) {
  if (!j.is_object() || !j.contains("sets") || !j["sets"].is_array())
    throw input_error("grid must be an object with a \"sets\" array");
  std::optional<FieldSpec> spec;
  if (j.contains("field")) spec = field_from_json(j["field"]);
  if (spec && fallback && !(*spec == *fallback))
    throw input_error("grid field " + spec->to_string() + " conflicts with --field " + fallback->to_string());
  if (!spec) spec = fallback;
  if (!spec) throw input_error("grid has no \"field\" and no --field was given");
  if (j["sets"].empty()) throw input_error("grid needs at least one multiset");
  std::vector<Multiset> sets;
  for (const auto& s : j["sets"]) sets.push_back(multiset_from_json(s, *spec));
  return MultisetGrid(std::move(sets));
}

inline json grid_to_json(const MultisetGrid& g) {
  json sets = json::array();
  for (const auto& s : g.sets()) sets.push_back(multiset_to_json(s));
  return json{{"field", field_to_json(g.spec())}, {"sets", sets}};
}

inline std::vector<Hyperplane> hyperplanes_from_json(const json& j, const FieldSpec& spec) {
  if (!j.is_array()) throw input_error("hyperplanes must be an array of coefficient arrays [c0, c1, ..., cn]");
  std::vector<Hyperplane> out;
  for (const auto& h : j) {
    if (!h.is_array()) throw input_error("hyperplane must be a coefficient array: " + h.dump());
    std::vector<FieldElement> c;
    for (const auto& x : h) c.push_back(element_from_json(x, spec));
    try {
      out.emplace_back(std::move(c));
    } catch (const argument_error& e) {
      throw input_error(e.what());
    }
  }
  return out;
}

inline json hyperplane_to_json(const Hyperplane& h) {
  json a = json::array();
  for (const auto& c : h.coefficients()) a.push_back(c.to_string());
  return a;
}

inline VectorMultiset vector_multiset_from_json(const json& j, std::uint64_t p) {
  if (!j.is_array() || j.empty()) throw input_error("vector multiset must be a nonempty array");
  std::vector<std::pair<VectorMultiset::Vector, std::uint32_t>> items;
  std::optional<std::size_t> dim;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("vector") || !e["vector"].is_array() || !e.contains("mult") ||
        !e["mult"].is_number_unsigned() || e["mult"].get<std::uint64_t>() == 0)
      throw input_error("vector multiset entry needs \"vector\" array and positive \"mult\": " + e.dump());
    VectorMultiset::Vector v;
    for (const auto& x : e["vector"]) {
      if (!x.is_number_integer()) throw input_error("vector coordinates must be integers: " + e.dump());
      auto r = x.get<std::int64_t>() % static_cast<std::int64_t>(p);
      v.push_back(static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r));
    }
    if (dim && *dim != v.size()) throw input_error("vectors have different dimensions");
    dim = v.size();
    items.emplace_back(std::move(v), static_cast<std::uint32_t>(e["mult"].get<std::uint64_t>()));
  }
  try {
    return VectorMultiset(p, *dim, items);
  } catch (const argument_error& e) {
    throw input_error(e.what());
  }
}

inline json vector_multiset_to_json(const VectorMultiset& m) {
  json a = json::array();
  for (const auto& [v, k] : m.entries()) a.push_back(json{{"vector", v}, {"mult", k}});
  return a;
}

}  // namespace cnull::io
