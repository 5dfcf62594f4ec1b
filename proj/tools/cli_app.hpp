#pragma once

// Command-line frontend. `run` is the whole program minus process plumbing so
// tests can drive it in-process.
//
// Exit codes: 0 computed (and any bound holds), 1 bound or precondition
// violated, 2 malformed input.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cnull/cnull.hpp"

namespace cnull::cli {

using io::json;

inline constexpr const char* schema_version = "cnull-cli/1";
inline constexpr unsigned parallel_workers = 4;

struct Options {
  std::string poly;
  std::string grid;
  std::string grid_inline;
  std::string field;
  std::string t;
  std::string method;
  std::string a;
  std::string b;
  std::string g = "0";
  std::string hyperplanes;
  std::string sub;
  std::uint64_t k = 0;
  std::uint64_t p = 0;
  std::uint64_t r = 0;
  std::uint64_t s = 0;
  bool json = false;
  bool parallel = false;
};

/// What a subcommand computed, plus a diagnostic when a proven bound failed.
struct Outcome {
  json result = json::object();
  std::optional<std::string> violation;
};

namespace detail {

inline std::string trim(std::string_view text) {
  auto b = text.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(b, e - b + 1));
}

/// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
inline json load_json(const std::string& arg, const std::string& what) {
  auto text = trim(arg);
  if (!text.empty() && (text.front() == '{' || text.front() == '[')) return io::parse_json(text, what);
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw input_error("cannot read " + what + " file '" + arg + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return io::parse_json(buf.str(), what + " file '" + arg + "'");
}

inline std::optional<FieldSpec> field_flag(const Options& o) {
  if (o.field.empty()) return std::nullopt;
  try {
    return FieldSpec::parse(o.field);
  } catch (const argument_error& e) {
    throw input_error(std::string("--field: ") + e.what());
  }
}

inline FieldSpec require_field(const Options& o) {
  auto spec = field_flag(o);
  if (!spec) throw input_error("--field is required");
  return *spec;
}

inline MultisetGrid load_grid(const Options& o) {
  if (!o.grid.empty() && !o.grid_inline.empty()) throw input_error("give only one of --grid and --grid-inline");
  if (!o.grid_inline.empty()) return io::grid_from_json(io::parse_json(o.grid_inline, "--grid-inline"), field_flag(o));
  if (o.grid.empty()) throw input_error("--grid or --grid-inline is required");
  return io::grid_from_json(load_json(o.grid, "--grid"), field_flag(o));
}

inline MultiPoly load_poly(const std::string& flag, const std::string& text, const MultisetGrid& grid) {
  try {
    return parse_poly(text, grid.arity(), grid.spec());
  } catch (const input_error& e) {
    throw input_error(flag + ": " + e.what());
  }
}

inline std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) parts.push_back(trim(cur));
  if (!text.empty() && text.back() == ',') parts.emplace_back();
  return parts;
}

inline Exponents parse_exponents(const std::string& text, std::size_t arity) {
  auto parts = split_commas(text);
  if (parts.size() != arity)
    throw input_error("--t needs " + std::to_string(arity) + " comma-separated entries, got '" + text + "'");
  Exponents t;
  for (const auto& p : parts) {
    if (p.empty() || p.size() > 9 || !std::all_of(p.begin(), p.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw input_error("--t entry '" + p + "' is not a nonnegative integer");
    t.push_back(static_cast<std::uint32_t>(std::stoul(p)));
  }
  return t;
}

inline json exponents_to_json(const Exponents& u) { return json(u); }

inline unsigned workers(const Options& o) { return o.parallel ? parallel_workers : 1; }

}  // namespace detail

// Subcommand handlers.

inline Outcome cmd_reduce(const Options& o) {
  auto grid = detail::load_grid(o);
  auto f = detail::load_poly("--poly", o.poly, grid);
  auto red = reduce(f, grid);
  auto gens = generators(grid);
  MultiPoly check = red.remainder;
  for (std::size_t i = 0; i < gens.size(); ++i) check += red.cofactors[i] * gens[i];
  if (!(check == f)) throw invariant_violation("f != r + sum h_i g_i");
  Outcome out;
  out.result["r"] = to_string(red.remainder);
  for (std::size_t i = 0; i < red.cofactors.size(); ++i)
    out.result["h" + std::to_string(i + 1)] = to_string(red.cofactors[i]);
  return out;
}

inline Outcome cmd_member(const Options& o) {
  auto grid = detail::load_grid(o);
  auto f = detail::load_poly("--poly", o.poly, grid);
  auto method = o.method.empty() ? std::string("remainder") : o.method;
  Outcome out;
  out.result["method"] = method;
  if (method == "remainder" || method == "pointwise") {
    out.result["member"] =
        grid_member(f, grid, method == "remainder" ? MembershipMethod::remainder : MembershipMethod::pointwise);
  } else {
    bool by_rem = grid_member(f, grid, MembershipMethod::remainder);
    bool by_pts = grid_member(f, grid, MembershipMethod::pointwise);
    if (by_rem != by_pts) throw invariant_violation("remainder and pointwise membership disagree");
    out.result["member"] = by_rem;
  }
  return out;
}

inline Outcome cmd_witness(const Options& o) {
  auto grid = detail::load_grid(o);
  auto f = detail::load_poly("--poly", o.poly, grid);
  auto t = detail::parse_exponents(o.t, grid.arity());
  auto method = o.method == "divided-difference" ? WitnessMethod::divided_difference : WitnessMethod::exhaustive;
  auto w = nonvanish_witness(f, grid, t, method, detail::workers(o));
  Outcome out;
  out.result["point"] = io::point_to_json(w.point);
  out.result["exponent"] = detail::exponents_to_json(w.exponent);
  out.result["value"] = w.value.to_string();
  return out;
}

inline Outcome cmd_punctured(const Options& o) {
  auto grid = detail::load_grid(o);
  auto f = detail::load_poly("--poly", o.poly, grid);
  if (o.sub.empty()) throw input_error("--sub is required");
  auto sub = io::grid_from_json(detail::load_json(o.sub, "--sub"), grid.spec());
  auto res = punctured_decompose(f, grid, sub);
  Outcome out;
  out.result["r"] = to_string(res.remainder);
  out.result["h"] = to_string(res.quotient);
  out.result["divisor"] = to_string(res.divisor);
  out.result["degree"] = f.total_degree().value();
  out.result["degree_bound"] = res.degree_bound;
  return out;
}

inline Outcome cmd_divdiff(const Options& o) {
  auto grid = detail::load_grid(o);
  auto f = detail::load_poly("--poly", o.poly, grid);
  auto method = o.method.empty() ? std::string("rec") : o.method;
  Outcome out;
  out.result["method"] = method;
  if (method == "def") {
    out.result["value"] = bracket_def(f, grid).to_string();
  } else if (method == "rec") {
    out.result["value"] = bracket_rec(f, grid).to_string();
  } else {
    auto def = bracket_def(f, grid);
    if (!(bracket_rec(f, grid) == def)) throw invariant_violation("bracket_def and bracket_rec disagree");
    out.result["value"] = def.to_string();
  }
  return out;
}

inline Outcome cmd_alpha(const Options& o) {
  auto grid = detail::load_grid(o);
  auto table = alpha_table(grid);
  json entries = json::array();
  for (const auto& [key, c] : table.coefficients())
    entries.push_back(json{{"point", io::point_to_json(key.first)},
                           {"exponent", detail::exponents_to_json(key.second)},
                           {"value", c.to_string()}});
  Outcome out;
  out.result["size"] = table.size();
  out.result["entries"] = std::move(entries);
  return out;
}

inline Outcome cmd_check_relation(const Options& o) {
  auto grid = detail::load_grid(o);
  auto f = detail::load_poly("--poly", o.poly, grid);
  Outcome out;
  bool holds = check_linear_relation(f, grid);
  out.result["holds"] = holds;
  if (!holds) out.violation = "linear relation f_t = sum alpha f_u(s) failed";
  return out;
}

inline Outcome cmd_cover_check(const Options& o) {
  auto grid = detail::load_grid(o);
  if (o.hyperplanes.empty()) throw input_error("--hyperplanes is required");
  auto planes = io::hyperplanes_from_json(detail::load_json(o.hyperplanes, "--hyperplanes"), grid.spec());
  for (const auto& h : planes)
    if (h.coefficients().size() != grid.arity() + 1)
      throw input_error("each hyperplane needs " + std::to_string(grid.arity() + 1) + " coefficients");
  auto rep = cover_verify(planes, grid);
  Outcome out;
  out.result["verdict"] = verdict_name(rep.verdict);
  out.result["k"] = rep.k;
  out.result["bound"] = rep.bound;
  out.result["meets_bound"] = rep.meets_bound();
  json under = json::array();
  for (const auto& s : rep.undercovered) under.push_back(io::point_to_json(s));
  out.result["undercovered"] = std::move(under);
  json dups = json::array();
  for (const auto& [i, j] : rep.proportional_duplicates) dups.push_back(json::array({i, j}));
  out.result["proportional_duplicates"] = std::move(dups);
  if (rep.verdict == CoverReport::Verdict::valid_cover && !rep.meets_bound())
    out.violation = "valid cover with " + std::to_string(rep.k) + " hyperplanes, below the bound " +
                    std::to_string(rep.bound);
  return out;
}

inline Outcome cmd_cover_extremal(const Options& o) {
  auto grid = detail::load_grid(o);
  auto planes = cover_extremal(grid);
  auto rep = cover_verify(planes, grid);
  if (rep.verdict != CoverReport::Verdict::valid_cover) throw invariant_violation("extremal cover does not verify");
  Outcome out;
  out.result["k"] = planes.size();
  out.result["bound"] = rep.bound;
  json hs = json::array();
  for (const auto& h : planes) hs.push_back(io::hyperplane_to_json(h));
  out.result["hyperplanes"] = std::move(hs);
  return out;
}

inline std::pair<Multiset, Multiset> load_pair(const Options& o) {
  auto spec = detail::require_field(o);
  if (o.a.empty() || o.b.empty()) throw input_error("--a and --b are required");
  return {io::multiset_from_json(detail::load_json(o.a, "--a"), spec),
          io::multiset_from_json(detail::load_json(o.b, "--b"), spec)};
}

inline Outcome cmd_sumset(const Options& o) {
  auto [a, b] = load_pair(o);
  auto sum = sumset_multiset(a, b);
  Outcome out;
  out.result["size"] = sum.size();
  out.result["sumset"] = io::multiset_to_json(sum);
  return out;
}

inline Outcome cmd_cd_check(const Options& o) {
  auto [a, b] = load_pair(o);
  auto rep = cd_check(a, b);
  Outcome out;
  out.result["lhs"] = rep.lhs;
  out.result["rhs"] = rep.rhs;
  out.result["holds"] = rep.holds;
  out.result["deg_lhs"] = rep.deg_lhs;
  out.result["deg_rhs"] = rep.deg_rhs;
  out.result["deg_holds"] = rep.deg_holds;
  out.result["equality"] = rep.equality();
  if (!rep.holds) out.violation = "d(A+B) < min(p, d(A) + d(B) - 1)";
  else if (!rep.deg_holds) out.violation = "deg(A+B) < deg A + deg B";
  return out;
}

inline Outcome cmd_valueset(const Options& o) {
  auto grid = detail::load_grid(o);
  auto f = detail::load_poly("--poly", o.poly, grid);
  auto values = value_set_multiset(f, grid, detail::workers(o));
  Outcome out;
  out.result["size"] = values.size();
  out.result["values"] = io::multiset_to_json(values);
  return out;
}

inline Outcome cmd_sun_check(const Options& o) {
  auto grid = detail::load_grid(o);
  auto parts = detail::split_commas(o.a);
  if (parts.size() != grid.arity())
    throw input_error("--a needs " + std::to_string(grid.arity()) + " comma-separated coefficients");
  std::vector<FieldElement> a;
  for (const auto& p : parts) {
    try {
      a.push_back(FieldElement::parse(grid.spec(), p));
    } catch (const argument_error& e) {
      throw input_error(std::string("--a: ") + e.what());
    }
  }
  if (o.k == 0 || o.k > 1000000) throw precondition_error("k must be a positive integer");
  auto g = detail::load_poly("--g", o.g, grid);
  auto rep = sun_check(a, static_cast<std::uint32_t>(o.k), g, grid, detail::workers(o));
  Outcome out;
  out.result["polynomial"] = to_string(rep.polynomial);
  out.result["lhs"] = rep.lhs;
  out.result["rhs"] = rep.rhs;
  out.result["holds"] = rep.holds;
  if (!rep.holds) out.violation = "value set smaller than the bound";
  return out;
}

inline Outcome cmd_hopf_stiefel(const Options& o) {
  Outcome out;
  out.result["value"] = hopf_stiefel(o.p, o.r, o.s);
  return out;
}

inline Outcome cmd_ek_check(const Options& o) {
  if (o.p == 0) throw input_error("--p is required");
  if (!is_prime_u64(o.p)) throw input_error("--p " + std::to_string(o.p) + " is not prime");
  if (o.a.empty() || o.b.empty()) throw input_error("--a and --b are required");
  auto a = io::vector_multiset_from_json(detail::load_json(o.a, "--a"), o.p);
  auto b = io::vector_multiset_from_json(detail::load_json(o.b, "--b"), o.p);
  auto rep = ek_check(a, b);
  Outcome out;
  out.result["lhs"] = rep.lhs;
  out.result["rhs"] = rep.rhs;
  out.result["holds"] = rep.holds;
  out.result["sumset"] = io::vector_multiset_to_json(sumset_multiset(a, b));
  if (!rep.holds) out.violation = "d(A+B) < beta_p(d(A), d(B))";
  return out;
}

// Rendering.

/// Aligned "key : value" lines. Arrays of objects get one line per element.
inline void render_text(const json& result, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& [key, value] : result.items()) {
    if (value.is_array() && !value.empty() && value.front().is_object()) {
      for (std::size_t i = 0; i < value.size(); ++i)
        rows.emplace_back(key + "[" + std::to_string(i) + "]", value[i].dump());
    } else {
      rows.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) out << k << std::string(width - k.size(), ' ') << " : " << v << '\n';
}

inline void render(const std::string& command, const Outcome& o, bool as_json, std::ostream& out) {
  if (as_json) {
    json doc = json::object();
    doc["schema"] = schema_version;
    doc["command"] = command;
    for (const auto& [key, value] : o.result.items()) doc[key] = value;
    out << doc.dump(2) << '\n';
  } else {
    render_text(o.result, out);
  }
}

inline std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact multiset Combinatorial Nullstellensatz toolkit", "cnull"};
  app.require_subcommand(1);
  Options o;

  using Handler = std::function<Outcome(const Options&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto add = [&](const std::string& name, const std::string& help, Handler h) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_flag("--json", o.json, "Emit a schema-versioned JSON object");
    sub->add_flag("--parallel", o.parallel, "Use several worker threads where supported");
    commands.emplace_back(sub, std::move(h));
    return sub;
  };
  auto grid_opts = [&](CLI::App* sub) {
    sub->add_option("--grid", o.grid, "Grid JSON file, or inline JSON");
    sub->add_option("--grid-inline", o.grid_inline, "Inline grid JSON");
    sub->add_option("--field", o.field, "prime:<p> | rational");
  };
  auto poly_opt = [&](CLI::App* sub) { sub->add_option("--poly", o.poly, "Polynomial in x1..xn")->required(); };

  auto* c = add("reduce", "Remainder and cofactors modulo the grid generators", cmd_reduce);
  grid_opts(c);
  poly_opt(c);

  c = add("member", "Membership in the grid vanishing ideal", cmd_member);
  grid_opts(c);
  poly_opt(c);
  c->add_option("--method", o.method, "remainder | pointwise | both")
      ->check(CLI::IsMember({"remainder", "pointwise", "both"}));

  c = add("witness", "Nonvanishing witness (s, u) for f", cmd_witness);
  grid_opts(c);
  poly_opt(c);
  c->add_option("--t", o.t, "Exponent of the top monomial, e.g. 1,1")->required();
  c->add_option("--method", o.method, "exhaustive | divided-difference")
      ->check(CLI::IsMember({"exhaustive", "divided-difference"}));

  c = add("punctured", "Decomposition of f vanishing on S outside D", cmd_punctured);
  grid_opts(c);
  poly_opt(c);
  c->add_option("--sub", o.sub, "Grid D as JSON file or inline JSON")->required();

  c = add("divdiff", "Generalized divided difference f[S]", cmd_divdiff);
  grid_opts(c);
  poly_opt(c);
  c->add_option("--method", o.method, "def | rec | both")->check(CLI::IsMember({"def", "rec", "both"}));

  c = add("alpha", "Coefficients of the linear relation", cmd_alpha);
  grid_opts(c);

  c = add("check-relation", "Check f_t = sum alpha f_u(s)", cmd_check_relation);
  grid_opts(c);
  poly_opt(c);

  c = add("cover-check", "Verify a multiset hyperplane cover", cmd_cover_check);
  grid_opts(c);
  c->add_option("--hyperplanes", o.hyperplanes, "Coefficient arrays [c0, c1, ..., cn]")->required();

  c = add("cover-extremal", "Extremal cover with sum d_i - n hyperplanes", cmd_cover_extremal);
  grid_opts(c);

  c = add("sumset", "Sumset multiset A + B", cmd_sumset);
  c->add_option("--a", o.a, "Multiset JSON")->required();
  c->add_option("--b", o.b, "Multiset JSON")->required();
  c->add_option("--field", o.field, "prime:<p> | rational")->required();

  c = add("cd-check", "Multiset Cauchy-Davenport check", cmd_cd_check);
  c->add_option("--a", o.a, "Multiset JSON")->required();
  c->add_option("--b", o.b, "Multiset JSON")->required();
  c->add_option("--field", o.field, "prime:<p>")->required();

  c = add("valueset", "Value-set multiset f(S_1, ..., S_n)", cmd_valueset);
  grid_opts(c);
  poly_opt(c);

  c = add("sun-check", "Value-set bound for a_1 x_1^k + ... + a_n x_n^k + g", cmd_sun_check);
  grid_opts(c);
  c->add_option("--a", o.a, "Coefficients a_1,...,a_n")->required();
  c->add_option("--k", o.k, "Exponent k")->required();
  c->add_option("--g", o.g, "Lower-degree part g (default 0)");

  c = add("hopf-stiefel", "Hopf-Stiefel number beta_p(r, s)", cmd_hopf_stiefel);
  c->add_option("--p", o.p, "Prime p")->required();
  c->add_option("--r", o.r, "r >= 1")->required();
  c->add_option("--s", o.s, "s >= 1")->required();

  c = add("ek-check", "Eliahou-Kervaire bound over F_p^dim", cmd_ek_check);
  c->add_option("--p", o.p, "Prime p")->required();
  c->add_option("--a", o.a, "Vector multiset JSON")->required();
  c->add_option("--b", o.b, "Vector multiset JSON")->required();

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("cnull");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return 2;
  }

  for (const auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    try {
      auto outcome = handler(o);
      render(sub->get_name(), outcome, o.json, out);
      if (outcome.violation) {
        err << "error: bound violated: " << *outcome.violation << '\n';
        return 1;
      }
      return 0;
    } catch (const input_error& e) {
      err << "error: " << one_line(e.what()) << '\n';
      return 2;
    } catch (const argument_error& e) {
      err << "error: " << one_line(e.what()) << '\n';
      return 2;
    } catch (const precondition_error& e) {
      err << "error: precondition violated: " << one_line(e.what()) << '\n';
      return 1;
    } catch (const invariant_violation& e) {
      err << "error: invariant violated: " << one_line(e.what()) << '\n';
      return 1;
    }
  }
  return 2;
}

}  // namespace cnull::cli
