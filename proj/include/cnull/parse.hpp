#pragma once

// Text form of polynomials.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | 'x' index | '(' expr ')'
//
// Variables are x1..xn. '^' binds tightest, so -x1^2 is -(x1^2). Implicit
// multiplication is rejected. '/' only accepts a nonzero constant divisor,
// which is what the printer needs for rational coefficients.

#include <cctype>
#include <cstdint>
#include <cstddef>
#include <string>
#include <string_view>

#include "cnull/error.hpp"
#include "cnull/field.hpp"
#include "cnull/poly.hpp"

namespace cnull {

namespace detail {

class PolyParser {
 public:
  static constexpr std::uint64_t kMaxExponent = 1u << 16;

  PolyParser(std::string_view text, std::size_t arity, const FieldSpec& spec)
      : text_(text), arity_(arity), spec_(spec) {}

  MultiPoly parse() {
    skip_ws();
    if (at_end()) throw input_error("syntax error: empty expression", pos_);
    MultiPoly p = expr();
    skip_ws();
    if (!at_end()) throw input_error(std::string("syntax error: unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    while (true) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      MultiPoly rhs = term();
      if (c == '+') acc += rhs;
      else acc -= rhs;
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    while (true) {
      skip_ws();
      char c = peek();
      if (c != '*' && c != '/') {
        if (c == 'x' || c == '(' || std::isdigit(static_cast<unsigned char>(c)))
          throw input_error("syntax error: implicit multiplication is not allowed, use '*'", pos_);
        return acc;
      }
      std::size_t op_pos = pos_++;
      MultiPoly rhs = unary();
      if (c == '*') {
        acc *= rhs;
      } else {
        if (rhs.is_zero() || rhs.total_degree() != Degree(0))
          throw input_error("syntax error: divisor must be a nonzero constant", op_pos);
        acc = acc.scaled(rhs.terms().begin()->second.inv());
      }
    }
  }

  MultiPoly unary() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    std::size_t exp_pos = pos_;
    std::string digits = read_digits();
    if (digits.empty()) throw input_error("syntax error: exponent must be a nonnegative integer literal", exp_pos);
    if (digits.size() > 6 || std::stoull(digits) > kMaxExponent)
      throw input_error("exponent overflow: " + digits, exp_pos);
    auto e = std::stoull(digits);
    auto deg = base.total_degree();
    if (!deg.is_minus_infinity() && static_cast<std::uint64_t>(deg.value()) * e > kMaxExponent)
      throw input_error("exponent overflow: degree would exceed " + std::to_string(kMaxExponent), exp_pos);
    skip_ws();
    if (peek() == '^') throw input_error("syntax error: chained '^' needs parentheses", pos_);
    return base.pow(e);
  }

  MultiPoly primary() {
    skip_ws();
    std::size_t start = pos_;
    char c = peek();
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      skip_ws();
      if (peek() != ')') throw input_error("syntax error: expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits = read_digits();
      return MultiPoly::constant(arity_, FieldElement(spec_, mpz_class(digits)));
    }
    if (c == 'x') {
      ++pos_;
      std::string digits = read_digits();
      if (digits.empty()) throw input_error("syntax error: variable needs an index, as in x1", start);
      if (digits.size() > 9 || std::stoull(digits) == 0 || std::stoull(digits) > arity_)
        throw input_error("unknown variable x" + digits + " (arity " + std::to_string(arity_) + ")", start);
      return MultiPoly::variable(arity_, spec_, std::stoull(digits) - 1);
    }
    if (at_end()) throw input_error("syntax error: unexpected end of input", pos_);
    throw input_error(std::string("syntax error: unexpected '") + c + "'", pos_);
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t arity_;
  FieldSpec spec_;
};

inline std::string monomial_text(const Exponents& u) {
  std::string s;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i + 1);
    if (u[i] > 1) s += "^" + std::to_string(u[i]);
  }
  return s;
}

}  // namespace detail

inline MultiPoly parse_poly(std::string_view text, std::size_t arity, const FieldSpec& spec) {
  return detail::PolyParser(text, arity, spec).parse();
}

/// Canonical text: terms in descending graded-lex order, reparseable by
/// parse_poly.
inline std::string to_string(const MultiPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [u, c] = *it;
    bool negative = !f.spec().is_prime() && sgn(c.rational()) < 0;
    FieldElement mag = negative ? -c : c;
    std::string mono = detail::monomial_text(u);
    std::string body;
    if (mono.empty()) body = mag.to_string();
    else if (mag.is_one()) body = mono;
    else body = mag.to_string() + "*" + mono;
    if (first) out += negative ? "-" + body : body;
    else out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

}  // namespace cnull
