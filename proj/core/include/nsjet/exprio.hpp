#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "nsjet/reduced_complex.hpp"
#include "nsjet/tuples.hpp"

namespace nsjet {

// Byte offsets [start, end) into the parsed text.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, DimensionMismatch, NegativeIndex, UnknownComponent, DuplicateComponent };

  ParseError(Kind kind, SourceSpan span, const std::string& message);

  Kind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }

  // "line:col: message" followed by the offending line and a caret marker.
  std::string diagnostic(std::string_view text) const;

 private:
  Kind kind_;
  SourceSpan span_;
};

// Grammar (whitespace-insensitive):
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' nat)?
//   base   := rational | 'nu' | 't' | 'x' nat | 'u' nat '_[' nat (',' nat)* ']'
//           | 'p_[' nat (',' nat)* ']' | '(' expr ')'
//   rational := int ('/' nat)?
Expr parse_expr(std::string_view text, int dim);

std::string print_expr(const Expr& f);

// Tuples use "name: expr; name: expr". Missing components are zero.
//   characteristic  f1..fm, f
//   current         J1..Jm
//   cotuple         chi_u1..chi_um, chi_p
//   chi tuple       chi01, chi[alpha,i1], and chi<i1> (cpe: chi0, chi1)
Characteristic parse_characteristic(std::string_view text, int dim);
CurrentTuple parse_current(std::string_view text, int dim);
Cotuple parse_cotuple(std::string_view text, int dim);
ChiTuple parse_chi(std::string_view text, Setting setting, int dim);

std::string print_characteristic(const Characteristic& f);
std::string print_current(const CurrentTuple& j);
std::string print_cotuple(const Cotuple& chi);
// Nonzero components only; the zero tuple prints as "chi01: 0".
std::string print_chi(const ChiTuple& chi);

std::string chi_component_name(const ChiTuple::Component& c);

// Structured form: a list of {"num", "den", "factors": [[variable, exponent]]}
// records in canonical term order. Numerator and denominator are decimal
// strings; a variable is {"kind": "nu"|"t"|"x"|"u"|"p", "component", "index"}.
nlohmann::json expr_to_json(const Expr& f);
// Throws ParseError (with an empty span) on malformed records.
Expr expr_from_json(const nlohmann::json& j, int dim);

}  // namespace nsjet
