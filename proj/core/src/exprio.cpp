#include "nsjet/exprio.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace nsjet {

ParseError::ParseError(Kind kind, SourceSpan span, const std::string& message)
    : std::runtime_error(message), kind_(kind), span_(span) {}

std::string ParseError::diagnostic(std::string_view text) const {
  const std::size_t start = std::min(span_.start, text.size());
  std::size_t line_start = text.rfind('\n', start == 0 ? 0 : start - 1);
  line_start = (line_start == std::string_view::npos || start == 0) ? 0 : line_start + 1;
  if (line_start > start) line_start = 0;
  std::size_t line_end = text.find('\n', start);
  if (line_end == std::string_view::npos) line_end = text.size();
  const auto line = static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(start), '\n')) + 1;
  const std::size_t col = start - line_start + 1;
  const std::size_t width = std::max<std::size_t>(1, std::min(span_.end, line_end) - std::min(start, line_end));

  std::ostringstream out;
  out << line << ":" << col << ": " << what() << "\n";
  out << "  " << text.substr(line_start, line_end - line_start) << "\n";
  out << "  " << std::string(col - 1, ' ') << std::string(width, '^') << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Expression parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, int dim, std::size_t offset = 0) : text_(text), dim_(dim), offset_(offset) {}

  Expr parse_all() {
    Expr e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'", pos_, pos_ + 1);
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t start, std::size_t end,
                         ParseError::Kind kind = ParseError::Kind::Syntax) const {
    throw ParseError(kind, {offset_ + start, offset_ + std::max(end, start)}, msg);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (accept(c)) return;
    if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' before end of input", pos_, pos_);
    fail(std::string("expected '") + c + "'", pos_, pos_ + 1);
  }

  // Digits at the current position; no sign.
  std::string digits(const char* what) {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) {
      if (pos_ < text_.size()) fail(std::string("expected ") + what, pos_, pos_ + 1);
      fail(std::string("expected ") + what + " before end of input", pos_, pos_);
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  int small_nat(const char* what) {
    const std::size_t start = pos_;
    const std::string d = digits(what);
    if (d.size() > 6) fail(std::string(what) + " is too large", start, pos_);
    return std::stoi(d);
  }

  Expr expr() {
    Expr e = signed_term();
    while (true) {
      if (accept('+')) {
        e += signed_term();
      } else if (accept('-')) {
        e -= signed_term();
      } else {
        break;
      }
    }
    return e;
  }

  Expr signed_term() {
    if (accept('-')) return -term();
    return term();
  }

  Expr term() {
    Expr e = factor();
    while (accept('*')) e *= factor();
    return e;
  }

  Expr factor() {
    Expr b = base();
    if (accept('^')) {
      const std::size_t start = pos_;
      const std::string d = digits("exponent");
      if (d.size() > 4) fail("exponent is too large", start, pos_);
      b = pow(b, static_cast<unsigned>(std::stoul(d)));
    }
    return b;
  }

  MultiIndex index(std::size_t var_start) {
    expect('[');
    std::vector<int> entries;
    do {
      skip();
      if (pos_ < text_.size() && text_[pos_] == '-') {
        const std::size_t s = pos_;
        ++pos_;
        skip();
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        fail("negative multi-index entry", s, pos_, ParseError::Kind::NegativeIndex);
      }
      entries.push_back(small_nat("multi-index entry"));
      if (entries.back() > 0xffff) fail("multi-index entry too large", pos_, pos_);
    } while (accept(','));
    expect(']');
    if (static_cast<int>(entries.size()) != dim_) {
      fail("multi-index has " + std::to_string(entries.size()) + " entries, dimension is " + std::to_string(dim_),
           var_start, pos_, ParseError::Kind::DimensionMismatch);
    }
    return MultiIndex(std::span<const int>(entries));
  }

  int component(std::size_t var_start) {
    const int c = small_nat("component number");
    if (c < 1 || c > dim_) {
      fail("component " + std::to_string(c) + " outside 1.." + std::to_string(dim_), var_start, pos_,
           ParseError::Kind::DimensionMismatch);
    }
    return c;
  }

  bool keyword(std::string_view word) {
    if (text_.substr(pos_, word.size()) != word) return false;
    const std::size_t after = pos_ + word.size();
    if (after < text_.size() && std::isalnum(static_cast<unsigned char>(text_[after]))) return false;
    pos_ = after;
    return true;
  }

  Expr base() {
    skip();
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) fail("expected an operand before end of input", pos_, pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num(digits("number"));
      mpz_class den = 1;
      if (accept('/')) {
        const std::size_t s = pos_;
        den = mpz_class(digits("denominator"));
        if (den == 0) fail("division by zero", s, pos_);
      }
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    if (keyword("nu")) return JetVariable::nu();
    if (keyword("t")) return JetVariable::t();
    if (c == 'x') {
      ++pos_;
      return JetVariable::x(component(start));
    }
    if (c == 'u') {
      ++pos_;
      const int comp = component(start);
      expect('_');
      return JetVariable::u(comp, index(start));
    }
    if (c == 'p') {
      ++pos_;
      expect('_');
      return JetVariable::p(index(start));
    }
    std::size_t end = pos_ + 1;
    while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
    fail("unexpected '" + std::string(text_.substr(pos_, end - pos_)) + "'", pos_, end);
  }

  std::string_view text_;
  int dim_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

Expr parse_at(std::string_view text, int dim, std::size_t offset) {
  validate_dimension(dim);
  return Parser(text, dim, offset).parse_all();
}

}  // namespace

Expr parse_expr(std::string_view text, int dim) { return parse_at(text, dim, 0); }

// ---------------------------------------------------------------------------
// Printer

std::string print_expr(const Expr& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    const bool negative = sgn(c) < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::string factors;
    for (const auto& [v, e] : m.factors()) {
      if (!factors.empty()) factors += "*";
      factors += v.to_string();
      if (e != 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += factors;
    } else {
      out += mag.get_str() + "*" + factors;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tuples

namespace {

struct Entry {
  std::string name;
  SourceSpan name_span;
  std::string_view body;
  std::size_t body_offset;
};

std::size_t trim_left(std::string_view s, std::size_t from, std::size_t to) {
  while (from < to && std::isspace(static_cast<unsigned char>(s[from]))) ++from;
  return from;
}

std::size_t trim_right(std::string_view s, std::size_t from, std::size_t to) {
  while (to > from && std::isspace(static_cast<unsigned char>(s[to - 1]))) --to;
  return to;
}

std::vector<Entry> split_entries(std::string_view text) {
  std::vector<Entry> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    const std::size_t a = trim_left(text, start, end);
    const std::size_t b = trim_right(text, a, end);
    if (a < b) {
      const std::size_t colon = text.find(':', a);
      if (colon == std::string_view::npos || colon >= b) {
        throw ParseError(ParseError::Kind::Syntax, {a, b}, "expected 'name: expression'");
      }
      const std::size_t ne = trim_right(text, a, colon);
      if (ne == a) throw ParseError(ParseError::Kind::Syntax, {a, colon + 1}, "missing component name");
      std::string name;
      for (std::size_t k = a; k < ne; ++k) {
        if (!std::isspace(static_cast<unsigned char>(text[k]))) name += text[k];
      }
      out.push_back({name, {a, ne}, text.substr(colon + 1, b - colon - 1), colon + 1});
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

[[noreturn]] void unknown(const Entry& e) {
  throw ParseError(ParseError::Kind::UnknownComponent, e.name_span, "unknown component '" + e.name + "'");
}

void mark(std::set<std::string>& seen, const Entry& e, const std::string& canonical) {
  if (!seen.insert(canonical).second) {
    throw ParseError(ParseError::Kind::DuplicateComponent, e.name_span, "duplicate component '" + e.name + "'");
  }
}

std::optional<int> suffix_number(const std::string& name, std::string_view prefix) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  const std::string rest = name.substr(prefix.size());
  if (rest.size() > 6 || !std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return std::nullopt;
  }
  if (rest.size() > 1 && rest[0] == '0') return std::nullopt;
  return std::stoi(rest);
}

template <class Tag>
SlotTuple<Tag> parse_slots(std::string_view text, int dim, std::string_view velocity_prefix, const std::string& pressure_name) {
  validate_dimension(dim);
  SlotTuple<Tag> out(dim);
  std::set<std::string> seen;
  for (const auto& e : split_entries(text)) {
    int slot = -1;
    if (e.name == pressure_name) {
      slot = kPressureSlot;
    } else if (auto n = suffix_number(e.name, velocity_prefix); n && *n >= 1 && *n <= dim) {
      slot = *n;
    } else {
      unknown(e);
    }
    mark(seen, e, e.name);
    out.slot(slot) = parse_at(e.body, dim, e.body_offset);
  }
  return out;
}

template <class Tag>
std::string print_slots(const SlotTuple<Tag>& t, const std::string& velocity_prefix, const std::string& pressure_name) {
  std::string out;
  for (int mu = 1; mu <= t.dim(); ++mu) {
    out += velocity_prefix + std::to_string(mu) + ": " + print_expr(t.slot(mu)) + "; ";
  }
  return out + pressure_name + ": " + print_expr(t.pressure);
}

}  // namespace

Characteristic parse_characteristic(std::string_view text, int dim) {
  return parse_slots<CharacteristicTag>(text, dim, "f", "f");
}

Cotuple parse_cotuple(std::string_view text, int dim) { return parse_slots<CotupleTag>(text, dim, "chi_u", "chi_p"); }

CurrentTuple parse_current(std::string_view text, int dim) {
  validate_dimension(dim);
  CurrentTuple out{std::vector<Expr>(static_cast<std::size_t>(dim))};
  std::set<std::string> seen;
  for (const auto& e : split_entries(text)) {
    auto n = suffix_number(e.name, "J");
    if (!n || *n < 1 || *n > dim) unknown(e);
    mark(seen, e, e.name);
    out.components[static_cast<std::size_t>(*n - 1)] = parse_at(e.body, dim, e.body_offset);
  }
  return out;
}

ChiTuple parse_chi(std::string_view text, Setting setting, int dim) {
  ChiTuple out(setting, dim);
  std::set<std::string> seen;
  using Kind = ChiTuple::Component::Kind;
  for (const auto& e : split_entries(text)) {
    ChiTuple::Component c;
    if (e.name == "chi01") {
      c = {Kind::Chi01, 0, 0};
    } else if (e.name.rfind("chi[", 0) == 0 && e.name.back() == ']') {
      const std::string inner = e.name.substr(4, e.name.size() - 5);
      const auto comma = inner.find(',');
      if (comma == std::string::npos) unknown(e);
      auto a = suffix_number("a" + inner.substr(0, comma), "a");
      auto s = suffix_number("s" + inner.substr(comma + 1), "s");
      if (!a || !s || *a < 2 || *a > dim) unknown(e);
      c = {Kind::Alpha, *s, *a};
    } else if (auto s = suffix_number(e.name, "chi"); s && (setting == Setting::CE || *s <= 1)) {
      c = {Kind::Pressure, *s, 0};
    } else {
      unknown(e);
    }
    mark(seen, e, chi_component_name(c));
    out.set(c, parse_at(e.body, dim, e.body_offset));
  }
  return out;
}

std::string print_characteristic(const Characteristic& f) { return print_slots(f, "f", "f"); }

std::string print_cotuple(const Cotuple& chi) { return print_slots(chi, "chi_u", "chi_p"); }

std::string print_current(const CurrentTuple& j) {
  std::string out;
  for (int mu = 1; mu <= j.dim(); ++mu) {
    if (mu > 1) out += "; ";
    out += "J" + std::to_string(mu) + ": " + print_expr(j.components[static_cast<std::size_t>(mu - 1)]);
  }
  return out;
}

std::string chi_component_name(const ChiTuple::Component& c) {
  switch (c.kind) {
    case ChiTuple::Component::Kind::Chi01:
      return "chi01";
    case ChiTuple::Component::Kind::Alpha:
      return "chi[" + std::to_string(c.alpha) + "," + std::to_string(c.shift) + "]";
    case ChiTuple::Component::Kind::Pressure:
      return "chi" + std::to_string(c.shift);
  }
  return {};
}

std::string print_chi(const ChiTuple& chi) {
  const auto comps = chi.components();
  if (comps.empty()) return "chi01: 0";
  std::string out;
  for (const auto& [c, v] : comps) {
    if (!out.empty()) out += "; ";
    out += chi_component_name(c) + ": " + print_expr(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structured form

namespace {

const char* kind_name(VarKind k) {
  switch (k) {
    case VarKind::Nu: return "nu";
    case VarKind::T: return "t";
    case VarKind::X: return "x";
    case VarKind::U: return "u";
    case VarKind::P: return "p";
  }
  return "";
}

[[noreturn]] void bad_json(const std::string& msg) { throw ParseError(ParseError::Kind::Syntax, {}, msg); }

JetVariable variable_from_json(const nlohmann::json& j, int dim) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) bad_json("variable needs a string 'kind'");
  const std::string kind = j["kind"];
  auto component = [&]() {
    if (!j.contains("component") || !j["component"].is_number_integer()) bad_json("variable needs 'component'");
    const int c = j["component"];
    if (c < 1 || c > dim) throw ParseError(ParseError::Kind::DimensionMismatch, {}, "component out of range");
    return c;
  };
  auto index = [&]() {
    if (!j.contains("index") || !j["index"].is_array()) bad_json("variable needs an 'index' array");
    std::vector<int> e;
    for (const auto& x : j["index"]) {
      if (!x.is_number_integer()) bad_json("index entries must be integers");
      const int v = x;
      if (v < 0) throw ParseError(ParseError::Kind::NegativeIndex, {}, "negative multi-index entry");
      e.push_back(v);
    }
    if (static_cast<int>(e.size()) != dim) {
      throw ParseError(ParseError::Kind::DimensionMismatch, {}, "multi-index arity does not match the dimension");
    }
    return MultiIndex(std::span<const int>(e));
  };
  if (kind == "nu") return JetVariable::nu();
  if (kind == "t") return JetVariable::t();
  if (kind == "x") return JetVariable::x(component());
  if (kind == "u") {
    const int c = component();
    return JetVariable::u(c, index());
  }
  if (kind == "p") return JetVariable::p(index());
  bad_json("unknown variable kind '" + kind + "'");
}

}  // namespace

nlohmann::json expr_to_json(const Expr& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : f.terms()) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& [v, e] : m.factors()) {
      nlohmann::json var = {{"kind", kind_name(v.kind())}};
      if (v.kind() == VarKind::X || v.kind() == VarKind::U) var["component"] = v.component();
      if (v.is_jet()) var["index"] = v.index().entries();
      factors.push_back(nlohmann::json::array({var, e}));
    }
    out.push_back({{"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}, {"factors", factors}});
  }
  return out;
}

Expr expr_from_json(const nlohmann::json& j, int dim) {
  validate_dimension(dim);
  if (!j.is_array()) bad_json("expression must be an array of terms");
  Expr out;
  for (const auto& term : j) {
    if (!term.is_object() || !term.contains("num") || !term.contains("den") || !term.contains("factors")) {
      bad_json("term needs 'num', 'den' and 'factors'");
    }
    if (!term["num"].is_string() || !term["den"].is_string()) bad_json("'num' and 'den' must be strings");
    mpz_class num;
    mpz_class den;
    if (num.set_str(term["num"].get<std::string>(), 10) != 0 || den.set_str(term["den"].get<std::string>(), 10) != 0) {
      bad_json("malformed integer");
    }
    if (den == 0) bad_json("zero denominator");
    Rational c(num, den);
    c.canonicalize();
    std::vector<Monomial::Factor> factors;
    for (const auto& f : term["factors"]) {
      if (!f.is_array() || f.size() != 2 || !f[1].is_number_integer() || f[1].get<int>() < 0) {
        bad_json("factor must be [variable, exponent]");
      }
      factors.emplace_back(variable_from_json(f[0], dim), f[1].get<int>());
    }
    out.add_term(Monomial(std::move(factors)), c);
  }
  return out;
}

}  // namespace nsjet
