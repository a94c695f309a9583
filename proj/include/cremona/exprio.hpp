#pragma once

// Text formats: polynomials, maps, rational functions, curve and point files.
//
//   poly   := term (('+' | '-') term)*      (a leading sign is accepted)
//   term   := [coeff ['*']] factor ('*' factor)*  |  coeff
//   factor := ('x' | 'y' | 'z') ['^' nat]
//   coeff  := int | int '/' int
//
// Whitespace is insignificant. Rational functions use the same grammar in the
// single variable x, as "num", "num / den" or "(num) / (den)".

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cremona/affine.hpp"
#include "cremona/hompoly.hpp"
#include "cremona/upoly.hpp"

namespace cremona {

struct SourceSpan {
  std::size_t start = 0, end = 0;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, SourceSpan span)
      : Error(Errc::Parse, msg + " at [" + std::to_string(span.start) + ", " + std::to_string(span.end) + ")"),
        span_(span),
        message_(msg) {}
  SourceSpan span() const { return span_; }
  const std::string& message() const { return message_; }

 private:
  SourceSpan span_;
  std::string message_;
};

namespace detail {

struct RawTerm {
  Mono3 mono;
  Rat coeff;
  SourceSpan span;
};

class TermParser {
 public:
  TermParser(std::string_view text, std::size_t base, std::string_view vars)
      : s_(text), base_(base), vars_(vars) {}

  /// Parses a whole polynomial expression; the input must be fully consumed
  /// unless `stop` names a character that may end it.
  std::vector<RawTerm> parse_sum(char stop = '\0') {
    std::vector<RawTerm> terms;
    skip();
    bool first = true;
    while (true) {
      skip();
      std::size_t start = pos_;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        break;
      }
      if (at_end() || peek() == stop) fail("expected a term", start, pos_ + (at_end() ? 0 : 1));
      RawTerm t = parse_term();
      if (sign < 0) t.coeff = -t.coeff;
      t.span.start = base_ + start;
      terms.push_back(std::move(t));
      first = false;
      skip();
      if (at_end() || peek() == stop) break;
      if (peek() != '+' && peek() != '-') fail(std::string("unexpected character '") + peek() + "'", pos_, pos_ + 1);
    }
    return terms;
  }

  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  [[noreturn]] void fail(const std::string& msg, std::size_t a, std::size_t b) const {
    b = std::min(std::max(a, b), s_.size());
    a = std::min(a, s_.size());
    throw ParseError(msg, {base_ + a, base_ + b});
  }

 private:
  Int parse_nat() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number", start, start + 1);
    return Int(std::string(s_.substr(start, pos_ - start)));
  }

  RawTerm parse_term() {
    RawTerm t;
    t.coeff = 1;
    std::size_t start = pos_;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      Int num = parse_nat();
      Int den = 1;
      skip();
      if (peek() == '/') {
        std::size_t slash = pos_;
        ++pos_;
        skip();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a denominator", slash, pos_ + 1);
        den = parse_nat();
        if (den == 0) fail("zero denominator", slash, pos_);
      }
      t.coeff = make_rat(num, den);
      have_coeff = true;
      skip();
      if (peek() == '*') {
        ++pos_;
        skip();
        if (!is_var_start()) fail("expected a variable after '*'", pos_, pos_ + 1);
      }
    }
    bool any_factor = false;
    while (true) {
      skip();
      if (!is_var_start()) {
        if (std::isalpha(static_cast<unsigned char>(peek()))) {
          fail(std::string("unknown variable '") + peek() + "'", pos_, pos_ + 1);
        }
        break;
      }
      const char v = s_[pos_++];
      int e = 1;
      skip();
      if (peek() == '^') {
        std::size_t caret = pos_;
        ++pos_;
        skip();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent", caret, pos_ + 1);
        Int big = parse_nat();
        if (big > 100000) fail("exponent too large", caret, pos_);
        e = static_cast<int>(big.get_si());
      }
      if (v == 'x') t.mono.x += e;
      else if (v == 'y') t.mono.y += e;
      else t.mono.z += e;
      any_factor = true;
      skip();
      if (peek() == '*') {
        ++pos_;
        skip();
        if (!is_var_start()) {
          if (std::isalpha(static_cast<unsigned char>(peek()))) fail(std::string("unknown variable '") + peek() + "'", pos_, pos_ + 1);
          fail("expected a variable after '*'", pos_, pos_ + 1);
        }
      }
    }
    if (!have_coeff && !any_factor) {
      if (std::isalpha(static_cast<unsigned char>(peek()))) fail(std::string("unknown variable '") + peek() + "'", pos_, pos_ + 1);
      fail("expected a coefficient or variable", start, start + 1);
    }
    t.span = {base_ + start, base_ + pos_};
    return t;
  }

  bool is_var_start() const {
    if (at_end()) return false;
    return vars_.find(s_[pos_]) != std::string_view::npos;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t base_;
  std::string_view vars_;
};

inline HomPoly assemble(const std::vector<RawTerm>& raw) {
  if (raw.empty()) return HomPoly::zero(0);
  // Zero coefficients carry no degree information.
  int deg = -1;
  for (const auto& t : raw) {
    if (t.coeff == 0) continue;
    const int d = t.mono.degree();
    if (deg < 0) {
      deg = d;
    } else if (d != deg) {
      throw ParseError("inhomogeneous polynomial: terms of degree " + std::to_string(deg) + " and " + std::to_string(d),
                       t.span);
    }
  }
  if (deg < 0) return HomPoly::zero(0);
  std::vector<HomPoly::Term> terms;
  for (const auto& t : raw) {
    if (t.coeff != 0) terms.push_back({t.mono, t.coeff});
  }
  return HomPoly::from_terms(deg, std::move(terms));
}

inline HomPoly parse_poly_at(std::string_view text, std::size_t base) {
  TermParser p(text, base, "xyz");
  auto raw = p.parse_sum();
  p.skip();
  if (!p.at_end()) p.fail("trailing input", p.pos(), text.size());
  return assemble(raw);
}

}  // namespace detail

/// Parses a homogeneous polynomial; coefficients are kept exactly as written.
inline HomPoly parse_poly(std::string_view text) { return detail::parse_poly_at(text, 0); }

/// Deterministic text form in decreasing graded-lex order; parse_poly inverts it.
inline std::string format_poly(const HomPoly& P) {
  if (P.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : P.terms()) {
    const bool neg = c < 0;
    const Rat a = neg ? Rat(-c) : c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    auto add = [&](char v, int e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += v;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    add('x', m.x);
    add('y', m.y);
    add('z', m.z);
    if (mono.empty()) {
      out += a.get_str();
    } else if (a == 1) {
      out += mono;
    } else {
      out += a.get_str() + "*" + mono;
    }
  }
  return out;
}

/// Three semicolon-separated polynomials. Degrees are checked later.
inline Triple parse_map(std::string_view text) {
  std::vector<std::size_t> cuts;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == ';') cuts.push_back(i);
  }
  // Allow one trailing semicolon.
  std::size_t end = text.size();
  if (cuts.size() == 3) {
    bool trailing_blank = true;
    for (std::size_t i = cuts[2] + 1; i < text.size(); ++i) {
      if (!std::isspace(static_cast<unsigned char>(text[i]))) trailing_blank = false;
    }
    if (trailing_blank) {
      end = cuts[2];
      cuts.pop_back();
    }
  }
  if (cuts.size() != 2) {
    throw ParseError("a map needs exactly three components, found " + std::to_string(cuts.size() + 1),
                     {0, text.size()});
  }
  Triple t;
  std::size_t a = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t b = k < 2 ? cuts[k] : end;
    t[k] = detail::parse_poly_at(text.substr(a, b - a), a);
    a = b + 1;
  }
  return t;
}

inline std::string format_map(const Triple& t) {
  return format_poly(t[0]) + "; " + format_poly(t[1]) + "; " + format_poly(t[2]);
}

namespace detail {

inline UPoly parse_upoly_at(std::string_view text, std::size_t base) {
  TermParser p(text, base, "x");
  auto raw = p.parse_sum();
  p.skip();
  if (!p.at_end()) p.fail("trailing input", p.pos(), text.size());
  UPoly r;
  for (const auto& t : raw) r = r + UPoly::monomial(t.mono.x, t.coeff);
  return r;
}

/// Strips one pair of enclosing parentheses, tracking the offset.
inline std::pair<std::string_view, std::size_t> unparen(std::string_view s, std::size_t base) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (b - a >= 2 && s[a] == '(' && s[b - 1] == ')') {
    int depth = 0;
    for (std::size_t i = a; i < b; ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')' && --depth == 0 && i != b - 1) return {s, base};
    }
    return {s.substr(a + 1, b - a - 2), base + a + 1};
  }
  return {s, base};
}

}  // namespace detail

/// "num", "num / den" or "(num)/(den)" in the variable x. A '/' between two
/// digits belongs to a coefficient ("1/2*x"); any other top-level '/' divides.
inline RatFunc1 parse_ratfunc(std::string_view text) {
  int depth = 0;
  std::size_t split = std::string_view::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (--depth < 0) throw ParseError("unbalanced ')'", {i, i + 1});
    } else if (c == '/' && depth == 0) {
      std::size_t l = i, r = i + 1;
      while (l > 0 && std::isspace(static_cast<unsigned char>(text[l - 1]))) --l;
      while (r < text.size() && std::isspace(static_cast<unsigned char>(text[r]))) ++r;
      const bool coeff_slash = l > 0 && std::isdigit(static_cast<unsigned char>(text[l - 1])) && r < text.size() &&
                               std::isdigit(static_cast<unsigned char>(text[r]));
      if (!coeff_slash) {
        if (split != std::string_view::npos) throw ParseError("more than one division", {i, i + 1});
        split = i;
      }
    }
  }
  if (depth > 0) throw ParseError("unbalanced '('", {0, text.size()});
  if (split == std::string_view::npos) {
    auto [s, b] = detail::unparen(text, 0);
    return RatFunc1(detail::parse_upoly_at(s, b));
  }
  auto [ns, nb] = detail::unparen(text.substr(0, split), 0);
  auto [ds, db] = detail::unparen(text.substr(split + 1), split + 1);
  UPoly num = detail::parse_upoly_at(ns, nb);
  UPoly den = detail::parse_upoly_at(ds, db);
  if (den.is_zero()) throw ParseError("zero denominator", {split + 1, text.size()});
  return RatFunc1(num, den);
}

inline std::string format_upoly(const UPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<HomPoly::Term> terms;
  for (int i = 0; i <= p.degree(); ++i) {
    if (p[i] != 0) terms.push_back({Mono3{i, 0, 0}, p[i]});
  }
  // Reuse the ternary printer one term at a time (degrees differ).
  std::string out;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    std::string t = format_poly(HomPoly::monomial(it->first, it->second));
    if (first) {
      out = t;
    } else if (t[0] == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
    first = false;
  }
  return out;
}

inline std::string format_ratfunc(const RatFunc1& r) {
  if (r.is_polynomial()) return format_upoly(r.num());
  return "(" + format_upoly(r.num()) + ")/(" + format_upoly(r.den()) + ")";
}

/// Rational number "a" or "a/b" with optional sign.
inline Rat parse_rat(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw ParseError("empty number", {0, text.size()});
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  std::size_t slash = s.find('/');
  auto digits = [&](std::size_t a, std::size_t b) {
    if (a >= b) return false;
    for (std::size_t k = a; k < b; ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    return true;
  };
  const std::size_t numend = slash == std::string::npos ? s.size() : slash;
  if (!digits(i, numend) || (slash != std::string::npos && !digits(slash + 1, s.size()))) {
    throw ParseError("malformed number '" + std::string(text) + "'", {0, text.size()});
  }
  Int num(s.substr(i, numend - i));
  if (s[0] == '-') num = -num;
  Int den = slash == std::string::npos ? Int(1) : Int(s.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator", {0, text.size()});
  return make_rat(num, den);
}

/// "x, y, z" coordinates.
inline Point parse_point(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t a = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      parts.push_back(text.substr(a, i - a));
      a = i + 1;
    }
  }
  if (parts.size() != 3) throw ParseError("a point needs three coordinates", {0, text.size()});
  std::array<Rat, 3> c{parse_rat(parts[0]), parse_rat(parts[1]), parse_rat(parts[2])};
  if (c[0] == 0 && c[1] == 0 && c[2] == 0) throw ParseError("point with all coordinates zero", {0, text.size()});
  return Point(c);
}

inline std::string format_point_coords(const Point& p) {
  return p[0].get_str() + "," + p[1].get_str() + "," + p[2].get_str();
}

/// Parsed curve file: equation and declared singular points.
struct CurveSpec {
  HomPoly F;
  std::vector<std::pair<Point, int>> sing;
};

namespace detail {
inline std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  std::string s = h == std::string::npos ? line : line.substr(0, h);
  auto a = s.find_first_not_of(" \t\r");
  auto b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}
}  // namespace detail

inline CurveSpec parse_curve(const std::string& text) {
  CurveSpec spec;
  bool have_F = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::size_t next = 0;  // byte offset of the following line
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t offset = next;
    next += line.size() + 1;
    std::string s = detail::strip_comment(line);
    if (s.empty()) continue;
    const std::size_t lead = offset + line.find_first_not_of(" \t\r");
    const SourceSpan whole{offset, offset + line.size()};
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'", whole);
    std::string key = detail::strip_comment(s.substr(0, eq));
    std::string val = s.substr(eq + 1);
    if (key == "F") {
      spec.F = detail::parse_poly_at(val, lead + eq + 1);
      have_F = true;
    } else if (key == "sing") {
      auto colon = val.find(':');
      if (colon == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected 'x,y,z : m'", whole);
      Point p = parse_point(val.substr(0, colon));
      Rat m = parse_rat(val.substr(colon + 1));
      if (m.get_den() != 1 || m < 1) throw ParseError("line " + std::to_string(lineno) + ": bad multiplicity", whole);
      spec.sing.push_back({p, static_cast<int>(m.get_num().get_si())});
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'", whole);
    }
  }
  if (!have_F) throw ParseError("curve file has no 'F =' line", {0, text.size()});
  return spec;
}

inline std::string format_curve(const CurveSpec& c) {
  std::string out = "F = " + format_poly(c.F) + "\n";
  for (const auto& [p, m] : c.sing) out += "sing = " + format_point_coords(p) + " : " + std::to_string(m) + "\n";
  return out;
}

inline std::vector<Point> parse_points(const std::string& text) {
  std::vector<Point> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string s = detail::strip_comment(line);
    if (!s.empty()) out.push_back(parse_point(s));
  }
  return out;
}

inline std::string format_points(const std::vector<Point>& pts) {
  std::string out;
  for (const auto& p : pts) out += format_point_coords(p) + "\n";
  return out;
}

/// Map files may spread "f0; f1; f2" over several lines and carry comments.
inline Triple parse_map_file(const std::string& text) {
  std::istringstream in(text);
  std::string line, joined;
  while (std::getline(in, line)) joined += detail::strip_comment(line) + " ";
  return parse_map(joined);
}

/// Affine polynomials print with the ternary printer; z never appears since
/// each term is printed as a monomial in x and y alone.
inline std::string format_affine_poly(const AffinePoly& f) {
  if (f.is_zero()) return "0";
  std::vector<std::pair<AffinePoly::Key, Rat>> terms(f.terms().begin(), f.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    return da != db ? da > db : a.first.first > b.first.first;
  });
  std::string out;
  for (const auto& [k, c] : terms) {
    std::string t = format_poly(HomPoly::monomial(Mono3{k.first, k.second, 0}, c));
    if (out.empty()) {
      out = t;
    } else if (t[0] == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

inline std::string format_affine_frac(const AffineFrac& f) {
  if (f.den == AffinePoly(Rat(1))) return format_affine_poly(f.num);
  const auto wrap = [](const AffinePoly& p) {
    const std::string t = format_affine_poly(p);
    return p.terms().size() > 1 ? "(" + t + ")" : t;
  };
  return wrap(f.num) + "/" + wrap(f.den);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::NotFound, "cannot open file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cremona
