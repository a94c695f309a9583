#pragma once

// Affine polynomials in (x, y) and rational self-maps of the affine plane.
// Divisibility questions are answered by homogenizing and dividing exactly.

#include <map>
#include <utility>

#include "cremona/hompoly.hpp"
#include "cremona/upoly.hpp"

namespace cremona {

class AffinePoly {
 public:
  using Key = std::pair<int, int>;  // (e_x, e_y)

  AffinePoly() = default;
  AffinePoly(const Rat& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) t_[{0, 0}] = c;
  }
  static AffinePoly x() { return monomial(1, 0, Rat(1)); }
  static AffinePoly y() { return monomial(0, 1, Rat(1)); }
  static AffinePoly monomial(int ex, int ey, const Rat& c) {
    AffinePoly p;
    if (c != 0) p.t_[{ex, ey}] = c;
    return p;
  }
  /// A univariate polynomial in x viewed in two variables.
  static AffinePoly from_x(const UPoly& u) {
    AffinePoly p;
    for (int i = 0; i <= u.degree(); ++i)
      if (u[i] != 0) p.t_[{i, 0}] = u[i];
    return p;
  }
  /// Dehomogenization at z = 1.
  static AffinePoly dehomogenize(const HomPoly& F) {
    AffinePoly p;
    for (const auto& [m, c] : F.terms()) p.t_[{m.x, m.y}] += c;
    p.clean();
    return p;
  }

  bool is_zero() const { return t_.empty(); }
  const std::map<Key, Rat>& terms() const { return t_; }
  int degree() const {
    int d = -1;
    for (const auto& [k, c] : t_) d = std::max(d, k.first + k.second);
    return d;
  }
  int degree_in(int v) const {
    int d = -1;
    for (const auto& [k, c] : t_) d = std::max(d, v == 0 ? k.first : k.second);
    return d;
  }

  friend AffinePoly operator+(const AffinePoly& a, const AffinePoly& b) {
    AffinePoly r = a;
    for (const auto& [k, c] : b.t_) r.t_[k] += c;
    r.clean();
    return r;
  }
  AffinePoly operator-() const {
    AffinePoly r = *this;
    for (auto& [k, c] : r.t_) c = -c;
    return r;
  }
  friend AffinePoly operator-(const AffinePoly& a, const AffinePoly& b) { return a + (-b); }
  friend AffinePoly operator*(const AffinePoly& a, const AffinePoly& b) {
    AffinePoly r;
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_) r.t_[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
    r.clean();
    return r;
  }
  friend bool operator==(const AffinePoly& a, const AffinePoly& b) { return a.t_ == b.t_; }

  AffinePoly pow(int e) const {
    AffinePoly r(Rat(1)), b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// Homogenization to degree max(deg, at_least).
  HomPoly homogenize(int at_least = 0) const {
    const int D = std::max(degree(), at_least);
    std::vector<HomPoly::Term> terms;
    for (const auto& [k, c] : t_) terms.push_back({Mono3{k.first, k.second, D - k.first - k.second}, c});
    return HomPoly::from_terms(std::max(D, 0), std::move(terms));
  }

  Rat eval(const Rat& x, const Rat& y) const {
    Rat acc = 0;
    for (const auto& [k, c] : t_) {
      Rat v = c;
      for (int i = 0; i < k.first; ++i) v *= x;
      for (int i = 0; i < k.second; ++i) v *= y;
      acc += v;
    }
    return acc;
  }

 private:
  void clean() {
    for (auto it = t_.begin(); it != t_.end();) {
      if (it->second == 0) it = t_.erase(it);
      else ++it;
    }
  }
  std::map<Key, Rat> t_;
};

/// Whether g divides f in Q[x, y].
inline bool affine_divides(const AffinePoly& g, const AffinePoly& f) {
  if (g.is_zero()) throw Error(Errc::DivisionByZero, "division by the zero polynomial");
  if (f.is_zero()) return true;
  return divides(g.homogenize(), f.homogenize());
}

/// Affine rational function num/den in (x, y).
struct AffineFrac {
  AffinePoly num, den = AffinePoly(Rat(1));
};

/// (x, y) -> (X, Y) with rational-function coordinates.
struct AffineMap2 {
  AffineFrac X, Y;

  static AffineMap2 identity() { return {{AffinePoly::x(), Rat(1)}, {AffinePoly::y(), Rat(1)}}; }
};

namespace detail {

/// Numerator of f(X, Y) after multiplying by den_X^a den_Y^b, where a and b
/// are the given exponents (at least the degrees of f in x and y).
inline AffinePoly cleared(const AffinePoly& f, const AffineMap2& m, int a, int b) {
  AffinePoly out;
  for (const auto& [k, c] : f.terms()) {
    out = out + AffinePoly(c) * m.X.num.pow(k.first) * m.X.den.pow(a - k.first) * m.Y.num.pow(k.second) *
                    m.Y.den.pow(b - k.second);
  }
  return out;
}

}  // namespace detail

/// f o psi as a fraction with the denominators cleared uniformly.
inline AffineFrac affine_substitute(const AffineFrac& f, const AffineMap2& m) {
  const int a = std::max(f.num.degree_in(0), f.den.degree_in(0));
  const int b = std::max(f.num.degree_in(1), f.den.degree_in(1));
  return {detail::cleared(f.num, m, std::max(a, 0), std::max(b, 0)),
          detail::cleared(f.den, m, std::max(a, 0), std::max(b, 0))};
}

/// phi o psi.
inline AffineMap2 affine_compose(const AffineMap2& phi, const AffineMap2& psi) {
  return {affine_substitute(phi.X, psi), affine_substitute(phi.Y, psi)};
}

inline bool fractions_equal(const AffineFrac& a, const AffineFrac& b) { return a.num * b.den == b.num * a.den; }

inline bool affine_maps_equal(const AffineMap2& a, const AffineMap2& b) {
  return fractions_equal(a.X, b.X) && fractions_equal(a.Y, b.Y);
}

namespace detail {
inline void check_denominators(const AffineMap2& psi, const AffinePoly& f) {
  if (psi.X.den.is_zero() || psi.Y.den.is_zero()) throw Error(Errc::Degenerate, "zero denominator in affine map");
  if (f.degree() > 0 && (affine_divides(f, psi.X.den) || affine_divides(f, psi.Y.den))) {
    throw Error(Errc::Degenerate, "a denominator of the map is divisible by the curve equation");
  }
}
}  // namespace detail

/// f divides the numerator of f o psi.
inline bool affine_preserves(const AffineMap2& psi, const AffinePoly& f) {
  detail::check_denominators(psi, f);
  const int a = std::max(f.degree_in(0), 0), b = std::max(f.degree_in(1), 0);
  return affine_divides(f, detail::cleared(f, psi, a, b));
}

/// f divides the numerators of X - x and Y - y.
inline bool affine_fixes(const AffineMap2& psi, const AffinePoly& f) {
  detail::check_denominators(psi, f);
  return affine_divides(f, psi.X.num - AffinePoly::x() * psi.X.den) &&
         affine_divides(f, psi.Y.num - AffinePoly::y() * psi.Y.den);
}

}  // namespace cremona
