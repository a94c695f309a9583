#pragma once

// Homogeneous polynomials in x, y, z over the rationals.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cremona/error.hpp"
#include "cremona/rational.hpp"

namespace cremona {

/// Exponent triple (e_x, e_y, e_z).
struct Mono3 {
  int x = 0, y = 0, z = 0;

  int degree() const { return x + y + z; }
  int operator[](int var) const { return var == 0 ? x : (var == 1 ? y : z); }
  friend bool operator==(const Mono3&, const Mono3&) = default;
};

/// Graded-lexicographic comparison with x > y > z. Returns true if a > b.
inline bool grlex_greater(const Mono3& a, const Mono3& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  if (a.x != b.x) return a.x > b.x;
  return a.y > b.y;
}

/// Projective point with rational coordinates, canonicalized so that the last
/// nonzero coordinate is 1.
class Point {
 public:
  Point() : c_{Rat(0), Rat(0), Rat(1)} {}
  explicit Point(Rat x, Rat y, Rat z) : c_{std::move(x), std::move(y), std::move(z)} { normalize(); }
  explicit Point(const std::array<Rat, 3>& c) : c_(c) { normalize(); }

  const Rat& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  const std::array<Rat, 3>& coords() const { return c_; }
  /// Index of the last nonzero coordinate.
  int pivot() const { return c_[2] != 0 ? 2 : (c_[1] != 0 ? 1 : 0); }

  friend bool operator==(const Point& a, const Point& b) { return a.c_ == b.c_; }
  friend bool operator<(const Point& a, const Point& b) { return a.c_ < b.c_; }

  std::string str() const {
    return "(" + c_[0].get_str() + ":" + c_[1].get_str() + ":" + c_[2].get_str() + ")";
  }

 private:
  void normalize() {
    int k = 2;
    while (k >= 0 && c_[static_cast<std::size_t>(k)] == 0) --k;
    if (k < 0) throw Error(Errc::Degenerate, "point with all coordinates zero");
    Rat s = c_[static_cast<std::size_t>(k)];
    for (auto& v : c_) v /= s;
  }
  std::array<Rat, 3> c_;
};

namespace detail {

/// Integer polynomial, homogeneous of degree `deg`, terms sorted in
/// decreasing grlex order. Used for the heavy products behind HomPoly.
struct IntPoly {
  struct Term {
    int ex, ey;
    Int c;
  };
  int deg = 0;
  std::vector<Term> terms;
};

inline std::size_t tri(std::size_t m) { return m * (m + 1) / 2; }
/// Dense index of x^ex y^ey z^(n-ex-ey) in decreasing grlex order.
inline std::size_t dense_index(int n, int ex, int ey) {
  return tri(static_cast<std::size_t>(n - ex)) + static_cast<std::size_t>(n - ex - ey);
}

inline IntPoly from_dense(int n, std::vector<Int>& dense) {
  IntPoly out;
  out.deg = n;
  for (int ex = n; ex >= 0; --ex) {
    for (int ey = n - ex; ey >= 0; --ey) {
      Int& c = dense[dense_index(n, ex, ey)];
      if (c != 0) out.terms.push_back({ex, ey, std::move(c)});
    }
  }
  return out;
}

inline IntPoly int_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly out;
  out.deg = a.deg + b.deg;
  if (a.terms.empty() || b.terms.empty()) return out;
  std::vector<Int> dense(tri(static_cast<std::size_t>(out.deg) + 1));
  for (const auto& s : a.terms) {
    for (const auto& t : b.terms) {
      Int& slot = dense[dense_index(out.deg, s.ex + t.ex, s.ey + t.ey)];
      mpz_addmul(slot.get_mpz_t(), s.c.get_mpz_t(), t.c.get_mpz_t());
    }
  }
  return from_dense(out.deg, dense);
}

/// a + c * b, where deg a == deg b (or a empty).
inline IntPoly int_add_scaled(const IntPoly& a, const IntPoly& b, const Int& c) {
  IntPoly out;
  out.deg = b.deg;
  out.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  auto key_greater = [](const IntPoly::Term& s, const IntPoly::Term& t) {
    return s.ex != t.ex ? s.ex > t.ex : s.ey > t.ey;
  };
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size() || (i < a.terms.size() && key_greater(a.terms[i], b.terms[j]))) {
      out.terms.push_back(a.terms[i++]);
    } else if (i == a.terms.size() || key_greater(b.terms[j], a.terms[i])) {
      out.terms.push_back({b.terms[j].ex, b.terms[j].ey, Int(b.terms[j].c * c)});
      ++j;
    } else {
      Int v = a.terms[i].c;
      mpz_addmul(v.get_mpz_t(), b.terms[j].c.get_mpz_t(), c.get_mpz_t());
      if (v != 0) out.terms.push_back({a.terms[i].ex, a.terms[i].ey, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace detail

/// Sparse homogeneous polynomial in x, y, z with rational coefficients.
///
/// Terms are stored in decreasing graded-lex order (x > y > z) with no zero
/// coefficients. The zero polynomial keeps the degree it was created with so
/// that sums of cancelling forms stay well-typed, but it is compatible with
/// every degree in additive operations.
class HomPoly {
 public:
  using Term = std::pair<Mono3, Rat>;

  HomPoly() = default;

  static HomPoly zero(int degree) {
    HomPoly p;
    p.deg_ = degree;
    return p;
  }
  static HomPoly constant(const Rat& c) {
    HomPoly p;
    if (c != 0) p.terms_.push_back({Mono3{}, c});
    return p;
  }
  /// The coordinate form x (var 0), y (var 1) or z (var 2).
  static HomPoly var(int v) {
    Mono3 m;
    if (v == 0) m.x = 1; else if (v == 1) m.y = 1; else m.z = 1;
    return monomial(m, Rat(1));
  }
  static HomPoly monomial(const Mono3& m, const Rat& c) {
    if (m.x < 0 || m.y < 0 || m.z < 0) throw Error(Errc::Precondition, "negative exponent");
    HomPoly p;
    p.deg_ = m.degree();
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }
  /// Builds from arbitrary terms of a common degree; merges duplicates.
  static HomPoly from_terms(int degree, std::vector<Term> terms) {
    for (const auto& [m, c] : terms) {
      if (m.x < 0 || m.y < 0 || m.z < 0) throw Error(Errc::Precondition, "negative exponent");
      if (m.degree() != degree) {
        throw Error(Errc::DegreeMismatch, "term of degree " + std::to_string(m.degree()) +
                                              " in a form of degree " + std::to_string(degree));
      }
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grlex_greater(a.first, b.first); });
    HomPoly p;
    p.deg_ = degree;
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second += t.second;
        if (p.terms_.back().second == 0) p.terms_.pop_back();
      } else if (t.second != 0) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  int degree() const { return deg_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return deg_ == 0; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  Rat coeff(const Mono3& m) const {
    for (const auto& [mm, c] : terms_) {
      if (mm == m) return c;
    }
    return Rat(0);
  }
  /// Leading coefficient in grlex order (zero for the zero form).
  Rat leading_coeff() const { return terms_.empty() ? Rat(0) : terms_.front().second; }

  /// Highest exponent of `v` occurring in any term.
  int degree_in(int v) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[v]);
    return d;
  }

  HomPoly operator-() const {
    HomPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend HomPoly operator+(const HomPoly& a, const HomPoly& b) { return combine(a, b, false); }
  friend HomPoly operator-(const HomPoly& a, const HomPoly& b) { return combine(a, b, true); }

  friend HomPoly operator*(const Rat& s, const HomPoly& a) {
    if (s == 0) return zero(a.deg_);
    HomPoly r = a;
    for (auto& t : r.terms_) t.second *= s;
    return r;
  }
  friend HomPoly operator*(const HomPoly& a, const Rat& s) { return s * a; }

  friend HomPoly operator*(const HomPoly& a, const HomPoly& b) {
    if (a.is_zero() || b.is_zero()) return zero(a.deg_ + b.deg_);
    auto [sa, ia] = a.integerize();
    auto [sb, ib] = b.integerize();
    return from_int(detail::int_mul(ia, ib), sa * sb);
  }

  /// Exact structural equality (same degree class and coefficients).
  friend bool operator==(const HomPoly& a, const HomPoly& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.deg_ == b.deg_ && a.terms_ == b.terms_;
  }

  HomPoly pow(int e) const {
    HomPoly r = constant(Rat(1));
    HomPoly base = *this;
    while (e > 0) {
      if (e & 1) r = r * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return r;
  }

  Rat eval(const std::array<Rat, 3>& p) const {
    if (terms_.empty()) return Rat(0);
    std::array<std::vector<Rat>, 3> pw;
    for (int v = 0; v < 3; ++v) {
      auto& row = pw[static_cast<std::size_t>(v)];
      row.resize(static_cast<std::size_t>(deg_) + 1);
      row[0] = 1;
      for (int k = 1; k <= deg_; ++k) row[static_cast<std::size_t>(k)] = row[static_cast<std::size_t>(k - 1)] * p[static_cast<std::size_t>(v)];
    }
    Rat acc = 0;
    for (const auto& [m, c] : terms_) {
      acc += c * pw[0][static_cast<std::size_t>(m.x)] * pw[1][static_cast<std::size_t>(m.y)] * pw[2][static_cast<std::size_t>(m.z)];
    }
    return acc;
  }
  Rat eval(const Point& p) const { return eval(p.coords()); }

  HomPoly derivative(int v) const {
    std::vector<Term> out;
    for (const auto& [m, c] : terms_) {
      int e = m[v];
      if (e == 0) continue;
      Mono3 n = m;
      if (v == 0) --n.x; else if (v == 1) --n.y; else --n.z;
      out.push_back({n, c * e});
    }
    return from_terms(std::max(deg_ - 1, 0), std::move(out));
  }

  /// Primitive integer coefficients with positive leading coefficient.
  /// The zero form is returned unchanged.
  HomPoly canonical() const {
    if (terms_.empty()) return *this;
    auto [s, ip] = integerize();
    HomPoly r = from_int(ip, Rat(1));
    if (r.leading_coeff() < 0) r = -r;
    return r;
  }

  /// Equality up to a nonzero rational scalar.
  bool proportional(const HomPoly& o) const {
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    return canonical() == o.canonical();
  }

  /// this == s * integer-poly with primitive integer part.
  std::pair<Rat, detail::IntPoly> integerize() const {
    detail::IntPoly ip;
    ip.deg = deg_;
    if (terms_.empty()) return {Rat(0), ip};
    Int den = 1;
    for (const auto& [m, c] : terms_) den = lcm_int(den, c.get_den());
    Int g = 0;
    std::vector<Int> nums;
    nums.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      Int v = c.get_num() * (den / c.get_den());
      g = gcd_int(g, v);
      nums.push_back(std::move(v));
    }
    ip.terms.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      Int v;
      mpz_divexact(v.get_mpz_t(), nums[i].get_mpz_t(), g.get_mpz_t());
      ip.terms.push_back({terms_[i].first.x, terms_[i].first.y, std::move(v)});
    }
    return {make_rat(g, den), ip};
  }

  static HomPoly from_int(const detail::IntPoly& ip, const Rat& scale) {
    HomPoly r;
    r.deg_ = ip.deg;
    if (scale == 0) return r;
    r.terms_.reserve(ip.terms.size());
    for (const auto& t : ip.terms) {
      Rat c(t.c);
      c *= scale;
      r.terms_.push_back({Mono3{t.ex, t.ey, ip.deg - t.ex - t.ey}, std::move(c)});
    }
    return r;
  }

 private:
  static HomPoly combine(const HomPoly& a, const HomPoly& b, bool subtract) {
    if (!a.is_zero() && !b.is_zero() && a.deg_ != b.deg_) {
      throw Error(Errc::DegreeMismatch, "adding forms of degree " + std::to_string(a.deg_) +
                                            " and " + std::to_string(b.deg_));
    }
    HomPoly r;
    r.deg_ = a.is_zero() ? b.deg_ : a.deg_;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() ||
          (i < a.terms_.size() && grlex_greater(a.terms_[i].first, b.terms_[j].first))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || grlex_greater(b.terms_[j].first, a.terms_[i].first)) {
        r.terms_.push_back({b.terms_[j].first, subtract ? Rat(-b.terms_[j].second) : b.terms_[j].second});
        ++j;
      } else {
        Rat v = subtract ? Rat(a.terms_[i].second - b.terms_[j].second)
                         : Rat(a.terms_[i].second + b.terms_[j].second);
        if (v != 0) r.terms_.push_back({a.terms_[i].first, std::move(v)});
        ++i;
        ++j;
      }
    }
    if (r.terms_.empty() && a.is_zero() != b.is_zero()) r.deg_ = a.is_zero() ? b.deg_ : a.deg_;
    return r;
  }

  int deg_ = 0;
  std::vector<Term> terms_;
};

/// Sum in canonical form (primitive integer, positive leading coefficient).
inline HomPoly poly_add(const HomPoly& a, const HomPoly& b) { return (a + b).canonical(); }

/// Product in canonical form.
inline HomPoly poly_mul(const HomPoly& a, const HomPoly& b) { return (a * b).canonical(); }

using Triple = std::array<HomPoly, 3>;

inline HomPoly X() { return HomPoly::var(0); }
inline HomPoly Y() { return HomPoly::var(1); }
inline HomPoly Z() { return HomPoly::var(2); }

/// F(phi_0, phi_1, phi_2). All three components must share one degree.
inline HomPoly substitute(const HomPoly& F, const Triple& phi) {
  int d = -1;
  for (const auto& c : phi) {
    if (c.is_zero()) continue;
    if (d >= 0 && c.degree() != d) {
      throw Error(Errc::DegreeMismatch, "substitution components have unequal degrees");
    }
    d = c.degree();
  }
  if (d < 0) {
    // All components zero: only a constant survives.
    return F.is_constant() ? F : HomPoly::zero(0);
  }
  for (const auto& c : phi) {
    if (!c.is_zero() && c.degree() != d) throw Error(Errc::DegreeMismatch, "substitution components have unequal degrees");
  }
  const int n = F.degree();
  const int out_deg = n * d;
  if (F.is_zero()) return HomPoly::zero(out_deg);

  // Integerize each component: phi_i = s_i * G_i, then fold s_i into F.
  std::array<Rat, 3> s;
  std::array<detail::IntPoly, 3> G;
  for (std::size_t i = 0; i < 3; ++i) {
    if (phi[i].is_zero()) {
      s[i] = 0;
      G[i].deg = d;
    } else {
      auto [si, gi] = phi[i].integerize();
      s[i] = si;
      G[i] = std::move(gi);
    }
  }
  std::vector<HomPoly::Term> folded;
  for (const auto& [m, c] : F.terms()) {
    Rat v = c;
    for (int k = 0; k < m.x; ++k) v *= s[0];
    for (int k = 0; k < m.y; ++k) v *= s[1];
    for (int k = 0; k < m.z; ++k) v *= s[2];
    if (v != 0) folded.push_back({m, v});
  }
  HomPoly Ff = HomPoly::from_terms(n, std::move(folded));
  if (Ff.is_zero()) return HomPoly::zero(out_deg);
  auto [scale, FI] = Ff.integerize();

  // Powers of G_2.
  std::vector<detail::IntPoly> z_pow(static_cast<std::size_t>(n) + 1);
  z_pow[0].deg = 0;
  z_pow[0].terms.push_back({0, 0, Int(1)});
  for (int k = 1; k <= n; ++k) z_pow[static_cast<std::size_t>(k)] = detail::int_mul(z_pow[static_cast<std::size_t>(k - 1)], G[2]);

  // Coefficients grouped by x-exponent then y-exponent.
  std::vector<std::vector<const Int*>> coef(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) coef[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(n - i) + 1, nullptr);
  for (const auto& t : FI.terms) coef[static_cast<std::size_t>(t.ex)][static_cast<std::size_t>(t.ey)] = &t.c;

  auto inner = [&](int i) {
    // sum_j c_{i,j} G1^j G2^(m-j) by Horner in G1, m = n - i.
    const int m = n - i;
    const auto& row = coef[static_cast<std::size_t>(i)];
    detail::IntPoly S;
    S.deg = 0;
    if (row[static_cast<std::size_t>(m)]) S.terms.push_back({0, 0, *row[static_cast<std::size_t>(m)]});
    for (int j = m - 1; j >= 0; --j) {
      detail::IntPoly next = S.terms.empty() ? detail::IntPoly{S.deg + d, {}} : detail::int_mul(S, G[1]);
      next.deg = d * (m - j);
      if (row[static_cast<std::size_t>(j)]) next = detail::int_add_scaled(next, z_pow[static_cast<std::size_t>(m - j)], *row[static_cast<std::size_t>(j)]);
      S = std::move(next);
    }
    S.deg = d * m;
    return S;
  };

  detail::IntPoly R = inner(n);
  for (int i = n - 1; i >= 0; --i) {
    detail::IntPoly next = R.terms.empty() ? detail::IntPoly{d * (n - i), {}} : detail::int_mul(R, G[0]);
    next.deg = d * (n - i);
    detail::IntPoly Fi = inner(i);
    if (!Fi.terms.empty()) next = detail::int_add_scaled(next, Fi, Int(1));
    R = std::move(next);
  }
  R.deg = out_deg;
  return HomPoly::from_int(R, scale);
}

/// Exact division A / B. Throws NotDivisible when B does not divide A.
/// The quotient satisfies A = B * Q exactly.
inline HomPoly exact_div(const HomPoly& A, const HomPoly& B) {
  if (B.is_zero()) throw Error(Errc::DivisionByZero, "division by the zero polynomial");
  const int qd = A.degree() - B.degree();
  if (A.is_zero()) return HomPoly::zero(std::max(qd, 0));
  if (qd < 0) throw Error(Errc::NotDivisible, "divisor has larger degree");
  auto [sa, ia] = A.integerize();
  auto [sb, ib] = B.integerize();
  const int n = A.degree();
  std::vector<Int> rem(detail::tri(static_cast<std::size_t>(n) + 1));
  for (auto& t : ia.terms) rem[detail::dense_index(n, t.ex, t.ey)] = t.c;
  const auto& lead = ib.terms.front();
  const int lz = ib.deg - lead.ex - lead.ey;
  std::vector<detail::IntPoly::Term> qterms;
  for (int ex = n; ex >= 0; --ex) {
    for (int ey = n - ex; ey >= 0; --ey) {
      Int& r = rem[detail::dense_index(n, ex, ey)];
      if (r == 0) continue;
      const int ez = n - ex - ey;
      const int qx = ex - lead.ex, qy = ey - lead.ey, qz = ez - lz;
      if (qx < 0 || qy < 0 || qz < 0) throw Error(Errc::NotDivisible, "leading monomial not divisible");
      if (!mpz_divisible_p(r.get_mpz_t(), lead.c.get_mpz_t())) {
        throw Error(Errc::NotDivisible, "coefficient not divisible");
      }
      Int q;
      mpz_divexact(q.get_mpz_t(), r.get_mpz_t(), lead.c.get_mpz_t());
      for (const auto& t : ib.terms) {
        Int& slot = rem[detail::dense_index(n, qx + t.ex, qy + t.ey)];
        mpz_submul(slot.get_mpz_t(), q.get_mpz_t(), t.c.get_mpz_t());
      }
      qterms.push_back({qx, qy, std::move(q)});
    }
  }
  detail::IntPoly Q;
  Q.deg = qd;
  Q.terms = std::move(qterms);
  return HomPoly::from_int(Q, sa / sb);
}

/// Whether B divides A.
inline bool divides(const HomPoly& B, const HomPoly& A) {
  try {
    (void)exact_div(A, B);
    return true;
  } catch (const Error& e) {
    if (e.code() == Errc::NotDivisible) return false;
    throw;
  }
}

/// Linear forms a0 x + a1 y + a2 z.
inline HomPoly linear_form(const Rat& a0, const Rat& a1, const Rat& a2) {
  return HomPoly::from_terms(1, {{Mono3{1, 0, 0}, a0}, {Mono3{0, 1, 0}, a1}, {Mono3{0, 0, 1}, a2}});
}

/// 3x3 rational matrix acting on column vectors.
using Mat3 = std::array<std::array<Rat, 3>, 3>;

/// The triple of linear forms (M * (x, y, z)^T).
inline Triple linear_triple(const Mat3& M) {
  return {linear_form(M[0][0], M[0][1], M[0][2]), linear_form(M[1][0], M[1][1], M[1][2]),
          linear_form(M[2][0], M[2][1], M[2][2])};
}

inline Rat det3(const Mat3& M) {
  return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
         M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
         M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
}

inline Mat3 inverse3(const Mat3& M) {
  Rat d = det3(M);
  if (d == 0) throw Error(Errc::Degenerate, "singular 3x3 matrix");
  Mat3 R;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      R[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          (M[static_cast<std::size_t>(i1)][static_cast<std::size_t>(j1)] * M[static_cast<std::size_t>(i2)][static_cast<std::size_t>(j2)] -
           M[static_cast<std::size_t>(i1)][static_cast<std::size_t>(j2)] * M[static_cast<std::size_t>(i2)][static_cast<std::size_t>(j1)]) / d;
    }
  }
  return R;
}

inline Mat3 mat_mul(const Mat3& A, const Mat3& B) {
  Mat3 R;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Rat s = 0;
      for (std::size_t k = 0; k < 3; ++k) s += A[i][k] * B[k][j];
      R[i][j] = s;
    }
  return R;
}

inline std::array<Rat, 3> mat_apply(const Mat3& M, const std::array<Rat, 3>& v) {
  std::array<Rat, 3> r;
  for (std::size_t i = 0; i < 3; ++i) r[i] = M[i][0] * v[0] + M[i][1] * v[1] + M[i][2] * v[2];
  return r;
}

/// Columns p, u, v where u, v are coordinate vectors completing p to a basis.
inline Mat3 local_frame(const Point& p) {
  const int k = p.pivot();
  Mat3 M;
  for (int i = 0; i < 3; ++i) M[static_cast<std::size_t>(i)][0] = p[i];
  int col = 1;
  for (int i = 0; i < 3; ++i) {
    if (i == k) continue;
    for (int r = 0; r < 3; ++r) M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] = (r == i) ? 1 : 0;
    ++col;
  }
  return M;
}

/// F in the frame (p, u, v): the x-variable is the weight on p.
inline HomPoly localize(const HomPoly& F, const Point& p) { return substitute(F, linear_triple(local_frame(p))); }

/// Multiplicity of F at p (0 if F(p) != 0). Infinite (degree+1) for F = 0.
inline int vanishing_order(const HomPoly& F, const Point& p) {
  if (F.is_zero()) return F.degree() + 1;
  HomPoly G = localize(F, p);
  int m = G.degree() + 1;
  for (const auto& [mono, c] : G.terms()) m = std::min(m, mono.y + mono.z);
  return m;
}

/// Lowest-order part of F at p as a binary form in the local (y, z) frame.
inline HomPoly tangent_cone(const HomPoly& F, const Point& p) {
  HomPoly G = localize(F, p);
  const int m = vanishing_order(F, p);
  std::vector<HomPoly::Term> out;
  for (const auto& [mono, c] : G.terms()) {
    if (mono.y + mono.z == m) out.push_back({Mono3{0, mono.y, mono.z}, c});
  }
  return HomPoly::from_terms(m, std::move(out));
}

}  // namespace cremona
