#pragma once

// Resultants of ternary forms and rational roots of binary forms.

#include <optional>
#include <random>

#include "cremona/gcd.hpp"

namespace cremona {

/// A resultant together with the locus where it may vanish spuriously.
struct ResultantReport {
  HomPoly value;      ///< Res_var(A, B) as a form in the two remaining variables
  HomPoly lead_gcd;   ///< gcd of the leading coefficients in `var`
  int degree = 0;     ///< deg A deg B - (deg A - m)(deg B - n), m, n the degrees in var
};

namespace detail {

/// Determinant of a square integer matrix (fraction-free Bareiss).
inline Int bareiss_det(std::vector<std::vector<Int>> M) {
  const std::size_t n = M.size();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && M[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(M[k], M[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = M[i][j] * M[k][k];
        mpz_submul(t.get_mpz_t(), M[i][k].get_mpz_t(), M[k][j].get_mpz_t());
        mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = M[k][k];
  }
  return sign > 0 ? M[n - 1][n - 1] : Int(-M[n - 1][n - 1]);
}

/// Coefficients (low to high) in the variable `var` of the integer form P
/// after setting the remaining variables (u, w) = (s, 1).
inline std::vector<Int> specialize(const IntPoly& P, int var, const Int& s) {
  const int other0 = var == 0 ? 1 : 0;
  std::vector<Int> c(static_cast<std::size_t>(P.deg) + 1);
  std::vector<Int> spow(static_cast<std::size_t>(P.deg) + 1);
  spow[0] = 1;
  for (int k = 1; k <= P.deg; ++k) spow[static_cast<std::size_t>(k)] = spow[static_cast<std::size_t>(k - 1)] * s;
  for (const auto& t : P.terms) {
    const int e[3] = {t.ex, t.ey, P.deg - t.ex - t.ey};
    mpz_addmul(c[static_cast<std::size_t>(e[var])].get_mpz_t(), t.c.get_mpz_t(),
               spow[static_cast<std::size_t>(e[other0])].get_mpz_t());
  }
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

inline std::vector<std::vector<Int>> sylvester(const std::vector<Int>& a, int m, const std::vector<Int>& b, int n) {
  const std::size_t N = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Int>> S(N, std::vector<Int>(N));
  auto coef = [](const std::vector<Int>& v, int i) {
    return static_cast<std::size_t>(i) < v.size() ? v[static_cast<std::size_t>(i)] : Int(0);
  };
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) S[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] = coef(a, m - i);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) S[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + i)] = coef(b, n - i);
  return S;
}

}  // namespace detail

/// Sylvester resultant eliminating `var` (0, 1, 2 for x, y, z). The result is
/// a form in the other two variables, stored in those variables.
inline ResultantReport resultant_report(const HomPoly& A, const HomPoly& B, int var) {
  if (A.is_zero() || B.is_zero()) throw Error(Errc::ZeroInput, "resultant of a zero polynomial");
  const int m = A.degree_in(var), n = B.degree_in(var);
  if (m <= 0 || n <= 0) throw Error(Errc::Precondition, "resultant needs positive degree in the eliminated variable");
  const int u = var == 0 ? 1 : 0;
  const int w = var == 2 ? 1 : 2;
  const int D = A.degree() * B.degree() - (A.degree() - m) * (B.degree() - n);
  auto [sa, IA] = A.integerize();
  auto [sb, IB] = B.integerize();

  // Evaluate at integer nodes s = 0..D and interpolate (Newton form over Q).
  std::vector<Rat> nodes, vals;
  for (int s = 0; s <= D; ++s) {
    auto ca = detail::specialize(IA, var, Int(s));
    auto cb = detail::specialize(IB, var, Int(s));
    ca.resize(static_cast<std::size_t>(m) + 1);
    cb.resize(static_cast<std::size_t>(n) + 1);
    nodes.emplace_back(s);
    vals.emplace_back(detail::bareiss_det(detail::sylvester(ca, m, cb, n)));
  }
  std::vector<Rat> dd = vals;
  for (std::size_t j = 1; j < dd.size(); ++j)
    for (std::size_t i = dd.size() - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - j]);
      if (i == j) break;
    }
  std::vector<Rat> poly;  // low to high in s
  for (std::size_t k = dd.size(); k-- > 0;) {
    std::vector<Rat> next(poly.size() + 1);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * nodes[k];
    }
    next[0] += dd[k];
    poly = std::move(next);
  }
  // Scale: Res(sa A', sb B') = sa^n sb^m Res(A', B').
  Rat scale = 1;
  for (int i = 0; i < n; ++i) scale *= sa;
  for (int i = 0; i < m; ++i) scale *= sb;
  std::vector<HomPoly::Term> terms;
  for (int j = 0; j <= D && static_cast<std::size_t>(j) < poly.size(); ++j) {
    if (poly[static_cast<std::size_t>(j)] == 0) continue;
    int e[3] = {0, 0, 0};
    e[u] = j;
    e[w] = D - j;
    terms.push_back({Mono3{e[0], e[1], e[2]}, poly[static_cast<std::size_t>(j)] * scale});
  }
  ResultantReport rep;
  rep.degree = D;
  rep.value = HomPoly::from_terms(D, std::move(terms));

  auto leading = [&](const HomPoly& P, int k) {
    std::vector<HomPoly::Term> t;
    for (const auto& [mono, c] : P.terms()) {
      if (mono[var] == k) {
        Mono3 r = mono;
        if (var == 0) r.x = 0; else if (var == 1) r.y = 0; else r.z = 0;
        t.push_back({r, c});
      }
    }
    return HomPoly::from_terms(P.degree() - k, std::move(t));
  };
  rep.lead_gcd = poly_gcd(leading(A, m), leading(B, n));
  return rep;
}

inline HomPoly resultant(const HomPoly& A, const HomPoly& B, int var) { return resultant_report(A, B, var).value; }

/// A rational root (u : w) of a binary form with its multiplicity; (u : w)
/// is normalized so that the last nonzero entry is 1.
struct BinaryRoot {
  Rat u, w;
  int mult = 1;
};

namespace detail {

/// Value of the integer polynomial c (low to high) at r modulo m.
inline Int eval_mod(const std::vector<Int>& c, const Int& r, const Int& m) {
  Int acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * r + c[i];
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

/// Rational roots of a squarefree integer polynomial (low-to-high coefficients,
/// nonzero constant term not required), via roots mod p, Hensel lifting and
/// rational reconstruction. Each candidate is checked exactly.
inline std::vector<Rat> rational_roots_squarefree(const std::vector<Int>& c, std::mt19937_64& rng) {
  std::vector<Rat> out;
  if (c.size() <= 1) return out;
  std::vector<Int> dc;
  for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * static_cast<unsigned long>(i));
  Int bound = abs_int(c.back());
  for (const auto& v : c) {
    if (v != 0) { bound = std::max(bound, abs_int(v)); break; }
  }
  Int need = 2 * bound * bound + 1;
  for (int attempt = 0; attempt < 200; ++attempt) {
    const modp::u32 p = modp::random_prime(rng);
    const modp::Field F(p);
    if (mod_word(c.back(), p) == 0) continue;
    modp::Poly f;
    for (const auto& v : c) f.push_back(F.from_int(v));
    modp::trim(f);
    if (modp::deg(modp::gcd(F, f, modp::derivative(F, f))) > 0) continue;
    for (modp::u32 r0 : modp::roots(F, f, rng)) {
      Int r = r0, m = p;
      while (m < need) {
        Int m2 = m * m;
        Int fv = eval_mod(c, r, m2), dv = eval_mod(dc, r, m2), inv;
        if (mpz_invert(inv.get_mpz_t(), dv.get_mpz_t(), m2.get_mpz_t()) == 0) break;
        r = r - fv * inv;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m2.get_mpz_t());
        m = m2;
      }
      auto q = rational_reconstruct(r, m);
      if (!q) continue;
      Rat acc = 0;
      for (std::size_t i = c.size(); i-- > 0;) acc = acc * *q + c[i];
      if (acc == 0) out.push_back(*q);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  throw Error(Errc::Verification, "no suitable prime for root finding");
}

}  // namespace detail

/// Rational roots of a nonzero binary form in the variables (a, b) (var
/// indices), with multiplicities.
inline std::vector<BinaryRoot> binary_form_roots(const HomPoly& Bf, int a = 0, int b = 1, std::uint64_t seed = 7) {
  if (Bf.is_zero()) throw Error(Errc::ZeroInput, "roots of the zero form");
  std::vector<BinaryRoot> out;
  const int n = Bf.degree();
  if (n == 0) return out;
  std::mt19937_64 rng(seed);
  auto lin = [&](const Rat& u, const Rat& w) {
    // w * var_a - u * var_b vanishes at (u : w).
    std::array<Rat, 3> c{Rat(0), Rat(0), Rat(0)};
    c[static_cast<std::size_t>(a)] = w;
    c[static_cast<std::size_t>(b)] = -u;
    return linear_form(c[0], c[1], c[2]);
  };
  auto multiplicity = [&](const HomPoly& L) {
    int k = 0;
    HomPoly cur = Bf;
    while (cur.degree() > 0) {
      try {
        cur = exact_div(cur, L);
        ++k;
      } catch (const Error& e) {
        if (e.code() != Errc::NotDivisible) throw;
        break;
      }
    }
    return k;
  };
  // Root at infinity (w = 0): var_b divides the form.
  if (int k = multiplicity(lin(Rat(1), Rat(0))); k > 0) out.push_back({Rat(1), Rat(0), k});
  // Squarefree part, dehomogenized at var_b = 1.
  HomPoly sq = Bf;
  HomPoly g = poly_gcd({Bf, Bf.derivative(a), Bf.derivative(b)});
  if (g.degree() > 0) sq = exact_div(Bf, g);
  auto [s, I] = sq.integerize();
  std::vector<Int> c(static_cast<std::size_t>(n) + 1);
  for (const auto& t : I.terms) {
    const int e[3] = {t.ex, t.ey, I.deg - t.ex - t.ey};
    c[static_cast<std::size_t>(e[a])] += t.c;
  }
  while (!c.empty() && c.back() == 0) c.pop_back();
  for (const Rat& r : detail::rational_roots_squarefree(c, rng)) {
    out.push_back({r, Rat(1), multiplicity(lin(r, Rat(1)))});
  }
  return out;
}

/// All rational points where every form in `forms` vanishes. The forms must
/// have no common factor (finitely many common zeros). Three projections from
/// random centers are combined so that every zero is cut out by two
/// projection lines that meet transversally; candidates are verified exactly.
inline std::vector<Point> common_rational_zeros(const std::vector<HomPoly>& forms, std::uint64_t seed = 11) {
  std::vector<HomPoly> fs;
  for (const auto& f : forms) {
    if (!f.is_zero()) fs.push_back(f);
  }
  if (fs.empty()) throw Error(Errc::ZeroInput, "common zeros of zero forms");
  for (const auto& f : fs) {
    if (f.degree() == 0) return {};
  }
  if (fs.size() == 1) throw Error(Errc::Degenerate, "a single form has infinitely many zeros");
  if (poly_gcd(fs).degree() > 0) throw Error(Errc::Degenerate, "forms share a common component");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-7, 7);
  auto combo = [&]() {
    HomPoly g = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) g = g + Rat(small(rng)) * fs[i];
    return g;
  };
  HomPoly g1, g2;
  for (int tries = 0;; ++tries) {
    if (tries > 50) throw Error(Errc::Degenerate, "could not find coprime combinations");
    g1 = fs.size() == 2 ? fs[0] : combo();
    g2 = fs.size() == 2 ? fs[1] : combo();
    if (g1.is_zero() || g2.is_zero()) continue;
    if (poly_gcd(g1, g2).degree() == 0) break;
    if (fs.size() == 2) throw Error(Errc::Degenerate, "forms share a common component");
  }

  std::vector<std::vector<std::array<Rat, 3>>> lines;
  while (lines.size() < 3) {
    Mat3 M;
    for (auto& r : M)
      for (auto& v : r) v = small(rng);
    if (det3(M) == 0) continue;
    const std::array<Rat, 3> center{M[0][2], M[1][2], M[2][2]};
    if (g1.eval(center) == 0 || g2.eval(center) == 0) continue;
    const Triple T = linear_triple(M);
    const HomPoly R = resultant(substitute(g1, T), substitute(g2, T), 2);
    if (R.is_zero()) continue;
    const Mat3 Minv = inverse3(M);
    std::vector<std::array<Rat, 3>> ls;
    for (const auto& root : binary_form_roots(R, 0, 1)) {
      // Line w X - u Y = 0 in the new coordinates, pulled back by M^{-1}.
      const std::array<Rat, 3> l{root.w, -root.u, Rat(0)};
      std::array<Rat, 3> orig;
      for (std::size_t j = 0; j < 3; ++j) orig[j] = l[0] * Minv[0][j] + l[1] * Minv[1][j] + l[2] * Minv[2][j];
      ls.push_back(orig);
    }
    lines.push_back(std::move(ls));
  }
  std::vector<Point> out;
  auto consider = [&](const std::array<Rat, 3>& a, const std::array<Rat, 3>& b) {
    const std::array<Rat, 3> q{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    if (q[0] == 0 && q[1] == 0 && q[2] == 0) return;
    Point pt(q);
    if (std::find(out.begin(), out.end(), pt) != out.end()) return;
    for (const auto& f : fs) {
      if (f.eval(pt) != 0) return;
    }
    out.push_back(pt);
  };
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      for (const auto& a : lines[i])
        for (const auto& b : lines[j]) consider(a, b);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cremona
