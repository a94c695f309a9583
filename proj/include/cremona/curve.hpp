#pragma once

// Plane curves with ordinary singularities, linear systems with assigned
// base multiplicities, adjoints, and membership tests for Dec(C) / Ine(C).

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cremona/linalg.hpp"
#include "cremona/map.hpp"

namespace cremona {

/// Irreducible plane curve with declared ordinary singular points.
class PlaneCurve {
 public:
  const HomPoly& F() const { return F_; }
  int degree() const { return F_.degree(); }
  const std::vector<std::pair<Point, int>>& sing() const { return sing_; }

  /// Declared multiplicity at p: the declared value, 1 for other points of
  /// the curve, 0 off the curve.
  int multiplicity_at(const Point& p) const {
    for (const auto& [q, m] : sing_)
      if (q == p) return m;
    return F_.eval(p) == 0 ? 1 : 0;
  }

 private:
  friend PlaneCurve make_curve(const HomPoly&, const std::vector<std::pair<Point, int>>&, std::uint64_t);
  HomPoly F_;
  std::vector<std::pair<Point, int>> sing_;
};

namespace detail {

/// Degrees of the irreducible factors of F restricted to a random line, mod a
/// random prime; empty when the restriction is not squarefree of full degree.
inline std::vector<int> line_factor_pattern(const HomPoly& F, std::mt19937_64& rng) {
  const modp::u32 p = modp::random_prime(rng);
  const modp::Field K(p);
  auto [s, I] = F.integerize();
  const ModForm M = reduce_form(I, K);
  std::uniform_int_distribution<modp::u32> dist(0, p - 1);
  const modp::u32 a[3] = {dist(rng), dist(rng), dist(rng)};
  const modp::u32 b[3] = {dist(rng), dist(rng), dist(rng)};
  std::vector<modp::u32> ts, vals, scratch;
  for (int i = 0; i <= F.degree(); ++i) {
    const modp::u32 t = static_cast<modp::u32>(i);
    ts.push_back(t);
    vals.push_back(eval_form(M, K, K.add(a[0], K.mul(t, b[0])), K.add(a[1], K.mul(t, b[1])),
                             K.add(a[2], K.mul(t, b[2])), scratch));
  }
  modp::Poly f = modp::interpolate(K, ts, vals);
  if (modp::deg(f) != F.degree()) return {};
  if (modp::deg(modp::gcd(K, f, modp::derivative(K, f))) > 0) return {};
  return modp::factor_degrees(K, f);
}

}  // namespace detail

/// Probabilistic irreducibility over Q: returns true once the possible factor
/// degrees compatible with all sampled line restrictions are exhausted.
/// A false result means no certificate was found (not a proof of reducibility).
inline bool irreducibility_certified(const HomPoly& F, std::uint64_t seed = 5, int max_lines = 120) {
  const int n = F.degree();
  if (n <= 1) return !F.is_zero();
  std::set<int> possible;
  for (int k = 1; k < n; ++k) possible.insert(k);
  std::mt19937_64 rng(seed);
  for (int line = 0; line < max_lines && !possible.empty(); ++line) {
    auto pattern = detail::line_factor_pattern(F, rng);
    if (pattern.empty()) continue;
    std::vector<char> reach(static_cast<std::size_t>(n) + 1, 0);
    reach[0] = 1;
    for (int d : pattern)
      for (int k = n; k >= d; --k)
        if (reach[static_cast<std::size_t>(k - d)]) reach[static_cast<std::size_t>(k)] = 1;
    for (auto it = possible.begin(); it != possible.end();) {
      if (!reach[static_cast<std::size_t>(*it)]) it = possible.erase(it);
      else ++it;
    }
  }
  return possible.empty();
}

/// Whether a binary form has no repeated factor.
inline bool binary_squarefree(const HomPoly& T) {
  if (T.degree() <= 1) return !T.is_zero();
  std::vector<HomPoly> parts{T};
  for (int v = 0; v < 3; ++v) {
    HomPoly d = T.derivative(v);
    if (!d.is_zero()) parts.push_back(d);
  }
  return poly_gcd(parts).degree() == 0;
}

/// Validates the declared singularities and spot-checks irreducibility.
inline PlaneCurve make_curve(const HomPoly& F, const std::vector<std::pair<Point, int>>& sing,
                             std::uint64_t seed = 5) {
  if (F.is_zero() || F.degree() < 1) throw Error(Errc::ZeroInput, "a curve needs a nonconstant equation");
  for (std::size_t i = 0; i < sing.size(); ++i) {
    for (std::size_t j = i + 1; j < sing.size(); ++j) {
      if (sing[i].first == sing[j].first) throw Error(Errc::CoincidentPoints, "duplicate point " + sing[i].first.str());
    }
  }
  for (const auto& [p, m] : sing) {
    if (m < 2) throw Error(Errc::Precondition, "declared multiplicity must be at least 2 at " + p.str());
    const int actual = vanishing_order(F, p);
    if (actual != m) {
      throw Error(Errc::Verification, "declared multiplicity " + std::to_string(m) + " at " + p.str() +
                                          " but the curve has multiplicity " + std::to_string(actual));
    }
    if (!binary_squarefree(tangent_cone(F, p))) {
      throw Error(Errc::Verification, "singularity at " + p.str() + " is not ordinary (repeated tangent)");
    }
  }
  if (!irreducibility_certified(F, seed)) {
    throw Error(Errc::Verification, "irreducibility spot check failed: a factorization could not be ruled out");
  }
  PlaneCurve c;
  c.F_ = F.canonical();
  c.sing_ = sing;
  return c;
}

inline long long genus_formula(int n, const std::vector<int>& mults) {
  long long g = static_cast<long long>(n - 1) * (n - 2) / 2;
  for (int m : mults) g -= static_cast<long long>(m) * (m - 1) / 2;
  return g;
}

inline int genus_ordinary(const PlaneCurve& C) {
  std::vector<int> m;
  for (const auto& s : C.sing()) m.push_back(s.second);
  const long long g = genus_formula(C.degree(), m);
  if (g < 0) throw Error(Errc::Inconsistent, "declared singularities give negative genus " + std::to_string(g));
  return static_cast<int>(g);
}

// ---------------------------------------------------------------------------
// Linear systems

struct LinearSystem {
  int degree = 0;
  std::vector<std::pair<Point, int>> conditions;
  std::vector<HomPoly> basis;

  int projective_dimension() const { return static_cast<int>(basis.size()) - 1; }
};

/// Monomials of degree d in decreasing grlex order.
inline std::vector<Mono3> monomials(int d) {
  std::vector<Mono3> out;
  for (int ex = d; ex >= 0; --ex)
    for (int ey = d - ex; ey >= 0; --ey) out.push_back({ex, ey, d - ex - ey});
  return out;
}

namespace detail {

inline Rat falling(int e, int k) {
  Rat r = 1;
  for (int i = 0; i < k; ++i) r *= (e - i);
  return r;
}

inline Rat rpow(const Rat& b, int e) {
  Rat r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

/// Rows imposing that all partials of order m - 1 vanish at p.
inline void append_conditions(RatMatrix& rows, const std::vector<Mono3>& monos, const Point& p, int m) {
  const int k = m - 1;
  for (int a = k; a >= 0; --a) {
    for (int b = k - a; b >= 0; --b) {
      const int c = k - a - b;
      std::vector<Rat> row(monos.size());
      for (std::size_t i = 0; i < monos.size(); ++i) {
        const Mono3& mo = monos[i];
        if (mo.x < a || mo.y < b || mo.z < c) continue;
        row[i] = falling(mo.x, a) * falling(mo.y, b) * falling(mo.z, c) * rpow(p[0], mo.x - a) *
                 rpow(p[1], mo.y - b) * rpow(p[2], mo.z - c);
      }
      rows.push_back(std::move(row));
    }
  }
}

}  // namespace detail

/// All forms of degree d with multiplicity at least m at each assigned point.
inline LinearSystem linear_system(int d, const std::vector<std::pair<Point, int>>& conditions) {
  if (d < 0) throw Error(Errc::Precondition, "negative degree");
  for (std::size_t i = 0; i < conditions.size(); ++i)
    for (std::size_t j = i + 1; j < conditions.size(); ++j)
      if (conditions[i].first == conditions[j].first) throw Error(Errc::CoincidentPoints, "repeated condition point");
  LinearSystem L;
  L.degree = d;
  L.conditions = conditions;
  const auto monos = monomials(d);
  RatMatrix rows;
  for (const auto& [p, m] : conditions) {
    // Partials above order d vanish identically; multiplicity d + 1 already forces zero.
    if (m >= 1) detail::append_conditions(rows, monos, p, std::min(m, d + 1));
  }
  for (const auto& v : nullspace(rows, monos.size())) {
    std::vector<HomPoly::Term> t;
    for (std::size_t i = 0; i < monos.size(); ++i)
      if (v[i] != 0) t.push_back({monos[i], v[i]});
    L.basis.push_back(HomPoly::from_terms(d, std::move(t)).canonical());
  }
  for (const auto& B : L.basis) {
    for (const auto& [p, m] : conditions) {
      if (vanishing_order(B, p) < m) throw Error(Errc::Verification, "basis element violates a condition at " + p.str());
    }
  }
  return L;
}

/// Coordinates of G in the span of `basis`, if it lies there.
inline std::optional<std::vector<Rat>> span_coordinates(const std::vector<HomPoly>& basis, const HomPoly& G) {
  if (basis.empty()) return G.is_zero() ? std::optional<std::vector<Rat>>(std::vector<Rat>{}) : std::nullopt;
  const int d = basis.front().degree();
  if (!G.is_zero() && G.degree() != d) return std::nullopt;
  const auto monos = monomials(d);
  RatMatrix M(monos.size(), std::vector<Rat>(basis.size()));
  std::vector<Rat> rhs(monos.size());
  for (std::size_t i = 0; i < monos.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) M[i][j] = basis[j].coeff(monos[i]);
    rhs[i] = G.coeff(monos[i]);
  }
  return solve(M, rhs, basis.size());
}

// ---------------------------------------------------------------------------
// Adjoints

inline LinearSystem adjoint(const PlaneCurve& C) {
  if (C.degree() < 3) throw Error(Errc::Precondition, "adjoint needs a curve of degree at least 3");
  std::vector<std::pair<Point, int>> cond;
  for (const auto& [p, m] : C.sing()) cond.push_back({p, m - 1});
  LinearSystem L = linear_system(C.degree() - 3, cond);
  const int g = genus_ordinary(C);
  if (static_cast<int>(L.basis.size()) != g) {
    throw Error(Errc::Inconsistent, "adjoint system has projective dimension " +
                                        std::to_string(L.projective_dimension()) + " but g - 1 = " +
                                        std::to_string(g - 1));
  }
  return L;
}

struct TowerLevel {
  int degree = 0;
  std::vector<std::pair<Point, int>> conditions;
  int basis_size = 0;
  long long genus_proxy = 0;
  bool mismatch = false;  ///< basis size differs from the previous level's genus proxy
};

/// Iterated assigned adjoints (d, {m}) -> (d - 3, {m - 1}), stopping once the
/// genus proxy is at most 1 or the system is empty.
inline std::vector<TowerLevel> adjoint_tower(const PlaneCurve& C) {
  std::vector<TowerLevel> tower;
  int d = C.degree();
  std::vector<std::pair<Point, int>> cond = C.sing();
  long long prev_genus = genus_ordinary(C);
  while (d >= 3) {
    std::vector<std::pair<Point, int>> next;
    for (const auto& [p, m] : cond)
      if (m >= 2) next.push_back({p, m - 1});
    d -= 3;
    LinearSystem L = linear_system(d, next);
    TowerLevel lev;
    lev.degree = d;
    lev.conditions = next;
    lev.basis_size = static_cast<int>(L.basis.size());
    std::vector<int> ms;
    for (const auto& c : next) ms.push_back(c.second);
    lev.genus_proxy = genus_formula(d, ms);
    lev.mismatch = lev.basis_size != prev_genus;
    tower.push_back(lev);
    if (lev.basis_size == 0 || lev.genus_proxy <= 1) break;
    prev_genus = lev.genus_proxy;
    cond = next;
  }
  return tower;
}

// ---------------------------------------------------------------------------
// Dec / Ine membership

/// The exceptional cofactor E with F o phi = F * E, or nullopt.
inline std::optional<HomPoly> preserves(const CremonaMap& phi, const PlaneCurve& C) {
  const HomPoly Fphi = substitute(C.F(), phi.components());
  if (Fphi.is_zero()) return std::nullopt;
  try {
    HomPoly E = exact_div(Fphi, C.F());
    if (E.degree() != C.degree() * (phi.degree() - 1)) {
      throw Error(Errc::Inconsistent, "cofactor degree differs from n(d - 1)");
    }
    return E;
  } catch (const Error& e) {
    if (e.code() == Errc::NotDivisible) return std::nullopt;
    throw;
  }
}

/// F divides every minor of [[x, y, z], [f0, f1, f2]].
inline bool fixes(const CremonaMap& phi, const PlaneCurve& C) {
  for (const auto& m : fixed_minors(phi)) {
    if (!m.is_zero() && !divides(C.F(), m)) return false;
  }
  return true;
}

/// Removes from G every factor it shares with J, repeatedly.
inline HomPoly saturate(HomPoly G, const HomPoly& J) {
  if (J.degree() == 0) return G.canonical();
  while (G.degree() > 0) {
    HomPoly g = poly_gcd(G, J);
    if (g.degree() == 0) break;
    G = exact_div(G, g);
  }
  return G.canonical();
}

/// phi(C), computed as the strict transform of C under psi = phi^{-1}.
inline HomPoly image_curve(const CremonaMap& phi, const CremonaMap& psi_inverse, const PlaneCurve& C) {
  if (!verify_inverse(phi, psi_inverse)) throw Error(Errc::Verification, "the supplied map is not an inverse");
  const HomPoly G = substitute(C.F(), psi_inverse.components());
  if (G.is_zero()) throw Error(Errc::ZeroInput, "the curve pulls back to zero");
  HomPoly D = saturate(G, jacobian(psi_inverse));
  if (D.degree() == 0) throw Error(Errc::Inconsistent, "saturation removed the whole curve");
  if (preserves(phi, C) && !D.proportional(C.F())) {
    throw Error(Errc::Inconsistent, "image of a preserved curve differs from the curve (over-saturation)");
  }
  return D;
}

// ---------------------------------------------------------------------------
// Base-point theorem

struct BasePointViolation {
  Point point;
  int curve_multiplicity = 0;
  std::string reason;
};

struct BasePointTheoremReport {
  int curve_degree = 0;
  std::vector<BasePointRecord> base_points;
  std::vector<BasePointViolation> violations;
  /// True when no point of C can satisfy 3 m = n, so no nonlinear map can pass.
  bool nonlinear_excluded = false;
  std::string caveat;
  bool pass() const { return violations.empty(); }
};

inline BasePointTheoremReport basepoint_theorem_check(const PlaneCurve& C, const CremonaMap& phi,
                                                      int image_degree_bound) {
  const int n = C.degree();
  for (const auto& [p, m] : C.sing()) {
    if (3 * m > n) throw Error(Errc::Precondition, "3 m_p > n at " + p.str());
  }
  if (image_degree_bound > n) throw Error(Errc::Precondition, "image degree bound exceeds the curve degree");
  BasePointTheoremReport r;
  r.curve_degree = n;
  r.caveat = "only proper rational base points are examined; non-rational and infinitely near base points are not";
  // Smooth points have multiplicity 1, declared points their multiplicity.
  bool some_point_can_pass = n == 3;
  for (const auto& [p, m] : C.sing())
    if (3 * m == n) some_point_can_pass = true;
  r.nonlinear_excluded = !some_point_can_pass;
  if (phi.degree() == 1) return r;
  r.base_points = rational_base_points(phi);
  for (const auto& b : r.base_points) {
    const int mq = C.multiplicity_at(b.point);
    if (mq == 0) {
      r.violations.push_back({b.point, 0, "base point not on the curve"});
    } else if (3 * mq != n) {
      r.violations.push_back({b.point, mq, "3 m_q = " + std::to_string(3 * mq) + " differs from n = " + std::to_string(n)});
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Halphen and Coble configurations

struct HalphenReport {
  int index = 0;
  int projective_dimension = -1;
  std::vector<HomPoly> basis;
  bool is_pencil() const { return projective_dimension == 1; }
};

inline HalphenReport halphen_check(const std::vector<Point>& points9, int n) {
  if (points9.size() != 9) throw Error(Errc::Precondition, "a Halphen configuration needs 9 points");
  if (n < 1) throw Error(Errc::Precondition, "index must be positive");
  std::vector<std::pair<Point, int>> cond;
  for (const auto& p : points9) cond.push_back({p, n});
  LinearSystem L = linear_system(3 * n, cond);
  HalphenReport r;
  r.index = n;
  r.projective_dimension = L.projective_dimension();
  r.basis = std::move(L.basis);
  return r;
}

/// A sextic whose declared (and verified) singularities are exactly ten
/// ordinary double points.
inline bool coble_check(const PlaneCurve& C) {
  if (C.degree() != 6 || C.sing().size() != 10) return false;
  for (const auto& s : C.sing())
    if (s.second != 2) return false;
  return true;
}

/// Whether phi maps the adjoint system of C into itself. Tested on random
/// members spanning the system: a member contracted by phi (an exceptional
/// curve) has no strict transform, so plain basis elements can mislead.
inline bool adjoint_stability(const CremonaMap& phi, const CremonaMap& psi_inverse, const PlaneCurve& C,
                              std::uint64_t seed = 13) {
  if (!preserves(phi, C)) throw Error(Errc::Precondition, "the map does not preserve the curve");
  if (!verify_inverse(phi, psi_inverse)) throw Error(Errc::Verification, "the supplied map is not an inverse");
  const LinearSystem adj = adjoint(C);
  if (adj.basis.empty()) throw Error(Errc::Precondition, "the adjoint system is empty");
  const std::size_t k = adj.basis.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-9, 9);
  RatMatrix R;
  do {
    R.assign(k, std::vector<Rat>(k));
    for (auto& row : R)
      for (auto& v : row) v = dist(rng);
  } while (rank(R, k) != k);
  const HomPoly J = jacobian(psi_inverse);
  for (const auto& row : R) {
    HomPoly A = HomPoly::zero(adj.degree);
    for (std::size_t i = 0; i < k; ++i) A = A + row[i] * adj.basis[i];
    const HomPoly S = saturate(substitute(A, psi_inverse.components()), J);
    if (S.degree() != adj.degree) return false;
    if (!span_coordinates(adj.basis, S)) return false;
  }
  return true;
}

}  // namespace cremona
