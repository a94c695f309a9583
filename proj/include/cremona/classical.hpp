#pragma once

// Classical constructions: the de Jonquieres group J_h, extensions of
// hyperelliptic automorphisms, the chord-tangent law on plane cubics,
// quadratic elements of Dec(cubic), and the Geiser and Bertini involutions.

#include <optional>
#include <random>
#include <vector>

#include "cremona/affine.hpp"
#include "cremona/curve.hpp"

namespace cremona {

// ---------------------------------------------------------------------------
// J_h

/// Element of J_h: the class of the matrix ((a1, h a2), (a2, a1)) modulo
/// Q(x)^*. Stored as coprime polynomials with the first nonzero one monic.
class JhElement {
 public:
  const UPoly& h() const { return h_; }
  const UPoly& a1() const { return a1_; }
  const UPoly& a2() const { return a2_; }
  int genus() const { return (h_.degree() - 2) / 2; }

  friend bool operator==(const JhElement& a, const JhElement& b) {
    return a.h_ == b.h_ && a.a1_ == b.a1_ && a.a2_ == b.a2_;
  }

  bool is_identity() const { return a2_.is_zero(); }

 private:
  friend JhElement jh_make(const UPoly&, const RatFunc1&, const RatFunc1&);
  UPoly h_, a1_, a2_;
};

inline JhElement jh_make(const UPoly& h, const RatFunc1& a1, const RatFunc1& a2) {
  if (h.degree() < 1) throw Error(Errc::Precondition, "h must have positive degree");
  if (!is_squarefree(h)) throw Error(Errc::Precondition, "h has multiple roots");
  // Clear denominators, then remove the common polynomial factor.
  UPoly p1 = a1.num() * a2.den(), p2 = a2.num() * a1.den();
  if (p1.is_zero() && p2.is_zero()) throw Error(Errc::Degenerate, "a1^2 - h a2^2 vanishes");
  if ((p1 * p1 - h * p2 * p2).is_zero()) throw Error(Errc::Degenerate, "a1^2 - h a2^2 vanishes");
  UPoly g = gcd(p1, p2);
  p1 = exact_quotient(p1, g);
  p2 = exact_quotient(p2, g);
  const Rat lead = p1.is_zero() ? p2.lead() : p1.lead();
  JhElement e;
  e.h_ = h;
  e.a1_ = p1 * UPoly(1 / lead);
  e.a2_ = p2 * UPoly(1 / lead);
  return e;
}

inline JhElement jh_identity(const UPoly& h) { return jh_make(h, RatFunc1(Rat(1)), RatFunc1(Rat(0))); }
inline JhElement jh_sigma(const UPoly& h) { return jh_make(h, RatFunc1(Rat(0)), RatFunc1(Rat(1))); }

inline JhElement jh_mul(const JhElement& a, const JhElement& b) {
  if (!(a.h() == b.h())) throw Error(Errc::Precondition, "elements of different groups J_h");
  const UPoly& h = a.h();
  return jh_make(h, RatFunc1(a.a1() * b.a1() + h * a.a2() * b.a2()), RatFunc1(a.a1() * b.a2() + a.a2() * b.a1()));
}

inline JhElement jh_inv(const JhElement& e) { return jh_make(e.h(), RatFunc1(e.a1()), RatFunc1(-e.a2())); }

/// (x, y) -> (x, (a1 y + h a2) / (a2 y + a1)).
inline AffineMap2 jh_to_affine(const JhElement& e) {
  const AffinePoly y = AffinePoly::y();
  const AffinePoly A1 = AffinePoly::from_x(e.a1()), A2 = AffinePoly::from_x(e.a2()), H = AffinePoly::from_x(e.h());
  AffineMap2 m;
  m.X = {AffinePoly::x(), AffinePoly(Rat(1))};
  m.Y = {A1 * y + H * A2, A2 * y + A1};
  return m;
}

/// Homogenization of an affine map (X, Y) = (a/b, c/e) as a Cremona map.
inline CremonaMap homogenize_affine(const AffineMap2& m) {
  // (x : y : 1) -> (a e : c b : b e).
  const AffinePoly f0 = m.X.num * m.Y.den, f1 = m.Y.num * m.X.den, f2 = m.X.den * m.Y.den;
  const int D = std::max({f0.degree(), f1.degree(), f2.degree()});
  return make_map({f0.homogenize(D), f1.homogenize(D), f2.homogenize(D)});
}

/// The Cremona map of e, certified against the affine formula on the chart
/// z = 1 at several rational points.
inline CremonaMap jh_homogenize(const JhElement& e, std::uint64_t seed = 3) {
  const AffineMap2 a = jh_to_affine(e);
  const CremonaMap m = homogenize_affine(a);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-30, 30);
  int checked = 0;
  for (int tries = 0; checked < 5 && tries < 200; ++tries) {
    const Rat x(dist(rng)), y(dist(rng));
    const Rat dy = a.Y.den.eval(x, y), dx = a.X.den.eval(x, y);
    if (dx == 0 || dy == 0) continue;
    const Point expect(a.X.num.eval(x, y) / dx, a.Y.num.eval(x, y) / dy, Rat(1));
    try {
      if (!(apply(m, Point(x, y, Rat(1))) == expect)) throw Error(Errc::Verification, "homogenized map disagrees on the chart");
      ++checked;
    } catch (const Error& err) {
      if (err.code() != Errc::IndeterminateAt) throw;
    }
  }
  if (checked < 5) throw Error(Errc::Verification, "too few sample points to certify the homogenization");
  return m;
}

/// Affine polynomial y^2 - h(x).
inline AffinePoly hyperelliptic_equation(const UPoly& h) {
  return AffinePoly::y() * AffinePoly::y() - AffinePoly::from_x(h);
}

/// (x, y) -> (mu(x), eps c(x) y), given h(mu(x)) = c(x)^2 h(x).
inline AffineMap2 extend_hyperelliptic_auto(const UPoly& h, const RatFunc1& mu, const RatFunc1& c, int eps) {
  if (eps != 1 && eps != -1) throw Error(Errc::Precondition, "eps must be 1 or -1");
  if (mu.num().degree() > 1 || mu.den().degree() > 1 || mu.num()[1] * mu.den()[0] == mu.num()[0] * mu.den()[1]) {
    throw Error(Errc::Precondition, "mu must be a Moebius transformation (ax + b)/(cx + d) with ad - bc != 0");
  }
  if (!(RatFunc1(h).compose(mu) == c * c * RatFunc1(h))) {
    throw Error(Errc::Precondition, "mu does not normalize h: h(mu(x)) != c(x)^2 h(x)");
  }
  AffineMap2 m;
  m.X = {AffinePoly::from_x(mu.num()), AffinePoly::from_x(mu.den())};
  m.Y = {AffinePoly(Rat(eps)) * AffinePoly::from_x(c.num()) * AffinePoly::y(), AffinePoly::from_x(c.den())};
  return m;
}

// ---------------------------------------------------------------------------
// Chord-tangent construction on plane cubics

namespace detail {
inline std::array<Rat, 3> cross(const std::array<Rat, 3>& a, const std::array<Rat, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline std::array<Rat, 3> gradient(const HomPoly& E, const Point& p) {
  return {E.derivative(0).eval(p), E.derivative(1).eval(p), E.derivative(2).eval(p)};
}
inline bool is_zero3(const std::array<Rat, 3>& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }
inline std::array<Rat, 3> lin(const Rat& a, const std::array<Rat, 3>& u, const Rat& b, const std::array<Rat, 3>& v) {
  return {a * u[0] + b * v[0], a * u[1] + b * v[1], a * u[2] + b * v[2]};
}
}  // namespace detail

/// Third intersection of the line pq (the tangent at p when p = q) with E.
inline Point cubic_third(const HomPoly& E, const Point& p, const Point& q) {
  if (E.degree() != 3) throw Error(Errc::Precondition, "not a cubic");
  if (E.eval(p) != 0 || E.eval(q) != 0) throw Error(Errc::Precondition, "point not on the cubic");
  std::array<Rat, 3> r;
  if (p == q) {
    const auto g = detail::gradient(E, p);
    if (detail::is_zero3(g)) throw Error(Errc::Degenerate, "singular point " + p.str() + " has no tangent");
    for (int i = 0; i < 3; ++i) {
      std::array<Rat, 3> e{Rat(0), Rat(0), Rat(0)};
      e[static_cast<std::size_t>(i)] = 1;
      r = detail::cross(g, e);
      if (!detail::is_zero3(r) && !detail::is_zero3(detail::cross(r, p.coords()))) break;
    }
    r = Point(r).coords();
  } else {
    r = q.coords();
  }
  // E(s p + t r) as a binary cubic in (s, t).
  const HomPoly R = restrict_to_line(E, p, Point(r));
  const Rat c30 = R.coeff({3, 0, 0}), c21 = R.coeff({2, 1, 0}), c12 = R.coeff({1, 2, 0}), c03 = R.coeff({0, 3, 0});
  (void)c30;
  if (p == q) {
    // R = t^2 (c12 s + c03 t): third root (s : t) = (c03 : -c12).
    if (c12 == 0 && c03 == 0) throw Error(Errc::Degenerate, "tangent line lies in the cubic");
    return Point(detail::lin(c03, p.coords(), -c12, r));
  }
  // R = s t (c21 s + c12 t): third root (s : t) = (c12 : -c21).
  if (c21 == 0 && c12 == 0) throw Error(Errc::Degenerate, "line lies in the cubic");
  return Point(detail::lin(c12, p.coords(), -c21, r));
}

inline Point cubic_neg(const HomPoly& E, const Point& o, const Point& q) {
  return cubic_third(E, q, cubic_third(E, o, o));
}

inline Point cubic_add(const HomPoly& E, const Point& o, const Point& p, const Point& q) {
  return cubic_third(E, cubic_third(E, p, q), o);
}

/// k * p in the group law with origin o (k may be negative).
inline Point cubic_mul(const HomPoly& E, const Point& o, const Point& p, long long k) {
  Point acc = o, base = k < 0 ? cubic_neg(E, o, p) : p;
  unsigned long long n = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
  while (n) {
    if (n & 1) acc = cubic_add(E, o, acc, base);
    n >>= 1;
    if (n) base = cubic_add(E, o, base, base);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Linear calibration

/// The linear map A with A u_j proportional to v_j for the first four
/// correspondences (a projective frame), verified on the remaining ones.
inline Mat3 calibrate_linear(const std::vector<Point>& us, const std::vector<Point>& vs) {
  if (us.size() < 4 || us.size() != vs.size()) throw Error(Errc::Precondition, "need at least four correspondences");
  // Unknowns: a_00..a_22, then lambda_0..lambda_3.
  RatMatrix M;
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < 3; ++i) {
      std::vector<Rat> row(13);
      for (std::size_t k = 0; k < 3; ++k) row[3 * i + k] = us[j][static_cast<int>(k)];
      row[9 + j] = -vs[j][static_cast<int>(i)];
      M.push_back(std::move(row));
    }
  }
  auto ker = nullspace(M, 13);
  if (ker.size() != 1) throw Error(Errc::Verification, "calibration points are not in general position");
  Mat3 A;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k) A[i][k] = ker[0][3 * i + k];
  if (det3(A) == 0) throw Error(Errc::Verification, "calibration produced a singular matrix");
  for (std::size_t j = 4; j < us.size(); ++j) {
    if (!(Point(mat_apply(A, us[j].coords())) == vs[j])) throw Error(Errc::Verification, "calibration check failed");
  }
  return A;
}

inline CremonaMap compose_linear(const Mat3& A, const CremonaMap& m) {
  Triple t;
  for (std::size_t i = 0; i < 3; ++i) {
    t[i] = A[i][0] * m[0] + A[i][1] * m[1] + A[i][2] * m[2];
  }
  return make_map(t);
}

// ---------------------------------------------------------------------------
// Quadratic elements of Dec(smooth cubic)

/// A degree-2 map preserving E whose restriction to E is the translation
/// x -> x + s (group law with origin o). Base points p, q and
/// r = kappa + 3s - p - q, where three points of E are collinear iff they sum
/// to kappa = third(o, o).
inline CremonaMap dec_cubic_quadratic(const HomPoly& E, const Point& o, const Point& p, const Point& q, const Point& s) {
  const Point kappa = cubic_third(E, o, o);
  const Point r = cubic_add(E, o, cubic_add(E, o, kappa, cubic_mul(E, o, s, 3)),
                            cubic_neg(E, o, cubic_add(E, o, p, q)));
  if (r == p || r == q || p == q) throw Error(Errc::Degenerate, "base points coincide");
  Mat3 P;
  for (int i = 0; i < 3; ++i) {
    P[static_cast<std::size_t>(i)][0] = p[i];
    P[static_cast<std::size_t>(i)][1] = q[i];
    P[static_cast<std::size_t>(i)][2] = r[i];
  }
  if (det3(P) == 0) throw Error(Errc::Degenerate, "base points are collinear (s is 3-torsion)");
  const Mat3 M = inverse3(P);
  const Triple l = linear_triple(M);
  const CremonaMap phi0 = make_map({l[1] * l[2], l[0] * l[2], l[0] * l[1]});
  // Sample points x_j on E away from the base points.
  std::vector<Point> us, vs;
  Point x = s;
  for (int k = 1; us.size() < 8 && k < 200; ++k) {
    x = cubic_add(E, o, x, k % 2 ? p : q);
    if (x == p || x == q || x == r) continue;
    Point img = apply(phi0, x);
    bool dup = false;
    for (const auto& u : us) dup = dup || u == img;
    if (dup) continue;
    us.push_back(img);
    vs.push_back(cubic_add(E, o, x, s));
  }
  const Mat3 L = calibrate_linear(us, vs);
  CremonaMap g = compose_linear(L, phi0);
  const PlaneCurve C = make_curve(E, {});
  if (!preserves(g, C)) throw Error(Errc::Verification, "constructed map does not preserve the cubic");
  return g;
}

// ---------------------------------------------------------------------------
// Pencils of cubics, Geiser and Bertini

/// The ninth base point of the pencil of cubics through 8 points.
inline Point pencil_ninth_point(const std::vector<Point>& points8) {
  if (points8.size() != 8) throw Error(Errc::Precondition, "need exactly 8 points");
  std::vector<std::pair<Point, int>> cond;
  for (const auto& p : points8) cond.push_back({p, 1});
  const LinearSystem L = linear_system(3, cond);
  if (L.basis.size() != 2) {
    throw Error(Errc::Degenerate, "cubics through the points form a system of dimension " +
                                      std::to_string(L.projective_dimension()) + ", not a pencil");
  }
  std::vector<Point> extra;
  for (const auto& z : common_rational_zeros(L.basis)) {
    if (std::find(points8.begin(), points8.end(), z) == points8.end()) extra.push_back(z);
  }
  if (extra.size() != 1) {
    throw Error(Errc::NotFound, extra.empty() ? "the ninth base point coincides with a given point"
                                              : "more than nine base points");
  }
  return extra.front();
}

inline void require_cubic_net(const std::vector<Point>& points7) {
  if (points7.size() != 7) throw Error(Errc::Precondition, "need exactly 7 points");
  std::vector<std::pair<Point, int>> cond;
  for (const auto& p : points7) cond.push_back({p, 1});
  if (linear_system(3, cond).basis.size() != 3) throw Error(Errc::Degenerate, "cubics through the 7 points do not form a net");
}

/// Image of q under the Geiser involution of the 7 points.
inline Point geiser_point(const std::vector<Point>& points7, const Point& q) {
  require_cubic_net(points7);
  if (std::find(points7.begin(), points7.end(), q) != points7.end()) {
    throw Error(Errc::IndeterminateAt, "q is one of the seven points");
  }
  std::vector<Point> eight = points7;
  eight.push_back(q);
  return pencil_ninth_point(eight);
}

namespace detail {
inline std::vector<Point> sample_points(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  return {Point(Rat(dist(rng)), Rat(dist(rng)), Rat(1))};
}
}  // namespace detail

/// The Geiser involution as a degree-8 map: the net of octics with triple
/// points at the seven points, calibrated by a linear map against pointwise
/// values on four samples and checked on four more.
inline CremonaMap geiser_map(const std::vector<Point>& points7, std::uint64_t seed = 17) {
  require_cubic_net(points7);
  std::vector<std::pair<Point, int>> cond;
  for (const auto& p : points7) cond.push_back({p, 3});
  const LinearSystem L = linear_system(8, cond);
  if (L.basis.size() != 3) throw Error(Errc::Degenerate, "octic system is not a net; points not in general position");
  const CremonaMap rho = make_map({L.basis[0], L.basis[1], L.basis[2]});
  std::mt19937_64 rng(seed);
  std::vector<Point> us, vs;
  for (int tries = 0; us.size() < 8 && tries < 500; ++tries) {
    const Point q = detail::sample_points(rng, 12).front();
    try {
      Point u = apply(rho, q);
      Point v = geiser_point(points7, q);
      us.push_back(u);
      vs.push_back(v);
    } catch (const Error&) {
      continue;
    }
  }
  if (us.size() < 8) throw Error(Errc::Verification, "not enough calibration samples");
  const Mat3 A = calibrate_linear(us, vs);
  return compose_linear(A, rho);
}

/// Whether the cubic has a rational singular point (or a multiple component).
/// Singular members of a pencil through 8 general points are irreducible
/// with a single, hence rational, singular point.
inline bool cubic_has_rational_singularity(const HomPoly& E) {
  std::vector<HomPoly> parts;
  for (int v = 0; v < 3; ++v) {
    HomPoly d = E.derivative(v);
    if (!d.is_zero()) parts.push_back(d);
  }
  if (parts.size() < 2) return true;
  if (poly_gcd(parts).degree() > 0) return true;
  return !common_rational_zeros(parts).empty();
}

struct CubicPencil {
  std::vector<HomPoly> basis;
  Point ninth;
};

inline CubicPencil cubic_pencil(const std::vector<Point>& points8) {
  std::vector<std::pair<Point, int>> cond;
  for (const auto& p : points8) cond.push_back({p, 1});
  CubicPencil P;
  P.basis = linear_system(3, cond).basis;
  P.ninth = pencil_ninth_point(points8);
  return P;
}

/// Image of q under the Bertini involution: inversion on the pencil member
/// through q, with the ninth base point as origin.
inline Point bertini_point(const std::vector<Point>& points8, const Point& q) {
  const CubicPencil P = cubic_pencil(points8);
  if (q == P.ninth) return q;
  const Rat a = P.basis[0].eval(q), b = P.basis[1].eval(q);
  if (a == 0 && b == 0) throw Error(Errc::IndeterminateAt, "q is a base point of the pencil");
  const HomPoly Eq = b * P.basis[0] - a * P.basis[1];
  if (cubic_has_rational_singularity(Eq)) throw Error(Errc::Degenerate, "q lies on a singular member of the pencil");
  return cubic_neg(Eq, P.ninth, q);
}

/// Independent oracle: the tenth base point of the net of sextics through q
/// that are singular at the eight points.
inline Point bertini_point_by_sextics(const std::vector<Point>& points8, const Point& q) {
  std::vector<std::pair<Point, int>> cond;
  for (const auto& p : points8) cond.push_back({p, 2});
  cond.push_back({q, 1});
  const LinearSystem L = linear_system(6, cond);
  if (L.basis.size() != 3) throw Error(Errc::Degenerate, "sextic system is not a net");
  std::vector<Point> extra;
  for (const auto& z : common_rational_zeros(L.basis)) {
    if (z == q || std::find(points8.begin(), points8.end(), z) != points8.end()) continue;
    extra.push_back(z);
  }
  if (extra.size() != 1) throw Error(Errc::NotFound, "expected exactly one further base point");
  return extra.front();
}

// ---------------------------------------------------------------------------
// Finite groups of Cremona maps

/// All elements generated by `gens`, by breadth-first closure under left
/// multiplication. Throws NotFound if more than `limit` elements appear.
inline std::vector<CremonaMap> group_closure(const std::vector<CremonaMap>& gens, std::size_t limit = 64) {
  std::vector<CremonaMap> elems{CremonaMap()};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      CremonaMap h = compose(g, elems[i]);
      if (std::find(elems.begin(), elems.end(), h) == elems.end()) {
        elems.push_back(h);
        if (elems.size() > limit) throw Error(Errc::NotFound, "group has more than " + std::to_string(limit) + " elements");
      }
    }
  }
  return elems;
}

/// Smallest n >= 1 with phi^n = id, or 0 if none up to `limit`.
inline int map_order(const CremonaMap& phi, int limit = 64) {
  CremonaMap acc = phi;
  for (int n = 1; n <= limit; ++n) {
    if (acc.is_identity()) return n;
    acc = compose(phi, acc);
  }
  return 0;
}

}  // namespace cremona
