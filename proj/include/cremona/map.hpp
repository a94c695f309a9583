#pragma once

// Plane Cremona transformations as coprime triples of forms.

#include <optional>
#include <string>
#include <vector>

#include "cremona/gcd.hpp"
#include "cremona/resultant.hpp"

namespace cremona {

/// A rational self-map of P^2 given by a coprime triple (f0 : f1 : f2) of
/// forms of a common degree, scaled so that the triple has primitive integer
/// coefficients and f0 has a positive leading coefficient.
class CremonaMap {
 public:
  /// Identity map.
  CremonaMap() : f_{X(), Y(), Z()}, deg_(1) {}

  const Triple& components() const { return f_; }
  const HomPoly& operator[](int i) const { return f_[static_cast<std::size_t>(i)]; }
  int degree() const { return deg_; }

  friend bool operator==(const CremonaMap& a, const CremonaMap& b) { return a.f_ == b.f_; }

  /// Builds a map from a raw triple: checks degrees, cancels the common
  /// factor (returned through `cancelled` when requested) and normalizes.
  static CremonaMap make(const Triple& raw, HomPoly* cancelled = nullptr) {
    for (const auto& c : raw) {
      if (c.is_zero()) throw Error(Errc::ZeroInput, "map component is zero");
    }
    if (raw[0].degree() != raw[1].degree() || raw[1].degree() != raw[2].degree()) {
      throw Error(Errc::DegreeMismatch, "map components have degrees " + std::to_string(raw[0].degree()) + ", " +
                                            std::to_string(raw[1].degree()) + ", " + std::to_string(raw[2].degree()));
    }
    Triple t = raw;
    HomPoly g = poly_gcd({raw[0], raw[1], raw[2]});
    if (g.degree() > 0) {
      for (auto& c : t) c = exact_div(c, g);
    }
    if (cancelled) *cancelled = g;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (t[static_cast<std::size_t>(i)].proportional(t[static_cast<std::size_t>(j)])) {
          throw Error(Errc::Degenerate, "components " + std::to_string(i) + " and " + std::to_string(j) +
                                            " are proportional; the image is not dense");
        }
    CremonaMap m;
    m.f_ = normalize(t);
    m.deg_ = m.f_[0].degree();
    return m;
  }

  /// Linear map x -> M x.
  static CremonaMap linear(const Mat3& M) {
    if (det3(M) == 0) throw Error(Errc::Degenerate, "singular linear map");
    return make(linear_triple(M));
  }

  bool is_identity() const {
    if (deg_ != 1) return false;
    return f_[0] == X() && f_[1] == Y() && f_[2] == Z();
  }

 private:
  static Triple normalize(const Triple& t) {
    Int den = 1;
    for (const auto& c : t)
      for (const auto& [m, v] : c.terms()) den = lcm_int(den, v.get_den());
    Int g = 0;
    for (const auto& c : t)
      for (const auto& [m, v] : c.terms()) g = gcd_int(g, v.get_num() * (den / v.get_den()));
    Rat s = make_rat(den, g);
    if (t[0].leading_coeff() < 0) s = -s;
    return {s * t[0], s * t[1], s * t[2]};
  }

  Triple f_;
  int deg_;
};

inline CremonaMap make_map(const Triple& raw) { return CremonaMap::make(raw); }

inline bool is_identity(const CremonaMap& m) { return m.is_identity(); }
inline bool maps_equal(const CremonaMap& a, const CremonaMap& b) { return a == b; }

/// phi o psi together with the common factor removed from the substituted triple.
struct Composition {
  CremonaMap map;
  HomPoly cancelled;
};

inline Composition compose_with_witness(const CremonaMap& phi, const CremonaMap& psi) {
  Triple raw;
  for (int i = 0; i < 3; ++i) {
    raw[static_cast<std::size_t>(i)] = substitute(phi[i], psi.components());
    if (raw[static_cast<std::size_t>(i)].is_zero()) {
      throw Error(Errc::Degenerate, "composition is degenerate: component " + std::to_string(i) +
                                        " vanishes on the image of the inner map");
    }
  }
  Composition c;
  c.map = CremonaMap::make(raw, &c.cancelled);
  return c;
}

/// phi o psi.
inline CremonaMap compose(const CremonaMap& phi, const CremonaMap& psi) {
  if (psi.is_identity()) return phi;
  if (phi.is_identity()) return psi;
  return compose_with_witness(phi, psi).map;
}

/// n-fold composition by repeated squaring; power(phi, 0) is the identity.
inline CremonaMap power(const CremonaMap& phi, long long n) {
  if (n < 0) throw Error(Errc::Precondition, "negative power");
  CremonaMap result;
  if (n == 0 || phi.is_identity()) return result;
  CremonaMap base = phi;
  while (n > 0) {
    if (n & 1) result = compose(result, base);
    n >>= 1;
    if (n) {
      base = compose(base, base);
      if (base.is_identity()) break;
    }
  }
  return result;
}

inline Point apply(const CremonaMap& phi, const Point& p) {
  std::array<Rat, 3> v;
  for (std::size_t i = 0; i < 3; ++i) v[i] = phi.components()[i].eval(p);
  if (v[0] == 0 && v[1] == 0 && v[2] == 0) throw Error(Errc::IndeterminateAt, "map is undefined at " + p.str());
  return Point(v);
}

/// The three 2x2 minors of [[x, y, z], [f0, f1, f2]].
inline Triple fixed_minors(const CremonaMap& phi) {
  const auto& f = phi.components();
  return {X() * f[1] - Y() * f[0], X() * f[2] - Z() * f[0], Y() * f[2] - Z() * f[1]};
}

/// The curve part of the fixed locus (gcd of the minors), or nullopt when the
/// gcd is constant. Isolated fixed points are not reported.
inline std::optional<HomPoly> fixed_curve(const CremonaMap& phi) {
  if (phi.is_identity()) throw Error(Errc::IdentityMap, "every point of the identity is fixed");
  const Triple m = fixed_minors(phi);
  std::vector<HomPoly> nz;
  for (const auto& c : m) {
    if (!c.is_zero()) nz.push_back(c);
  }
  HomPoly g = poly_gcd(nz);
  if (g.degree() == 0) return std::nullopt;
  return g;
}

inline HomPoly jacobian(const CremonaMap& phi) {
  HomPoly J[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) J[i][j] = phi[i].derivative(j);
  const int d = 3 * (phi.degree() - 1);
  HomPoly det = HomPoly::zero(d);
  for (int j = 0; j < 3; ++j) {
    const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    det = det + J[0][j] * (J[1][j1] * J[2][j2] - J[1][j2] * J[2][j1]);
  }
  return det;
}

struct BasePointRecord {
  Point point;
  int multiplicity = 1;
};

/// Proper rational base points with multiplicities. Non-rational and
/// infinitely near base points are not detected. Linear maps have none.
inline std::vector<BasePointRecord> rational_base_points(const CremonaMap& phi, std::uint64_t seed = 11) {
  std::vector<BasePointRecord> out;
  if (phi.degree() == 1) return out;
  const auto& f = phi.components();
  for (const Point& p : common_rational_zeros({f[0], f[1], f[2]}, seed)) {
    int m = phi.degree() + 1;
    for (const auto& c : f) m = std::min(m, vanishing_order(c, p));
    out.push_back({p, m});
  }
  return out;
}

struct HomaloidalReport {
  int degree = 0;
  long long sum = 0, sum_sq = 0;
  long long expected_sum = 0, expected_sum_sq = 0;
  bool linear_ok = false, quadratic_ok = false;
  bool pass() const { return linear_ok && quadratic_ok; }
};

/// Checks sum a_i = 3(d - 1) and sum a_i^2 = d^2 - 1.
inline HomaloidalReport homaloidal_check(int d, const std::vector<int>& mults) {
  HomaloidalReport r;
  r.degree = d;
  for (int a : mults) {
    if (a < 1) throw Error(Errc::Precondition, "base multiplicities must be positive");
    r.sum += a;
    r.sum_sq += static_cast<long long>(a) * a;
  }
  r.expected_sum = 3LL * (d - 1);
  r.expected_sum_sq = static_cast<long long>(d) * d - 1;
  r.linear_ok = r.sum == r.expected_sum;
  r.quadratic_ok = r.sum_sq == r.expected_sum_sq;
  return r;
}

inline HomaloidalReport homaloidal_check(const CremonaMap& phi, const std::vector<BasePointRecord>& declared) {
  std::vector<int> m;
  for (const auto& b : declared) m.push_back(b.multiplicity);
  return homaloidal_check(phi.degree(), m);
}

/// Whether psi is a two-sided inverse of phi.
inline bool verify_inverse(const CremonaMap& phi, const CremonaMap& psi) {
  try {
    return compose(phi, psi).is_identity() && compose(psi, phi).is_identity();
  } catch (const Error& e) {
    if (e.code() == Errc::Degenerate) return false;
    throw;
  }
}

}  // namespace cremona
