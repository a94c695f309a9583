#pragma once

// Multivariate gcd by modular evaluation/interpolation, certified by exact
// division over Q.
//
// After a random shear (x, y, z) -> (x, y + a x, z + b x) every input has a
// constant x^n coefficient, so restricting to the lines (t, v + a t, 1 + b t)
// gives univariate polynomials of full degree whose monic gcds are the
// specializations of the (x-monic) sheared gcd. Coefficients are interpolated
// in v, lifted across primes by CRT and recovered by rational reconstruction.
// Whichever of gcd or cofactor has the smaller degree is reconstructed.

#include <random>
#include <optional>

#include "cremona/hompoly.hpp"
#include "cremona/modp.hpp"

namespace cremona {

namespace detail {

/// Integer form reduced modulo p, kept as (ex, ey, coefficient).
struct ModForm {
  int deg = 0;
  std::vector<std::array<int, 2>> mono;
  std::vector<modp::u32> coef;
};

inline ModForm reduce_form(const IntPoly& P, const modp::Field& F) {
  ModForm m;
  m.deg = P.deg;
  for (const auto& t : P.terms) {
    modp::u32 c = F.from_int(t.c);
    if (c == 0) continue;
    m.mono.push_back({t.ex, t.ey});
    m.coef.push_back(c);
  }
  return m;
}

inline modp::u32 eval_form(const ModForm& P, const modp::Field& F, modp::u32 x, modp::u32 y, modp::u32 z,
                           std::vector<modp::u32>& scratch) {
  const std::size_t n = static_cast<std::size_t>(P.deg) + 1;
  scratch.assign(3 * n, 0);
  modp::u32* px = scratch.data();
  modp::u32* py = px + n;
  modp::u32* pz = py + n;
  px[0] = py[0] = pz[0] = 1;
  for (std::size_t k = 1; k < n; ++k) {
    px[k] = F.mul(px[k - 1], x);
    py[k] = F.mul(py[k - 1], y);
    pz[k] = F.mul(pz[k - 1], z);
  }
  modp::u64 acc = 0;
  for (std::size_t i = 0; i < P.coef.size(); ++i) {
    const int ex = P.mono[i][0], ey = P.mono[i][1], ez = P.deg - ex - ey;
    acc += F.mul(P.coef[i], F.mul(px[ex], F.mul(py[ey], pz[ez])));
    if (acc >= (modp::u64{1} << 62)) acc = F.reduce(acc);
  }
  return F.reduce(acc);
}

/// The univariate polynomial t -> P(t, v + a t, 1 + b t) mod p, of degree deg P.
inline modp::Poly restrict_mod(const ModForm& P, const modp::Field& F, modp::u32 v, modp::u32 a, modp::u32 b) {
  const int n = P.deg;
  std::vector<modp::u32> ts, vals;
  std::vector<modp::u32> scratch;
  for (int i = 0; i <= n; ++i) {
    modp::u32 t = static_cast<modp::u32>(i + 1);
    ts.push_back(t);
    vals.push_back(eval_form(P, F, t, F.add(v, F.mul(a, t)), F.add(1, F.mul(b, t)), scratch));
  }
  return modp::interpolate(F, ts, vals);
}

/// Shear by integers a, b, or its inverse.
inline Triple shear(const Rat& a, const Rat& b, bool inverse) {
  const Rat s = inverse ? Rat(-1) : Rat(1);
  return {linear_form(1, 0, 0), linear_form(s * a, 1, 0), linear_form(s * b, 0, 1)};
}

/// Rebuild a homogeneous form of degree k from the interpolated coefficient
/// polynomials c_i(v) of x^i (each of degree <= k - i in v, z implicit).
inline std::vector<std::array<int, 2>> dense_monomials(int k) {
  std::vector<std::array<int, 2>> out;
  for (int ex = k; ex >= 0; --ex)
    for (int ey = k - ex; ey >= 0; --ey) out.push_back({ex, ey});
  return out;
}

}  // namespace detail

struct GcdOptions {
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  int max_primes = 400;
};

/// Greatest common divisor in canonical form. gcd(0, 0) is rejected.
inline HomPoly poly_gcd(const HomPoly& A, const HomPoly& B, const GcdOptions& opt = {}) {
  if (A.is_zero() && B.is_zero()) throw Error(Errc::ZeroInput, "gcd of two zero polynomials");
  if (A.is_zero()) return B.canonical();
  if (B.is_zero()) return A.canonical();
  if (A.degree() == 0 || B.degree() == 0) return HomPoly::constant(1);
  if (A.proportional(B)) return A.canonical();
  if (divides(B, A)) return B.canonical();
  if (divides(A, B)) return A.canonical();

  std::mt19937_64 rng(opt.seed ^ (static_cast<std::uint64_t>(A.size()) << 20) ^ B.size());
  std::uniform_int_distribution<int> small(-20, 20);
  int a = 0, b = 0;
  for (int tries = 0;; ++tries) {
    if (A.eval(std::array<Rat, 3>{Rat(1), Rat(a), Rat(b)}) != 0 && B.eval(std::array<Rat, 3>{Rat(1), Rat(a), Rat(b)}) != 0) break;
    a = small(rng);
    b = small(rng);
    if (tries > 1000) throw Error(Errc::Degenerate, "no admissible shear found");
  }
  auto [sa, IA] = A.integerize();
  auto [sb, IB] = B.integerize();
  const int na = A.degree(), nb = B.degree();
  // x^n coefficient of the sheared forms.
  const Rat alpha = HomPoly::from_int(IA, 1).eval(std::array<Rat, 3>{Rat(1), Rat(a), Rat(b)});
  const Rat beta = HomPoly::from_int(IB, 1).eval(std::array<Rat, 3>{Rat(1), Rat(a), Rat(b)});
  const Triple unshear = detail::shear(Rat(a), Rat(b), true);

  int best_k = std::min(na, nb) + 1;  // gcd degree seen so far (minimum)
  int target = 0;                      // 0: gcd, 1: cofactor of A, 2: cofactor of B
  Int modulus = 1;
  std::vector<Int> residues;  // CRT images of the dense coefficient vector

  for (int prime_count = 0; prime_count < opt.max_primes; ++prime_count) {
    const modp::u32 p = modp::random_prime(rng);
    const modp::Field F(p);
    if (mod_word(alpha.get_num(), p) == 0 || mod_word(beta.get_num(), p) == 0 ||
        mod_word(alpha.get_den(), p) == 0 || mod_word(beta.get_den(), p) == 0) {
      continue;
    }
    const detail::ModForm MA = detail::reduce_form(IA, F), MB = detail::reduce_form(IB, F);
    const modp::u32 ap = F.from_signed(a), bp = F.from_signed(b);

    // Collect specializations at consecutive v until enough agree in degree.
    int k_here = -1, D = -1;
    std::vector<modp::u32> vs;
    std::vector<modp::Poly> images;
    std::uniform_int_distribution<modp::u32> vdist(0, p - 1);
    int attempts = 0;
    bool restart = false;
    while (true) {
      if (D >= 0 && static_cast<int>(vs.size()) >= D + 1) break;
      if (++attempts > 4 * (std::max(na, nb) + 4)) { restart = true; break; }
      const modp::u32 v = vdist(rng);
      if (std::find(vs.begin(), vs.end(), v) != vs.end()) continue;
      modp::Poly fa = detail::restrict_mod(MA, F, v, ap, bp);
      modp::Poly fb = detail::restrict_mod(MB, F, v, ap, bp);
      if (modp::deg(fa) != na || modp::deg(fb) != nb) continue;
      modp::Poly g = modp::gcd(F, fa, fb);
      const int k = modp::deg(g);
      if (k_here >= 0 && k > k_here) continue;
      if (k_here < 0 || k < k_here) {
        k_here = k;
        vs.clear();
        images.clear();
        const int dg = k, dca = na - k, dcb = nb - k;
        target = (dg <= dca && dg <= dcb) ? 0 : (dca <= dcb ? 1 : 2);
        D = target == 0 ? dg : (target == 1 ? dca : dcb);
      }
      modp::Poly img;
      if (target == 0) img = g;
      else if (target == 1) img = modp::divmod(F, modp::monic(F, fa), g).first;
      else img = modp::divmod(F, modp::monic(F, fb), g).first;
      vs.push_back(v);
      images.push_back(std::move(img));
    }
    if (restart) continue;
    if (k_here == 0) return HomPoly::constant(1);
    if (k_here > best_k) continue;  // unlucky prime
    if (k_here < best_k) {
      best_k = k_here;
      modulus = 1;
      residues.clear();
    }
    // Interpolate each x^i coefficient in v.
    const auto monos = detail::dense_monomials(D);
    std::vector<modp::u32> dense(monos.size(), 0);
    bool consistent = true;
    for (int i = 0; i <= D && consistent; ++i) {
      std::vector<modp::u32> ys;
      for (const auto& img : images) ys.push_back(static_cast<std::size_t>(i) < img.size() ? img[static_cast<std::size_t>(i)] : 0);
      modp::Poly c = modp::interpolate(F, vs, ys);
      if (modp::deg(c) > D - i) { consistent = false; break; }
      for (int j = 0; j <= D - i; ++j) {
        dense[detail::dense_index(D, i, j)] = static_cast<std::size_t>(j) < c.size() ? c[static_cast<std::size_t>(j)] : 0;
      }
    }
    if (!consistent) continue;
    if (residues.empty()) {
      residues.resize(dense.size());
      for (std::size_t t = 0; t < dense.size(); ++t) residues[t] = Int(static_cast<unsigned long>(dense[t]));
      modulus = p;
    } else {
      for (std::size_t t = 0; t < dense.size(); ++t) residues[t] = crt_combine(residues[t], modulus, dense[t], p);
      modulus *= p;
    }
    // Reconstruct and certify.
    std::vector<HomPoly::Term> terms;
    bool rec_ok = true;
    for (std::size_t t = 0; t < dense.size() && rec_ok; ++t) {
      if (residues[t] == 0) continue;
      auto r = rational_reconstruct(residues[t], modulus);
      if (!r) { rec_ok = false; break; }
      terms.push_back({Mono3{monos[t][0], monos[t][1], D - monos[t][0] - monos[t][1]}, *r});
    }
    if (!rec_ok) continue;
    HomPoly sheared = HomPoly::from_terms(D, std::move(terms));
    HomPoly cand = substitute(sheared, unshear);
    try {
      HomPoly g;
      if (target == 0) {
        g = cand;
        (void)exact_div(A, g);
        (void)exact_div(B, g);
      } else if (target == 1) {
        g = exact_div(A, cand);
        (void)exact_div(B, g);
      } else {
        g = exact_div(B, cand);
        (void)exact_div(A, g);
      }
      if (g.degree() != best_k) continue;
      return g.canonical();
    } catch (const Error& e) {
      if (e.code() != Errc::NotDivisible) throw;
    }
  }
  throw Error(Errc::Verification, "modular gcd did not certify within the prime budget");
}

inline HomPoly poly_gcd(const std::vector<HomPoly>& v, const GcdOptions& opt = {}) {
  if (v.empty()) throw Error(Errc::ZeroInput, "gcd of an empty list");
  HomPoly g = v.front().is_zero() ? v.front() : v.front().canonical();
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (g.is_zero()) { g = v[i].is_zero() ? g : v[i].canonical(); continue; }
    if (g.degree() == 0) return HomPoly::constant(1);
    if (v[i].is_zero()) continue;
    g = poly_gcd(g, v[i], opt);
  }
  if (g.is_zero()) throw Error(Errc::ZeroInput, "gcd of zero polynomials");
  return g;
}

/// F(s p + t q) as a binary form in (s, t), stored in the variables (x, y).
inline HomPoly restrict_to_line(const HomPoly& F, const Point& p, const Point& q) {
  if (p == q) throw Error(Errc::CoincidentPoints, "line through coincident points");
  Triple line;
  for (int i = 0; i < 3; ++i) line[static_cast<std::size_t>(i)] = linear_form(p[i], q[i], 0);
  return substitute(F, line);
}

}  // namespace cremona
