#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cremona/error.hpp"

namespace cremona {

using Int = mpz_class;
/// Exact rational. mpq_class keeps num/den reduced with a positive denominator
/// as long as every value is canonicalized after construction from parts.
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw Error(Errc::DivisionByZero, "rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

inline Int abs_int(const Int& z) { return z < 0 ? Int(-z) : z; }

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Reduce an integer modulo a word prime.
inline std::uint32_t mod_word(const Int& z, std::uint32_t p) {
  unsigned long r = mpz_fdiv_ui(z.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r);
}

/// Wang's rational reconstruction: find n/d with n = d*u mod m,
/// |n| <= bound and 0 < d <= bound, bound = floor(sqrt(m/2)).
inline std::optional<Rat> rational_reconstruct(const Int& u, const Int& m) {
  Int bound;
  Int half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Int r0 = m, r1 = u % m;
  if (r1 < 0) r1 += m;
  Int t0 = 0, t1 = 1;
  while (r1 > bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  if (t1 == 0 || abs_int(t1) > bound) return std::nullopt;
  if (gcd_int(r1, t1) != 1) return std::nullopt;
  return make_rat(r1, t1);
}

/// Combine x = a mod m with x = b mod p into x mod m*p (0 <= x < m*p).
inline Int crt_combine(const Int& a, const Int& m, std::uint32_t b, std::uint32_t p) {
  std::uint32_t am = mod_word(a, p);
  std::uint32_t mm = mod_word(m, p);
  // k = (b - a) / m mod p
  std::uint64_t inv = 1, base = mm, e = p - 2;
  while (e) {
    if (e & 1) inv = inv * base % p;
    base = base * base % p;
    e >>= 1;
  }
  std::uint64_t diff = (static_cast<std::uint64_t>(b) + p - am) % p;
  std::uint64_t k = diff * inv % p;
  return a + m * Int(static_cast<unsigned long>(k));
}

/// Denominator lcm of a list of rationals.
inline Int common_denominator(const std::vector<Rat>& v) {
  Int l = 1;
  for (const auto& r : v) l = lcm_int(l, r.get_den());
  return l;
}

}  // namespace cremona
