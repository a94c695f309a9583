#pragma once

// Univariate polynomial arithmetic over word-sized prime fields.
//
// Polynomials are dense coefficient vectors, lowest degree first, with no
// trailing zeros (the zero polynomial is the empty vector). Large products
// use a number-theoretic transform when the prime supports it; gcds switch to
// the half-gcd recursion above a size threshold.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "cremona/rational.hpp"

namespace cremona::modp {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Poly = std::vector<u32>;

inline u64 pow_u64(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * a % p);
    a = static_cast<u64>(static_cast<u128>(a) * a % p);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin for n < 2^32.
inline bool is_prime_u32(u32 n) {
  if (n < 2) return false;
  for (u32 q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (u64 a : {2ull, 3ull, 5ull, 7ull}) {
    u64 x = pow_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<u64>(static_cast<u128>(x) * x % n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

/// Arithmetic modulo a prime p < 2^31 with Barrett reduction.
class Field {
 public:
  explicit Field(u32 p) : p_(p), barrett_(~u64{0} / p) {
    u32 t = p - 1;
    while ((t & 1) == 0) { t >>= 1; ++two_adicity_; }
    generator_ = find_generator();
  }

  u32 p() const { return p_; }
  int two_adicity() const { return two_adicity_; }

  u32 reduce(u64 x) const {
    u64 q = static_cast<u64>((static_cast<u128>(x) * barrett_) >> 64);
    u64 r = x - q * p_;
    while (r >= p_) r -= p_;
    return static_cast<u32>(r);
  }
  u32 mul(u32 a, u32 b) const { return reduce(static_cast<u64>(a) * b); }
  u32 add(u32 a, u32 b) const { u32 s = a + b; return s >= p_ ? s - p_ : s; }
  u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p_ - b; }
  u32 neg(u32 a) const { return a == 0 ? 0 : p_ - a; }
  u32 pow(u32 a, u64 e) const {
    u32 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u32 inv(u32 a) const {
    if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero mod p");
    return pow(a, p_ - 2);
  }
  u32 from_int(const Int& z) const { return mod_word(z, p_); }
  /// Reduction of a rational; nullopt-style failure signalled by `ok`.
  u32 from_rat(const Rat& r, bool& ok) const {
    u32 d = mod_word(r.get_den(), p_);
    if (d == 0) { ok = false; return 0; }
    return mul(mod_word(r.get_num(), p_), inv(d));
  }
  u32 from_signed(long long v) const {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += p_;
    return static_cast<u32>(m);
  }
  /// Symmetric lift into (-p/2, p/2].
  long long lift(u32 a) const { return a > p_ / 2 ? static_cast<long long>(a) - p_ : a; }

  /// Whether a transform of the given length (power of two) is available.
  bool ntt_capable(std::size_t len) const {
    return len != 0 && (len & (len - 1)) == 0 && (u64{1} << two_adicity_) % len == 0;
  }
  u32 generator() const { return generator_; }

 private:
  u32 find_generator() const {
    std::vector<u32> factors;
    u32 t = p_ - 1;
    for (u32 q = 2; static_cast<u64>(q) * q <= t; ++q) {
      if (t % q == 0) {
        factors.push_back(q);
        while (t % q == 0) t /= q;
      }
    }
    if (t > 1) factors.push_back(t);
    for (u32 g = 2; g < p_; ++g) {
      bool ok = true;
      for (u32 q : factors) {
        if (pow(g, (p_ - 1) / q) == 1) { ok = false; break; }
      }
      if (ok) return g;
    }
    return 1;
  }

  u32 p_;
  u64 barrett_;
  int two_adicity_ = 0;
  u32 generator_ = 1;
};

/// Primes p = c * 2^k + 1 below 2^31 with k >= min_adicity, largest first.
inline std::vector<u32> ntt_primes(int min_adicity = 23) {
  std::vector<u32> out;
  for (u64 c = (u64{1} << (31 - min_adicity)) - 1; c >= 1; --c) {
    u64 p = (c << min_adicity) + 1;
    if (p < (u64{1} << 31) && is_prime_u32(static_cast<u32>(p))) out.push_back(static_cast<u32>(p));
  }
  return out;
}

/// A random prime in [2^30, 2^31).
inline u32 random_prime(std::mt19937_64& rng) {
  std::uniform_int_distribution<u32> dist(1u << 30, (1u << 31) - 1);
  for (;;) {
    u32 c = dist(rng) | 1u;
    if (is_prime_u32(c)) return c;
  }
}

// ---------------------------------------------------------------------------
// Basic dense operations

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly add(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  trim(r);
  return r;
}

inline Poly sub(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

inline Poly scale(const Field& F, const Poly& a, u32 c) {
  if (c == 0) return {};
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  return r;
}

inline Poly monic(const Field& F, const Poly& a) {
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

inline u32 eval(const Field& F, const Poly& a, u32 x) {
  u32 r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

inline Poly derivative(const Field& F, const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], static_cast<u32>(i % F.p()));
  trim(r);
  return r;
}

// ---------------------------------------------------------------------------
// Number-theoretic transform

namespace detail {

/// Roots of unity for every level, with Shoup companions floor(w 2^32 / p)
/// so that products by a root need no 128-bit reduction. The roots of the
/// level of length 2h sit contiguously at [h, 2h).
struct RootTable {
  u32 p = 0;
  std::size_t n = 0;
  std::vector<u32> w, wq;
};

inline const RootTable& root_table(const Field& F, std::size_t n) {
  thread_local std::vector<RootTable> cache;
  for (const auto& t : cache)
    if (t.p == F.p() && t.n >= n) return t;
  std::erase_if(cache, [&](const RootTable& t) { return t.p == F.p(); });
  RootTable t;
  t.p = F.p();
  t.n = n;
  t.w.assign(n, 0);
  t.wq.assign(n, 0);
  for (std::size_t h = 1; h < n; h <<= 1) {
    const u32 g = F.pow(F.generator(), (F.p() - 1) / (2 * h));
    u32 cur = 1;
    for (std::size_t k = 0; k < h; ++k) {
      t.w[h + k] = cur;
      t.wq[h + k] = static_cast<u32>((static_cast<u64>(cur) << 32) / F.p());
      cur = F.mul(cur, g);
    }
  }
  cache.push_back(std::move(t));
  return cache.back();
}

}  // namespace detail

inline void ntt(const Field& F, std::vector<u32>& a, bool invert) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  const u32 p = F.p();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const detail::RootTable& T = detail::root_table(F, n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const u32* W = T.w.data() + half;
    const u32* WQ = T.wq.data() + half;
    for (std::size_t i = 0; i < n; i += len) {
      u32* lo = a.data() + i;
      u32* hi = lo + half;
      for (std::size_t k = 0; k < half; ++k) {
        const u32 w = W[k], wq = WQ[k];
        const u32 x = hi[k];
        const u32 q = static_cast<u32>((static_cast<u64>(x) * wq) >> 32);
        u32 v = static_cast<u32>(static_cast<u64>(x) * w - static_cast<u64>(q) * p);
        if (v >= p) v -= p;
        const u32 u = lo[k];
        lo[k] = u + v >= p ? u + v - p : u + v;
        hi[k] = u >= v ? u - v : u + p - v;
      }
    }
  }
  if (invert) {
    std::reverse(a.begin() + 1, a.end());
    const u32 ninv = F.inv(static_cast<u32>(n % p));
    for (auto& x : a) x = F.mul(x, ninv);
  }
}

inline std::size_t transform_length(std::size_t need) {
  std::size_t n = 1;
  while (n < need) n <<= 1;
  return n;
}

inline Poly mul_naive(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> acc(a.size() + b.size() - 1, 0);
  // Accumulate up to 3 products (< 2^62 each) before reducing.
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      u64& slot = acc[i + j];
      slot += static_cast<u64>(a[i]) * b[j];
      if (slot >= (u64{1} << 63)) slot = F.reduce(slot);
    }
  }
  Poly r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = F.reduce(acc[i]);
  trim(r);
  return r;
}

inline Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out = a.size() + b.size() - 1;
  const std::size_t len = transform_length(out);
  if (std::min(a.size(), b.size()) < 48 || !F.ntt_capable(len)) return mul_naive(F, a, b);
  std::vector<u32> fa(len, 0), fb(len, 0);
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  ntt(F, fa, false);
  ntt(F, fb, false);
  for (std::size_t i = 0; i < len; ++i) fa[i] = F.mul(fa[i], fb[i]);
  ntt(F, fa, true);
  fa.resize(out);
  trim(fa);
  return fa;
}

/// Power series inverse of a modulo x^n (a[0] != 0).
inline Poly inverse_series(const Field& F, const Poly& a, std::size_t n) {
  Poly r{F.inv(a[0])};
  std::size_t k = 1;
  while (k < n) {
    k *= 2;
    Poly head(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(std::min(a.size(), k)));
    Poly t = mul(F, mul(F, r, r), head);
    t.resize(k, 0);
    Poly twice = scale(F, r, 2);
    twice.resize(k, 0);
    for (std::size_t i = 0; i < k; ++i) twice[i] = F.sub(twice[i], t[i]);
    r = std::move(twice);
    trim(r);
  }
  r.resize(std::min(r.size(), n));
  trim(r);
  return r;
}

inline std::pair<Poly, Poly> divmod_naive(const Field& F, const Poly& a, const Poly& b) {
  if (b.empty()) throw Error(Errc::DivisionByZero, "polynomial division by zero mod p");
  if (a.size() < b.size()) return {{}, a};
  Poly r = a;
  const std::size_t db = b.size() - 1;
  Poly q(a.size() - db, 0);
  const u32 inv_lc = F.inv(b.back());
  for (std::size_t i = a.size(); i-- > db;) {
    if (r[i] == 0) continue;
    u32 c = F.mul(r[i], inv_lc);
    q[i - db] = c;
    const std::size_t base = i - db;
    for (std::size_t j = 0; j <= db; ++j) r[base + j] = F.sub(r[base + j], F.mul(c, b[j]));
  }
  trim(q);
  r.resize(db);
  trim(r);
  return {q, r};
}

inline std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b) {
  if (b.empty()) throw Error(Errc::DivisionByZero, "polynomial division by zero mod p");
  if (a.size() < b.size()) return {{}, a};
  const std::size_t qlen = a.size() - b.size() + 1;
  if (qlen < 64 || b.size() < 64 || !F.ntt_capable(transform_length(2 * a.size()))) {
    return divmod_naive(F, a, b);
  }
  Poly ra(a.rbegin(), a.rend());
  Poly rb(b.rbegin(), b.rend());
  ra.resize(std::min(ra.size(), qlen));
  Poly inv = inverse_series(F, rb, qlen);
  Poly rq = mul(F, ra, inv);
  rq.resize(qlen, 0);
  Poly q(rq.rbegin(), rq.rend());
  trim(q);
  Poly r = sub(F, a, mul(F, b, q));
  return {q, r};
}

inline Poly rem(const Field& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }

// ---------------------------------------------------------------------------
// GCD: Euclid for small inputs, half-gcd above the threshold.

inline Poly gcd_euclid(const Field& F, Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = divmod_naive(F, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

namespace detail {

struct Mat2 {
  Poly a, b, c, d;  // [[a, b], [c, d]]
};

inline Mat2 identity() { return {{1}, {}, {}, {1}}; }

inline Mat2 mat_mul(const Field& F, const Mat2& x, const Mat2& y) {
  return {add(F, mul(F, x.a, y.a), mul(F, x.b, y.c)), add(F, mul(F, x.a, y.b), mul(F, x.b, y.d)),
          add(F, mul(F, x.c, y.a), mul(F, x.d, y.c)), add(F, mul(F, x.c, y.b), mul(F, x.d, y.d))};
}

inline std::pair<Poly, Poly> apply(const Field& F, const Mat2& m, const Poly& u, const Poly& v) {
  return {add(F, mul(F, m.a, u), mul(F, m.b, v)), add(F, mul(F, m.c, u), mul(F, m.d, v))};
}

inline Poly shift_down(const Poly& a, int k) {
  if (static_cast<int>(a.size()) <= k) return {};
  return Poly(a.begin() + k, a.end());
}

// Returns M with M*(a, b) = (c, d), deg c >= m > deg d, m = ceil(deg a / 2).
// Requires deg a > deg b.
inline Mat2 half_gcd(const Field& F, const Poly& a, const Poly& b) {
  const int m = (deg(a) + 1) / 2;
  if (deg(b) < m) return identity();
  Mat2 R = half_gcd(F, shift_down(a, m), shift_down(b, m));
  auto [c, d] = apply(F, R, a, b);
  if (deg(d) < m) return R;
  auto [q, r] = divmod(F, c, d);
  Mat2 step{{}, {1}, {1}, sub(F, Poly{}, q)};
  R = mat_mul(F, step, R);
  if (deg(r) < m) return R;
  const int k = 2 * m - deg(d);
  Mat2 S = half_gcd(F, shift_down(d, k), shift_down(r, k));
  return mat_mul(F, S, R);
}

}  // namespace detail

inline Poly gcd(const Field& F, Poly a, Poly b) {
  trim(a);
  trim(b);
  if (a.size() < b.size()) std::swap(a, b);
  constexpr int threshold = 256;
  while (!b.empty()) {
    if (deg(b) < threshold || !F.ntt_capable(transform_length(2 * a.size()))) {
      return gcd_euclid(F, std::move(a), std::move(b));
    }
    if (deg(a) == deg(b)) {
      Poly r = rem(F, a, b);
      a = std::move(b);
      b = std::move(r);
      continue;
    }
    if (2 * deg(b) > deg(a)) {
      auto M = detail::half_gcd(F, a, b);
      auto [c, d] = detail::apply(F, M, a, b);
      a = std::move(c);
      b = std::move(d);
    } else {
      Poly r = rem(F, a, b);
      a = std::move(b);
      b = std::move(r);
    }
  }
  return monic(F, a);
}

/// base^e mod f.
inline Poly powmod(const Field& F, Poly base, u64 e, const Poly& f) {
  Poly r{1};
  base = rem(F, base, f);
  while (e) {
    if (e & 1) r = rem(F, mul(F, r, base), f);
    base = rem(F, mul(F, base, base), f);
    e >>= 1;
  }
  return rem(F, r, f);
}

/// All roots in F_p of f (each listed once).
inline std::vector<u32> roots(const Field& F, const Poly& f, std::mt19937_64& rng) {
  std::vector<u32> out;
  if (deg(f) <= 0) return out;
  Poly xp = powmod(F, Poly{0, 1}, F.p(), f);
  Poly g = gcd(F, f, sub(F, xp, Poly{0, 1}));
  std::vector<Poly> stack{g};
  std::uniform_int_distribution<u32> dist(0, F.p() - 1);
  while (!stack.empty()) {
    Poly h = monic(F, stack.back());
    stack.pop_back();
    if (deg(h) <= 0) continue;
    if (deg(h) == 1) {
      out.push_back(F.neg(h[0]));
      continue;
    }
    for (;;) {
      Poly t = powmod(F, Poly{dist(rng), 1}, (F.p() - 1) / 2, h);
      Poly s = gcd(F, h, sub(F, t, Poly{1}));
      if (deg(s) > 0 && deg(s) < deg(h)) {
        stack.push_back(s);
        stack.push_back(divmod(F, h, s).first);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Distinct-degree factorization pattern of a squarefree f: sorted list of
/// the degrees of its irreducible factors over F_p.
inline std::vector<int> factor_degrees(const Field& F, Poly f) {
  std::vector<int> degs;
  f = monic(F, f);
  Poly h{0, 1};
  for (int d = 1; 2 * d <= deg(f); ++d) {
    h = powmod(F, h, F.p(), f);
    Poly g = gcd(F, f, sub(F, h, Poly{0, 1}));
    if (deg(g) > 0) {
      for (int i = 0; i < deg(g) / d; ++i) degs.push_back(d);
      f = divmod(F, f, g).first;
      h = rem(F, h, f);
    }
  }
  if (deg(f) > 0) degs.push_back(deg(f));
  std::sort(degs.begin(), degs.end());
  return degs;
}

/// Interpolate the unique polynomial of degree < n through (xs[i], ys[i]).
inline Poly interpolate(const Field& F, const std::vector<u32>& xs, const std::vector<u32>& ys) {
  const std::size_t n = xs.size();
  // Newton divided differences.
  std::vector<u32> coef(ys);
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      u32 num = F.sub(coef[i], coef[i - 1]);
      u32 den = F.sub(xs[i], xs[i - j]);
      coef[i] = F.mul(num, F.inv(den));
      if (i == j) break;
    }
  }
  Poly result;
  for (std::size_t k = n; k-- > 0;) {
    // result = result * (x - xs[k]) + coef[k]
    Poly next(result.size() + 1, 0);
    for (std::size_t i = 0; i < result.size(); ++i) {
      next[i + 1] = F.add(next[i + 1], result[i]);
      next[i] = F.sub(next[i], F.mul(result[i], xs[k]));
    }
    next[0] = F.add(next[0], coef[k]);
    result = std::move(next);
  }
  trim(result);
  return result;
}

}  // namespace cremona::modp
