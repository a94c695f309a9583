#pragma once

// Degree sequences of iterates and growth classification.
//
// The modular method follows the orbit of a random line: c_0(t) = P + tQ and
// c_n = phi(c_{n-1}) with the common factor of the three components divided
// out. For a generic line and a good prime, max deg c_n = deg(phi^n). Bad
// primes and special lines can only lower the result, so disagreements are
// settled by extra runs and the largest value.

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "cremona/linalg.hpp"
#include "cremona/map.hpp"
#include "cremona/modp.hpp"

namespace cremona {

enum class DegreeMethod { Exact, Modular };

inline const char* method_name(DegreeMethod m) { return m == DegreeMethod::Exact ? "exact" : "modular"; }

struct DegreeSequence {
  std::vector<long long> degrees;  // degrees[n - 1] = deg(phi^n)
  DegreeMethod method = DegreeMethod::Exact;
  std::vector<modp::u32> primes;
  std::vector<int> disputed;  // n where the initial runs disagreed
  long long at(int n) const { return degrees[static_cast<std::size_t>(n - 1)]; }
  int length() const { return static_cast<int>(degrees.size()); }
};

namespace detail {

/// Largest transform exponent the modular method will use; 2^25 words per
/// component vector already costs several hundred megabytes.
inline constexpr int kMaxTransformLog = 25;

/// Raised when the current prime cannot carry a transform long enough for
/// the next iterate.
struct TransformTooLong {
  int log_length;
};

/// Raised when the prime divides a coefficient denominator.
struct BadPrime {};

/// The orbit of one random line modulo one prime.
class LineOrbit {
 public:
  LineOrbit(const CremonaMap& phi, modp::u32 p, std::uint64_t seed) : F_(p), d_(phi.degree()) {
    // Coefficients are reduced as rationals: integerizing each component on
    // its own would rescale them independently and change the map.
    for (std::size_t i = 0; i < 3; ++i) {
      ModForm& M = forms_[i];
      M.deg = d_;
      for (const auto& [mono, c] : phi[static_cast<int>(i)].terms()) {
        const modp::u32 den = F_.from_int(c.get_den());
        if (den == 0) throw BadPrime{};
        const modp::u32 v = F_.mul(F_.from_int(c.get_num()), F_.inv(den));
        if (v == 0) continue;
        M.mono.push_back({mono.x, mono.y});
        M.coef.push_back(v);
      }
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<modp::u32> dist(1, p - 1);
    for (auto& c : cur_) c = {dist(rng), dist(rng)};
    coef_r_ = dist(rng);
  }

  modp::u32 prime() const { return F_.p(); }

  /// Advances one step and returns the degree of the reduced curve.
  long long step(int n) {
    const std::size_t D = static_cast<std::size_t>(max_degree());
    const std::size_t need = static_cast<std::size_t>(d_) * D + 1;
    const std::size_t len = modp::transform_length(need);
    std::array<modp::Poly, 3> next;
    if (!F_.ntt_capable(len)) throw TransformTooLong{std::countr_zero(len)};
    std::array<std::vector<modp::u32>, 3> vals;
    for (std::size_t i = 0; i < 3; ++i) {
      vals[i].assign(len, 0);
      std::copy(cur_[i].begin(), cur_[i].end(), vals[i].begin());
      modp::ntt(F_, vals[i], false);
    }
    std::array<std::vector<modp::u32>, 3> out;
    for (auto& o : out) o.assign(len, 0);
    std::vector<modp::u32> px(static_cast<std::size_t>(d_) + 1), py(px.size()), pz(px.size());
    for (std::size_t k = 0; k < len; ++k) {
      px[0] = py[0] = pz[0] = 1;
      for (std::size_t e = 1; e < px.size(); ++e) {
        px[e] = F_.mul(px[e - 1], vals[0][k]);
        py[e] = F_.mul(py[e - 1], vals[1][k]);
        pz[e] = F_.mul(pz[e - 1], vals[2][k]);
      }
      for (std::size_t i = 0; i < 3; ++i) {
        const ModForm& P = forms_[i];
        modp::u64 acc = 0;
        for (std::size_t j = 0; j < P.coef.size(); ++j) {
          const int ex = P.mono[j][0], ey = P.mono[j][1], ez = d_ - ex - ey;
          acc += F_.mul(P.coef[j], F_.mul(px[static_cast<std::size_t>(ex)],
                                          F_.mul(py[static_cast<std::size_t>(ey)], pz[static_cast<std::size_t>(ez)])));
          if (acc >= (modp::u64{1} << 62)) acc = F_.reduce(acc);
        }
        out[i][k] = F_.reduce(acc);
      }
    }
    for (std::size_t i = 0; i < 3; ++i) {
      modp::ntt(F_, out[i], true);
      out[i].resize(need);
      modp::trim(out[i]);
      next[i] = std::move(out[i]);
    }
    if (next[0].empty() && next[1].empty() && next[2].empty()) {
      throw Error(Errc::Degenerate, "orbit of the test line collapsed at n = " + std::to_string(n));
    }
    // Common factor: gcd(c0, c1 + r c2), widened to c2 only if needed.
    modp::Poly g = modp::gcd(F_, next[0], modp::add(F_, next[1], modp::scale(F_, next[2], coef_r_)));
    if (!next[2].empty() && !modp::rem(F_, next[2], g).empty()) g = modp::gcd(F_, g, next[2]);
    if (modp::deg(g) > 0) {
      for (auto& c : next) c = modp::divmod(F_, c, g).first;
    }
    cur_ = std::move(next);
    return max_degree();
  }

 private:
  long long max_degree() const {
    long long m = 0;
    for (const auto& c : cur_) m = std::max<long long>(m, modp::deg(c));
    return m;
  }

  modp::Field F_;
  int d_;
  std::array<ModForm, 3> forms_;
  std::array<modp::Poly, 3> cur_;
  modp::u32 coef_r_ = 1;
};

inline void check_submultiplicative(const std::vector<long long>& d) {
  const std::size_t N = d.size();
  for (std::size_t a = 1; a <= N; ++a)
    for (std::size_t b = a; a + b <= N; ++b) {
      if (d[a + b - 1] > d[a - 1] * d[b - 1]) {
        throw Error(Errc::Verification, "submultiplicativity fails: deg phi^" + std::to_string(a + b) + " = " +
                                            std::to_string(d[a + b - 1]) + " > " + std::to_string(d[a - 1]) + " * " +
                                            std::to_string(d[b - 1]));
      }
    }
}

inline std::vector<long long> modular_run(const CremonaMap& phi, int N, modp::u32 p, std::uint64_t seed) {
  LineOrbit orbit(phi, p, seed);
  std::vector<long long> d;
  for (int n = 1; n <= N; ++n) d.push_back(orbit.step(n));
  return d;
}

}  // namespace detail

inline DegreeSequence degree_sequence_exact(const CremonaMap& phi, int N) {
  if (N < 1) throw Error(Errc::Precondition, "N must be at least 1");
  DegreeSequence s;
  s.method = DegreeMethod::Exact;
  CremonaMap it = phi;
  s.degrees.push_back(it.degree());
  for (int n = 2; n <= N; ++n) {
    try {
      it = compose(phi, it);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " (at n = " + std::to_string(n) + ")");
    }
    s.degrees.push_back(it.degree());
  }
  detail::check_submultiplicative(s.degrees);
  return s;
}

/// `runs` independent runs (prime and line); if any entry is disputed, one
/// more run is made and every entry takes the maximum over all runs.
inline DegreeSequence degree_sequence_modular(const CremonaMap& phi, int N, std::uint64_t seed = 1, int runs = 2) {
  if (N < 1) throw Error(Errc::Precondition, "N must be at least 1");
  if (runs < 2) throw Error(Errc::Precondition, "at least two modular runs are needed for agreement");
  DegreeSequence s;
  s.method = DegreeMethod::Modular;
  std::mt19937_64 rng(seed);
  int adicity = 23;
  std::vector<modp::u32> pool;
  const auto refill = [&] {
    pool = modp::ntt_primes(adicity);
    std::erase_if(pool, [&](modp::u32 p) { return std::find(s.primes.begin(), s.primes.end(), p) != s.primes.end(); });
    std::shuffle(pool.begin(), pool.end(), rng);
  };
  refill();
  std::vector<std::vector<long long>> done;
  // A run whose prime cannot carry the needed transform is restarted with a
  // prime of larger two-adicity.
  const auto run_next = [&] {
    for (;;) {
      if (pool.empty()) throw Error(Errc::Precondition, "no unused prime supports a transform of length 2^" + std::to_string(adicity));
      const modp::u32 p = pool.back();
      pool.pop_back();
      try {
        done.push_back(detail::modular_run(phi, N, p, rng()));
        s.primes.push_back(p);
        return;
      } catch (const detail::BadPrime&) {
        continue;
      } catch (const detail::TransformTooLong& t) {
        if (t.log_length > detail::kMaxTransformLog) {
          throw Error(Errc::Precondition, "deg phi^n needs a transform of length 2^" + std::to_string(t.log_length) +
                                              ", beyond the supported 2^" + std::to_string(detail::kMaxTransformLog));
        }
        adicity = std::max(adicity, t.log_length);
        refill();
      }
    }
  };
  for (int k = 0; k < runs; ++k) run_next();
  for (std::size_t n = 0; n < static_cast<std::size_t>(N); ++n) {
    for (const auto& r : done) {
      if (r[n] != done[0][n]) {
        s.disputed.push_back(static_cast<int>(n) + 1);
        break;
      }
    }
  }
  if (!s.disputed.empty()) run_next();
  for (std::size_t n = 0; n < static_cast<std::size_t>(N); ++n) {
    long long m = 0;
    for (const auto& r : done) m = std::max(m, r[n]);
    s.degrees.push_back(m);
  }
  detail::check_submultiplicative(s.degrees);
  return s;
}

inline DegreeSequence degree_sequence(const CremonaMap& phi, int N, DegreeMethod method, std::uint64_t seed = 1,
                                      int runs = 2) {
  return method == DegreeMethod::Exact ? degree_sequence_exact(phi, N) : degree_sequence_modular(phi, N, seed, runs);
}

// ---------------------------------------------------------------------------
// Growth classification

enum class GrowthClass { Bounded, Linear, Quadratic, Exponential };

inline const char* growth_name(GrowthClass g) {
  switch (g) {
    case GrowthClass::Bounded: return "bounded";
    case GrowthClass::Linear: return "linear";
    case GrowthClass::Quadratic: return "quadratic";
    case GrowthClass::Exponential: return "exponential";
  }
  return "?";
}

struct PolyFit {
  std::vector<Rat> coeffs;  // c_0 + c_1 n + ...
  Rat max_residual;         // max |d_n - fit(n)| / d_N
};

struct GrowthReport {
  GrowthClass growth_class = GrowthClass::Bounded;
  Rat lambda_estimate = 1;
  Rat root_lower, root_upper;  // enclosure of d_N^(1/N)
  PolyFit linear, quadratic;
  double exp_rate = 1, exp_residual = 0;  // d_n ~ C rate^n, log-linear least squares
  bool margin_met = false;  // d_N >= (11/10)^N
  std::vector<long long> data;
};

inline constexpr int kRootDigits = 6;

/// [lo, hi] with hi - lo = 10^-6 enclosing (num/den)^(1/k).
inline std::pair<Rat, Rat> root_enclosure(const Int& num, const Int& den, unsigned long k) {
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, kRootDigits);
  Int big;
  mpz_pow_ui(big.get_mpz_t(), scale.get_mpz_t(), k);
  Int X = num * big / den, r;
  mpz_root(r.get_mpz_t(), X.get_mpz_t(), k);
  return {make_rat(r, scale), make_rat(r + 1, scale)};
}

/// Least squares fit of the given degree, solved exactly.
inline PolyFit fit_polynomial(const std::vector<long long>& d, int degree) {
  const std::size_t k = static_cast<std::size_t>(degree) + 1;
  RatMatrix normal(k, std::vector<Rat>(k, Rat(0)));
  std::vector<Rat> rhs(k, Rat(0));
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Rat n(static_cast<long>(i + 1));
    std::vector<Rat> pw(2 * k, Rat(1));
    for (std::size_t e = 1; e < 2 * k; ++e) pw[e] = pw[e - 1] * n;
    for (std::size_t a = 0; a < k; ++a) {
      rhs[a] += pw[a] * Rat(static_cast<long>(d[i]));
      for (std::size_t b = 0; b < k; ++b) normal[a][b] += pw[a + b];
    }
  }
  auto sol = solve(normal, rhs, k);
  if (!sol) throw Error(Errc::Precondition, "too few entries for the fit");
  PolyFit f;
  f.coeffs = *sol;
  f.max_residual = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    Rat v = 0, n(static_cast<long>(i + 1)), pw = 1;
    for (const auto& c : f.coeffs) {
      v += c * pw;
      pw *= n;
    }
    Rat r = abs(Rat(static_cast<long>(d[i])) - v);
    if (r > f.max_residual) f.max_residual = r;
  }
  f.max_residual /= Rat(static_cast<long>(d.back()));
  return f;
}

/// Fits log d_n = a + b n; returns (e^b, max |d_n - fit| / d_N).
inline std::pair<double, double> fit_exponential(const std::vector<long long>& d) {
  const double N = static_cast<double>(d.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double x = static_cast<double>(i + 1), y = std::log(static_cast<double>(d[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double b = (N * sxy - sx * sy) / (N * sxx - sx * sx), a = (sy - b * sx) / N;
  double res = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    res = std::max(res, std::abs(static_cast<double>(d[i]) - std::exp(a + b * static_cast<double>(i + 1))));
  }
  return {std::exp(b), res / static_cast<double>(d.back())};
}

/// Largest relative residual under which a polynomial fit is accepted.
inline Rat fit_tolerance() { return Rat(1, 20); }

inline GrowthReport dyn_degree_estimate(const DegreeSequence& seq) {
  const auto& d = seq.degrees;
  if (d.size() < 6) throw Error(Errc::Precondition, "need at least 6 entries, got " + std::to_string(d.size()));
  GrowthReport r;
  r.data = d;
  const unsigned long N = d.size();
  std::tie(r.root_lower, r.root_upper) = root_enclosure(Int(static_cast<long>(d.back())), Int(1), N);
  Int p11, p10;
  mpz_ui_pow_ui(p11.get_mpz_t(), 11, N);
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, N);
  r.margin_met = Int(static_cast<long>(d.back())) * p10 >= p11;
  r.linear = fit_polynomial(d, 1);
  r.quadratic = fit_polynomial(d, 2);
  std::tie(r.exp_rate, r.exp_residual) = fit_exponential(d);
  const bool exp_wins = r.exp_rate >= 1.1 && r.exp_residual < r.quadratic.max_residual.get_d();

  const long long mx = *std::max_element(d.begin(), d.end());
  if (std::count(d.begin(), d.end(), mx) >= 2) {
    r.growth_class = GrowthClass::Bounded;
  } else if (r.margin_met && exp_wins) {
    r.growth_class = GrowthClass::Exponential;
  } else if (r.linear.max_residual <= fit_tolerance() || r.linear.max_residual <= r.quadratic.max_residual) {
    r.growth_class = GrowthClass::Linear;
  } else {
    r.growth_class = GrowthClass::Quadratic;
  }
  if (r.growth_class == GrowthClass::Exponential) {
    // Tail ratio over the last two steps; the N-th root converges slowly.
    r.lambda_estimate = root_enclosure(Int(static_cast<long>(d[N - 1])), Int(static_cast<long>(d[N - 3])), 2).first;
    if (r.lambda_estimate < 1) r.lambda_estimate = 1;
  }
  return r;
}

}  // namespace cremona
