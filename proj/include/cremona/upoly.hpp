#pragma once

// Univariate polynomials and rational functions in x over Q.

#include <utility>
#include <vector>

#include "cremona/error.hpp"
#include "cremona/rational.hpp"

namespace cremona {

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  UPoly(const Rat& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) c_.push_back(c);
  }
  explicit UPoly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }
  static UPoly x() { return UPoly(std::vector<Rat>{Rat(0), Rat(1)}); }
  static UPoly monomial(int k, const Rat& c) {
    std::vector<Rat> v(static_cast<std::size_t>(k) + 1);
    v[static_cast<std::size_t>(k)] = c;
    return UPoly(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : Rat(0); }
  Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return UPoly(std::move(r));
  }
  UPoly operator-() const {
    UPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw Error(Errc::DivisionByZero, "division by the zero polynomial");
    std::vector<Rat> r = a.c_;
    if (a.degree() < b.degree()) return {UPoly(), a};
    std::vector<Rat> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
    const Rat inv = 1 / b.lead();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
      const Rat f = r[static_cast<std::size_t>(k + b.degree())] * inv;
      q[static_cast<std::size_t>(k)] = f;
      if (f == 0) continue;
      for (int j = 0; j <= b.degree(); ++j) r[static_cast<std::size_t>(k + j)] -= f * b.c_[static_cast<std::size_t>(j)];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    UPoly r = *this;
    const Rat inv = 1 / lead();
    for (auto& v : r.c_) v *= inv;
    return r;
  }

  UPoly derivative() const {
    std::vector<Rat> r;
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * static_cast<unsigned long>(i));
    return UPoly(std::move(r));
  }

  Rat eval(const Rat& x) const {
    Rat acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  UPoly pow(int e) const {
    UPoly r(Rat(1)), b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// Composition p(q(x)).
  UPoly compose(const UPoly& q) const {
    UPoly acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * q + UPoly(c_[i]);
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

/// Monic gcd (zero only when both inputs are zero).
inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

inline bool is_squarefree(const UPoly& h) { return h.degree() <= 0 ? !h.is_zero() : gcd(h, h.derivative()).degree() == 0; }

/// Exact quotient; throws NotDivisible otherwise.
inline UPoly exact_quotient(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(Errc::NotDivisible, "univariate division leaves a remainder");
  return q;
}

/// Reduced fraction num/den with monic denominator.
class RatFunc1 {
 public:
  RatFunc1() : num_(), den_(Rat(1)) {}
  RatFunc1(const UPoly& p) : num_(p), den_(Rat(1)) {}  // NOLINT(google-explicit-constructor)
  RatFunc1(const Rat& c) : num_(c), den_(Rat(1)) {}    // NOLINT(google-explicit-constructor)
  RatFunc1(const UPoly& num, const UPoly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw Error(Errc::DivisionByZero, "rational function with zero denominator");
    normalize();
  }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  friend RatFunc1 operator+(const RatFunc1& a, const RatFunc1& b) {
    return RatFunc1(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  RatFunc1 operator-() const { return RatFunc1(-num_, den_); }
  friend RatFunc1 operator-(const RatFunc1& a, const RatFunc1& b) { return a + (-b); }
  friend RatFunc1 operator*(const RatFunc1& a, const RatFunc1& b) {
    return RatFunc1(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc1 operator/(const RatFunc1& a, const RatFunc1& b) {
    if (b.is_zero()) throw Error(Errc::DivisionByZero, "division by the zero rational function");
    return RatFunc1(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const RatFunc1& a, const RatFunc1& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  Rat eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (d == 0) throw Error(Errc::DivisionByZero, "rational function evaluated at a pole");
    return num_.eval(x) / d;
  }

  /// Composition with a rational function: this(r(x)).
  RatFunc1 compose(const RatFunc1& r) const {
    // Horner over the fraction field.
    auto horner = [&](const UPoly& p) {
      RatFunc1 acc;
      for (int i = p.degree(); i >= 0; --i) acc = acc * r + RatFunc1(p[i]);
      return acc;
    };
    return horner(num_) / horner(den_);
  }

 private:
  void normalize() {
    UPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_quotient(num_, g);
      den_ = exact_quotient(den_, g);
    }
    const Rat l = den_.lead();
    if (l != 1) {
      num_ = num_ * UPoly(1 / l);
      den_ = den_ * UPoly(1 / l);
    }
  }
  UPoly num_, den_;
};

}  // namespace cremona
