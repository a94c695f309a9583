#include <gtest/gtest.h>

#include "testing.hpp"

using namespace cremona;
using testkit::fixture_map;

namespace {

CremonaMap m(const char* s) { return make_map(parse_map(s)); }

const CremonaMap tau = m("y*z; x*z; x*y");

// A quadratic map with no periodic base-point behaviour for these
// coefficients: its degrees double at every step.
const CremonaMap henon_like = compose(tau, m("x + 2*y - z; 3*x - y + 2*z; x + y + 5*z"));

std::vector<long long> seq(std::initializer_list<long long> v) { return v; }

DegreeSequence synthetic(std::vector<long long> d) {
  DegreeSequence s;
  s.degrees = std::move(d);
  return s;
}

}  // namespace

TEST(DegreeSequence, Identity) {
  const DegreeSequence e = degree_sequence(CremonaMap(), 8, DegreeMethod::Exact);
  EXPECT_EQ(e.degrees, std::vector<long long>(8, 1));
  const DegreeSequence mo = degree_sequence(CremonaMap(), 8, DegreeMethod::Modular);
  EXPECT_EQ(mo.degrees, std::vector<long long>(8, 1));
  EXPECT_EQ(mo.primes.size(), 2u);
  EXPECT_NE(mo.primes[0], mo.primes[1]);
  EXPECT_EQ(dyn_degree_estimate(e).growth_class, GrowthClass::Bounded);
}

TEST(DegreeSequence, Involutions) {
  const DegreeSequence t = degree_sequence(tau, 6, DegreeMethod::Exact);
  EXPECT_EQ(t.degrees, seq({2, 1, 2, 1, 2, 1}));
  EXPECT_EQ(degree_sequence(tau, 6, DegreeMethod::Modular).degrees, t.degrees);
  const GrowthReport r = dyn_degree_estimate(t);
  EXPECT_EQ(r.growth_class, GrowthClass::Bounded);
  EXPECT_EQ(r.lambda_estimate, 1);
  const CremonaMap g2 = m("y^2*z - y*z^2; x*y*z + x*z^2; x*y^2 + x*y*z");
  EXPECT_EQ(degree_sequence(g2, 8, DegreeMethod::Exact).at(4), 1);
  EXPECT_EQ(degree_sequence(g2, 8, DegreeMethod::Modular).at(8), 1);
}

TEST(DegreeSequence, JonquieresLinearGrowth) {
  const CremonaMap J = fixture_map("maps/jh_linear.map");
  const DegreeSequence e = degree_sequence(J, 5, DegreeMethod::Exact);
  const DegreeSequence mo = degree_sequence(J, 10, DegreeMethod::Modular, 7);
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(mo.at(n), e.at(n)) << n;
  const GrowthReport r = dyn_degree_estimate(mo);
  EXPECT_EQ(r.growth_class, GrowthClass::Linear);
  EXPECT_EQ(r.lambda_estimate, 1);
  EXPECT_LE(r.linear.max_residual, fit_tolerance());
  // Steps alternate, but two steps always add the same amount.
  for (int n = 1; n + 3 <= 10; ++n) EXPECT_EQ(mo.at(n + 3) - mo.at(n + 1), mo.at(n + 2) - mo.at(n));
}

TEST(DegreeSequence, GenericQuadraticDoubles) {
  const DegreeSequence e = degree_sequence(henon_like, 5, DegreeMethod::Exact);
  EXPECT_EQ(e.degrees, seq({2, 4, 8, 16, 32}));
  const DegreeSequence mo = degree_sequence(henon_like, 10, DegreeMethod::Modular, 3);
  EXPECT_EQ(mo.at(10), 1024);
  EXPECT_TRUE(mo.disputed.empty());
  const GrowthReport r = dyn_degree_estimate(mo);
  EXPECT_EQ(r.growth_class, GrowthClass::Exponential);
  EXPECT_EQ(r.lambda_estimate, 2);
  EXPECT_LE(r.root_lower, 2);
  EXPECT_GE(r.root_upper, 2);
  EXPECT_TRUE(r.margin_met);
}

TEST(DegreeSequence, Errors) {
  EXPECT_THROW(degree_sequence(tau, 0, DegreeMethod::Exact), Error);
  EXPECT_THROW(degree_sequence(tau, 4, DegreeMethod::Modular, 1, 1), Error);
  EXPECT_THROW(detail::check_submultiplicative({2, 5}), Error);
  EXPECT_NO_THROW(detail::check_submultiplicative({2, 4, 8}));
}

TEST(GrowthClassification, SyntheticSequences) {
  std::vector<long long> lin, quad, ex, flat;
  for (long long n = 1; n <= 12; ++n) {
    lin.push_back(3 * n + 2);
    quad.push_back(n * n + 1);
    ex.push_back(1LL << n);
  }
  flat = {2, 3, 3, 3, 3, 3};
  EXPECT_EQ(dyn_degree_estimate(synthetic(lin)).growth_class, GrowthClass::Linear);
  EXPECT_EQ(dyn_degree_estimate(synthetic(quad)).growth_class, GrowthClass::Quadratic);
  EXPECT_EQ(dyn_degree_estimate(synthetic(quad)).lambda_estimate, 1);
  EXPECT_EQ(dyn_degree_estimate(synthetic(ex)).growth_class, GrowthClass::Exponential);
  EXPECT_EQ(dyn_degree_estimate(synthetic(flat)).growth_class, GrowthClass::Bounded);
  EXPECT_THROW(dyn_degree_estimate(synthetic({1, 2, 3})), Error);
  // A fast start that levels off is not exponential.
  EXPECT_NE(dyn_degree_estimate(synthetic({2, 4, 8, 9, 10, 11, 12, 13})).growth_class, GrowthClass::Exponential);
}

TEST(GrowthClassification, RootEnclosure) {
  const auto [lo, hi] = root_enclosure(Int(1024), Int(1), 10);
  EXPECT_LE(lo, 2);
  EXPECT_GE(hi, 2);
  EXPECT_EQ(hi - lo, Rat(1, 1000000));
  const auto [lo3, hi3] = root_enclosure(Int(2), Int(1), 2);
  EXPECT_LT(lo3 * lo3, 2);
  EXPECT_GT(hi3 * hi3, 2);
}

TEST(DynamicsProperties, LinearConjugationInvariance) {
  std::mt19937_64 rng(601);
  const std::vector<long long> base = degree_sequence(henon_like, 6, DegreeMethod::Modular, 11).degrees;
  const CremonaMap J = fixture_map("maps/jh_linear.map");
  const std::vector<long long> jbase = degree_sequence(J, 6, DegreeMethod::Modular, 11).degrees;
  for (int i = 0; i < 30; ++i) {
    const Mat3 A = testkit::random_invertible(rng);
    const CremonaMap L = CremonaMap::linear(A), Li = CremonaMap::linear(inverse3(A));
    EXPECT_EQ(degree_sequence(compose(L, compose(henon_like, Li)), 6, DegreeMethod::Modular, 100 + i).degrees, base);
    EXPECT_EQ(degree_sequence(compose(L, compose(J, Li)), 6, DegreeMethod::Modular, 200 + i).degrees, jbase);
  }
}

TEST(DynamicsProperties, ExactAndModularAgree) {
  std::mt19937_64 rng(602);
  for (int i = 0; i < 20; ++i) {
    const Mat3 A = testkit::random_invertible(rng, 3), B = testkit::random_invertible(rng, 3);
    // Products of two quadratic involution conjugates, with frequent degree drops.
    const CremonaMap q1 = compose(CremonaMap::linear(A), compose(tau, CremonaMap::linear(inverse3(A))));
    const CremonaMap phi = compose(q1, i % 2 ? tau : CremonaMap::linear(B));
    const DegreeSequence e = degree_sequence(phi, 3, DegreeMethod::Exact);
    const DegreeSequence mo = degree_sequence(phi, 3, DegreeMethod::Modular, 300 + i);
    EXPECT_EQ(e.degrees, mo.degrees);
  }
}

TEST(DynamicsProperties, Submultiplicative) {
  std::mt19937_64 rng(603);
  for (int i = 0; i < 30; ++i) {
    const Mat3 A = testkit::random_invertible(rng, 3);
    const CremonaMap phi =
        compose(CremonaMap::linear(A), compose(tau, CremonaMap::linear(testkit::random_invertible(rng, 3))));
    const auto d = degree_sequence(phi, 8, DegreeMethod::Modular, 400 + i).degrees;
    for (std::size_t a = 1; a <= d.size(); ++a)
      for (std::size_t b = 1; a + b <= d.size(); ++b) EXPECT_LE(d[a + b - 1], d[a - 1] * d[b - 1]);
  }
}
