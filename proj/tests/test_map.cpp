#include <gtest/gtest.h>

#include "testing.hpp"

using namespace cremona;

namespace {

const HomPoly x = X(), y = Y(), z = Z();

CremonaMap m(const char* s) { return make_map(parse_map(s)); }

const CremonaMap tau = m("y*z; x*z; x*y");
const CremonaMap g1 = m("y*z; x*y; -x*z");
const CremonaMap g2 = m("y^2*z - y*z^2; x*y*z + x*z^2; x*y^2 + x*y*z");

// A random quadratic map A o tau o B, with its inverse B^-1 o tau o A^-1.
std::pair<CremonaMap, CremonaMap> random_quadratic(std::mt19937_64& rng) {
  const Mat3 A = testkit::random_invertible(rng), B = testkit::random_invertible(rng);
  const CremonaMap phi = compose(CremonaMap::linear(A), compose(tau, CremonaMap::linear(B)));
  const CremonaMap inv = compose(CremonaMap::linear(inverse3(B)), compose(tau, CremonaMap::linear(inverse3(A))));
  return {phi, inv};
}

}  // namespace

TEST(MakeMap, Examples) {
  const CremonaMap id = m("x; y; z");
  EXPECT_TRUE(id.is_identity());
  EXPECT_EQ(id.degree(), 1);
  const CremonaMap c = make_map({x * y * z * x, x * y * z * y, x * y * z * z});
  EXPECT_TRUE(c.is_identity());
  EXPECT_EQ(tau.degree(), 2);
  EXPECT_EQ(tau[0], y * z);
}

TEST(MakeMap, Errors) {
  EXPECT_THROW(make_map({x, HomPoly::zero(1), z}), Error);
  EXPECT_THROW(make_map({x, y * y, z}), Error);
  try {
    make_map({x, 2 * x, y});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Degenerate);
  }
}

TEST(MakeMap, CanonicalScaling) {
  const CremonaMap a = m("-2*y*z; -2*x*z; -2*x*y");
  EXPECT_EQ(a, tau);
  const CremonaMap b = m("1/2*x; 1/3*y; z");
  EXPECT_EQ(b[0], 3 * x);
  EXPECT_EQ(b[2], 6 * z);
}

TEST(Compose, Examples) {
  const Composition tt = compose_with_witness(tau, tau);
  EXPECT_TRUE(tt.map.is_identity());
  EXPECT_EQ(tt.cancelled, x * y * z);
  // g1 o g1 = xyz (-x, y, z) before cancellation.
  const Composition gg = compose_with_witness(g1, g1);
  EXPECT_EQ(gg.map, m("-x; y; z"));
  EXPECT_EQ(gg.cancelled, x * y * z);
  EXPECT_EQ(compose(g2, CremonaMap()), g2);
  EXPECT_EQ(compose(CremonaMap(), g2), g2);
}

TEST(Compose, DegenerateIsAnError) {
  // (x^2 : xy : y^2) maps the plane onto the conic XZ = Y^2, on which the
  // first component of the outer map vanishes.
  const CremonaMap outer = m("x*z - y^2; x*y; z^2");
  const CremonaMap onto_conic = m("x^2; x*y; y^2");
  try {
    compose(outer, onto_conic);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Degenerate);
  }
}

TEST(Equality, Examples) {
  EXPECT_TRUE(is_identity(CremonaMap()));
  EXPECT_FALSE(is_identity(tau));
  EXPECT_TRUE(maps_equal(tau, m("2*y*z; 2*x*z; 2*x*y")));
  EXPECT_FALSE(maps_equal(tau, g1));
}

TEST(Power, Examples) {
  EXPECT_TRUE(power(tau, 2).is_identity());
  EXPECT_TRUE(power(tau, 0).is_identity());
  EXPECT_TRUE(power(CremonaMap(), 1000000).is_identity());
  EXPECT_TRUE(power(g2, 4).is_identity());
  EXPECT_FALSE(power(g2, 2).is_identity());
  EXPECT_EQ(power(g1, 3), compose(g1, compose(g1, g1)));
  EXPECT_THROW(power(tau, -1), Error);
}

TEST(Apply, Examples) {
  EXPECT_EQ(apply(tau, Point(1, 1, 1)), Point(1, 1, 1));
  EXPECT_EQ(apply(tau, Point(1, 2, 3)), Point(6, 3, 2));
  try {
    apply(tau, Point(1, 0, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IndeterminateAt);
  }
  EXPECT_EQ(apply(CremonaMap(), Point(3, -1, 7)), Point(3, -1, 7));
}

TEST(FixedCurve, Examples) {
  const Triple minors = fixed_minors(tau);
  EXPECT_TRUE(minors[0].proportional(z * (x * x - y * y)));
  EXPECT_FALSE(fixed_curve(tau).has_value());
  const auto F = fixed_curve(m("x; y; -z"));
  ASSERT_TRUE(F.has_value());
  EXPECT_EQ(*F, z);
  // The isolated fixed point (0:0:1) is not part of the answer.
  EXPECT_NE(F->eval(Point(0, 0, 1)), 0);
  EXPECT_THROW(fixed_curve(CremonaMap()), Error);
}

TEST(Jacobian, Examples) {
  EXPECT_EQ(jacobian(CremonaMap()).degree(), 0);
  EXPECT_FALSE(jacobian(CremonaMap()).is_zero());
  EXPECT_TRUE(jacobian(tau).proportional(x * y * z));
  EXPECT_EQ(jacobian(tau), 2 * x * y * z);
  EXPECT_EQ(jacobian(g2).degree(), 6);
}

TEST(BasePoints, Tau) {
  const auto bps = rational_base_points(tau);
  ASSERT_EQ(bps.size(), 3u);
  std::set<Point> seen;
  for (const auto& b : bps) {
    EXPECT_EQ(b.multiplicity, 1);
    seen.insert(b.point);
  }
  EXPECT_EQ(seen, (std::set<Point>{Point(1, 0, 0), Point(0, 1, 0), Point(0, 0, 1)}));
  EXPECT_TRUE(rational_base_points(CremonaMap()).empty());
}

TEST(Homaloidal, Examples) {
  EXPECT_TRUE(homaloidal_check(2, {1, 1, 1}).pass());
  const HomaloidalReport geiser = homaloidal_check(8, std::vector<int>(7, 3));
  EXPECT_TRUE(geiser.pass());
  EXPECT_EQ(geiser.sum, 21);
  EXPECT_EQ(geiser.sum_sq, 63);
  const HomaloidalReport bertini = homaloidal_check(17, std::vector<int>(8, 6));
  EXPECT_TRUE(bertini.pass());
  EXPECT_EQ(bertini.sum, 48);
  EXPECT_EQ(bertini.sum_sq, 288);
  EXPECT_FALSE(homaloidal_check(2, {1, 1}).pass());
  EXPECT_TRUE(homaloidal_check(tau, rational_base_points(tau)).pass());
  EXPECT_THROW(homaloidal_check(2, {0, 1, 1}), Error);
}

TEST(VerifyInverse, Examples) {
  EXPECT_TRUE(verify_inverse(tau, tau));
  EXPECT_FALSE(verify_inverse(tau, CremonaMap()));
  EXPECT_TRUE(verify_inverse(g1, power(g1, 3)));
  EXPECT_TRUE(verify_inverse(g2, power(g2, 3)));
}

TEST(MapProperties, ComposeIsAssociative) {
  std::mt19937_64 rng(301);
  for (int i = 0; i < 60; ++i) {
    const auto a = random_quadratic(rng).first, b = random_quadratic(rng).first;
    const CremonaMap c = CremonaMap::linear(testkit::random_invertible(rng));
    EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
  }
}

TEST(MapProperties, DegreeBoundAndCancellationWitness) {
  std::mt19937_64 rng(302);
  int cancelled = 0;
  for (int i = 0; i < 100; ++i) {
    const auto [a, ainv] = random_quadratic(rng);
    const auto b = random_quadratic(rng).first;
    for (const auto& [phi, psi] : {std::pair{a, b}, std::pair{a, ainv}, std::pair{ainv, b}}) {
      const Composition c = compose_with_witness(phi, psi);
      EXPECT_LE(c.map.degree(), phi.degree() * psi.degree());
      // The witness accounts exactly for the lost degree.
      EXPECT_EQ(c.map.degree() + c.cancelled.degree(), phi.degree() * psi.degree());
      for (int k = 0; k < 3; ++k) {
        EXPECT_TRUE(c.cancelled.degree() == 0 || divides(c.cancelled, substitute(phi[k], psi.components())));
      }
      cancelled += c.cancelled.degree() > 0;
    }
  }
  EXPECT_GE(cancelled, 100);
}

TEST(MapProperties, FixedCurveDividesMinors) {
  std::mt19937_64 rng(303);
  int with_curve = 0;
  for (int i = 0; i < 100; ++i) {
    // Conjugates of the reflection (x : y : -z) fix a line.
    const Mat3 A = testkit::random_invertible(rng);
    const CremonaMap r = compose(CremonaMap::linear(A), compose(m("x; y; -z"), CremonaMap::linear(inverse3(A))));
    const auto [q, qinv] = random_quadratic(rng);
    const auto F = fixed_curve(r);
    ASSERT_TRUE(F.has_value());
    EXPECT_EQ(F->degree(), 1);
    for (const auto& mi : fixed_minors(r)) EXPECT_TRUE(divides(*F, mi));
    // The conjugate fixes q(L), unless q contracts the fixed line L.
    const CremonaMap c = compose(q, compose(r, qinv));
    if (const auto G = fixed_curve(c)) {
      ++with_curve;
      for (const auto& mi : fixed_minors(c)) EXPECT_TRUE(divides(*G, mi));
    }
  }
  EXPECT_GE(with_curve, 80);
}

TEST(MapProperties, BasePointsAnnihilateComponents) {
  std::mt19937_64 rng(304);
  for (int i = 0; i < 100; ++i) {
    const auto [a, b] = random_quadratic(rng);
    const CremonaMap phi = compose(a, b.degree() == 2 ? random_quadratic(rng).first : b);
    const auto bps = rational_base_points(phi);
    EXPECT_FALSE(bps.empty());
    for (const auto& bp : bps) {
      for (int k = 0; k < 3; ++k) EXPECT_EQ(phi[k].eval(bp.point), 0);
      EXPECT_GE(bp.multiplicity, 1);
    }
  }
}

TEST(MapProperties, ConjugatedInvolutionsSquareToIdentity) {
  std::mt19937_64 rng(305);
  for (int i = 0; i < 100; ++i) {
    const Mat3 A = testkit::random_invertible(rng);
    const CremonaMap iota = compose(CremonaMap::linear(A), compose(tau, CremonaMap::linear(inverse3(A))));
    EXPECT_TRUE(compose(iota, iota).is_identity());
    EXPECT_TRUE(verify_inverse(iota, iota));
    EXPECT_TRUE(homaloidal_check(iota, rational_base_points(iota)).pass());
  }
}
