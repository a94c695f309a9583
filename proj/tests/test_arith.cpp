#include <gtest/gtest.h>

#include "testing.hpp"

using namespace cremona;
using cremona::testkit::random_form;
using cremona::testkit::random_nonzero_form;
using P = HomPoly;

namespace {

const P x = X(), y = Y(), z = Z();

P q(const char* s) { return parse_poly(s); }

// 4x4 Sylvester determinant of two quadratics a2 t^2 + a1 t + a0 and
// b2 t^2 + b1 t + b0, written out by cofactor expansion.
Rat sylvester22(const Rat& a2, const Rat& a1, const Rat& a0, const Rat& b2, const Rat& b1, const Rat& b0) {
  const Rat M[4][4] = {{a2, a1, a0, 0}, {0, a2, a1, a0}, {b2, b1, b0, 0}, {0, b2, b1, b0}};
  auto det3x3 = [](const Rat m[3][3]) -> Rat {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  Rat det = 0;
  for (int c = 0; c < 4; ++c) {
    Rat minor[3][3];
    for (int r = 1; r < 4; ++r)
      for (int k = 0, j = 0; k < 4; ++k)
        if (k != c) minor[r - 1][j++] = M[r][k];
    det += ((c % 2) ? -1 : 1) * M[0][c] * det3x3(minor);
  }
  return det;
}

}  // namespace

TEST(Rational, AlwaysReduced) {
  Rat r = make_rat(6, -4);
  EXPECT_EQ(r.get_num(), -3);
  EXPECT_EQ(r.get_den(), 2);
}

TEST(PolyAdd, Examples) {
  EXPECT_TRUE(poly_add(x, -x).is_zero());
  EXPECT_EQ(poly_add(x, y), q("x + y"));
  EXPECT_EQ(poly_add(Rat(1, 2) * x * x, Rat(1, 2) * x * x), x * x);
  EXPECT_THROW(x + x * x, Error);
}

TEST(PolyMul, Examples) {
  EXPECT_EQ(poly_mul(x + y, x - y), q("x^2 - y^2"));
  EXPECT_TRUE(poly_mul(x + y, HomPoly::zero(2)).is_zero());
  EXPECT_EQ(poly_mul(x + y + z, x + y + z), q("x^2 + y^2 + z^2 + 2*x*y + 2*x*z + 2*y*z"));
  EXPECT_EQ(poly_mul(x + y, HomPoly::zero(2)).degree(), 3);
}

TEST(Canonical, PrimitiveWithPositiveLead) {
  const P c = (Rat(-4, 3) * x * y + Rat(2, 9) * z * z).canonical();
  EXPECT_EQ(c, q("-12*x*y + 2*z^2").canonical());
  EXPECT_EQ(c.leading_coeff(), 6);
  EXPECT_EQ(c.coeff(Mono3{0, 0, 2}), -1);
}

TEST(ExactDiv, Examples) {
  EXPECT_EQ(exact_div(q("x^2 - y^2"), x - y), x + y);
  EXPECT_THROW(exact_div(x * x, y), Error);
  try {
    exact_div(x * x, y);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotDivisible);
  }
  try {
    exact_div(x, HomPoly::zero(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DivisionByZero);
  }
  // F o tau for a generic line: yz + xz + xy is not a multiple of x + y + z.
  const P F = x + y + z;
  const P Ft = substitute(F, {y * z, x * z, x * y});
  EXPECT_EQ(Ft, q("x*y + x*z + y*z"));
  EXPECT_FALSE(divides(F, Ft));
}

TEST(Gcd, Examples) {
  EXPECT_EQ(poly_gcd(x * y, x * z), x);
  EXPECT_EQ(poly_gcd(x + y, x + z).degree(), 0);
  // tau o tau before cancellation.
  const Triple tt{substitute(y * z, {y * z, x * z, x * y}), substitute(x * z, {y * z, x * z, x * y}),
                  substitute(x * y, {y * z, x * z, x * y})};
  EXPECT_EQ(tt[0], q("x^2*y*z"));
  EXPECT_EQ(poly_gcd({tt[0], tt[1], tt[2]}), x * y * z);
}

TEST(Substitute, Examples) {
  const Triple f{q("x^2 + y*z"), q("x*y - z^2"), q("y^2")};
  EXPECT_EQ(substitute(x, f), f[0]);
  EXPECT_EQ(substitute(q("x^2 + y*z"), {x, y, z}), q("x^2 + y*z"));
  EXPECT_EQ(substitute(x * y * z, {y * z, x * z, x * y}), q("x^2*y^2*z^2"));
  EXPECT_THROW(substitute(x, {x, y * y, z}), Error);
}

TEST(Resultant, LinearCase) {
  const P r = resultant(z - x, z - y, 2);
  EXPECT_TRUE(r.proportional(x - y));
}

TEST(Resultant, SharedFactorVanishes) {
  const P c = z - x - y;
  EXPECT_TRUE(resultant(c * (x + z), c * (y - 2 * z), 2).is_zero());
  EXPECT_THROW(resultant(x * y, z, 2), Error);
}

TEST(Resultant, GridPencilAgainstSylvesterOracle) {
  const P A = q("x^3 - 3*x^2*z + 2*x*z^2"), B = q("y^3 - 3*y^2*z + 2*y*z^2");
  const ResultantReport rep = resultant_report(A, B, 2);
  // Both cubics are quadratic in z, so the eliminant has degree 9 - 1 = 8.
  EXPECT_EQ(rep.degree, 8);
  ASSERT_FALSE(rep.value.is_zero());
  // Independent oracle: Sylvester determinant at integer specializations.
  for (int u = -3; u <= 3; ++u)
    for (int v = -3; v <= 3; ++v) {
      const Rat ux(u), vy(v);
      const Rat expect = sylvester22(2 * ux, -3 * ux * ux, ux * ux * ux, 2 * vy, -3 * vy * vy, vy * vy * vy);
      EXPECT_EQ(rep.value.eval(std::array<Rat, 3>{ux, vy, Rat(0)}), expect) << u << "," << v;
    }
  // The 8 grid points other than the projection centre (0:0:1) give the
  // directions (a:b); each must be a root.
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      if (a == 0 && b == 0) continue;
      EXPECT_EQ(rep.value.eval(std::array<Rat, 3>{Rat(a), Rat(b), Rat(0)}), 0);
    }
  EXPECT_TRUE(rep.value.proportional(q("x^2*y^2") * (x - y) * (x - y) * (x - 2 * y) * (2 * x - y)));
}

TEST(RestrictToLine, Examples) {
  EXPECT_TRUE(restrict_to_line(x, Point(0, 1, 0), Point(0, 0, 1)).is_zero());
  EXPECT_EQ(restrict_to_line(x, Point(1, 0, 0), Point(0, 1, 0)), x);
  std::mt19937_64 rng(4);
  const P F = q("x^2 + y^2 + z^2");
  for (int i = 0; i < 20; ++i) {
    Point p = testkit::random_point(rng), r = testkit::random_point(rng);
    if (p == r) continue;
    const P T = restrict_to_line(F, p, r);
    EXPECT_EQ(T.degree(), 2);
    EXPECT_EQ(T.eval(std::array<Rat, 3>{Rat(1), Rat(0), Rat(0)}), F.eval(p.coords()));
  }
  EXPECT_THROW(restrict_to_line(x, Point(1, 2, 3), Point(2, 4, 6)), Error);
}

TEST(Eval, Examples) {
  EXPECT_EQ((x + y + z).eval(Point(1, 1, 1)), 3);
  EXPECT_EQ((x * x * y).eval(Point(2, 3, 1)), 12);
  EXPECT_EQ(q("x^2 - y*z").eval(Point(2, 4, 1)), 0);
}

TEST(Point, CanonicalLastNonzero) {
  Point p(Rat(2), Rat(4), Rat(2));
  EXPECT_EQ(p, Point(1, 2, 1));
  EXPECT_EQ(Point(3, 6, 0), Point(Rat(1, 2), Rat(1), Rat(0)));
  EXPECT_THROW(Point(0, 0, 0), Error);
}

TEST(ArithProperties, RingAxioms) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> deg(0, 3);
  for (int i = 0; i < 1000; ++i) {
    const int d = deg(rng);
    const P a = random_form(rng, d), b = random_form(rng, d), c = random_form(rng, d);
    const P e = random_form(rng, deg(rng));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * e, e * a);
    EXPECT_EQ((a * b) * e, a * (b * e));
    EXPECT_EQ((a + b) * e, a * e + b * e);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(ArithProperties, ExactDivInvertsMul) {
  std::mt19937_64 rng(102);
  std::uniform_int_distribution<int> deg(0, 3);
  for (int i = 0; i < 1000; ++i) {
    const P a = random_nonzero_form(rng, deg(rng)), b = random_nonzero_form(rng, deg(rng));
    EXPECT_EQ(exact_div(poly_mul(a, b), b).canonical(), a.canonical());
  }
}

TEST(ArithProperties, GcdDividesAndIsMultiplicative) {
  std::mt19937_64 rng(103);
  std::uniform_int_distribution<int> deg(1, 2);
  for (int i = 0; i < 1000; ++i) {
    const P a = random_nonzero_form(rng, deg(rng)), b = random_nonzero_form(rng, deg(rng));
    const P c = random_nonzero_form(rng, deg(rng));
    const P g = poly_gcd(a, b);
    EXPECT_TRUE(divides(g, a));
    EXPECT_TRUE(divides(g, b));
    EXPECT_EQ(poly_gcd(a * c, b * c), poly_mul(g, c));
  }
}

TEST(ArithProperties, SubstituteIsMultiplicative) {
  std::mt19937_64 rng(104);
  std::uniform_int_distribution<int> deg(0, 2);
  for (int i = 0; i < 1000; ++i) {
    const int d = deg(rng) + 1;
    const Triple phi{random_form(rng, d), random_form(rng, d), random_form(rng, d)};
    const P F = random_nonzero_form(rng, deg(rng)), G = random_nonzero_form(rng, deg(rng));
    EXPECT_EQ(substitute(F * G, phi), substitute(F, phi) * substitute(G, phi));
  }
}

TEST(ArithProperties, ResultantVanishesIffCommonFactorInZ) {
  std::mt19937_64 rng(105);
  std::bernoulli_distribution share(0.5);
  std::uniform_int_distribution<int> deg(1, 2);
  int shared = 0;
  for (int i = 0; i < 300; ++i) {
    P a = random_nonzero_form(rng, deg(rng), 0.7), b = random_nonzero_form(rng, deg(rng), 0.7);
    if (share(rng)) {
      const P c = random_nonzero_form(rng, 1, 1.0);
      a = a * c;
      b = b * c;
    }
    if (a.degree_in(2) == 0 || b.degree_in(2) == 0) continue;
    const bool zero = resultant(a, b, 2).is_zero();
    const bool common = poly_gcd(a, b).degree_in(2) > 0;
    EXPECT_EQ(zero, common) << format_poly(a) << " | " << format_poly(b);
    shared += common;
  }
  EXPECT_GT(shared, 50);
}
