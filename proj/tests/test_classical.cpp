#include <gtest/gtest.h>

#include <optional>

#include "testing.hpp"

using namespace cremona;
using testkit::fixture_map;
using testkit::fixture_points;

namespace {

const HomPoly x = X(), y = Y(), z = Z();

CremonaMap m(const char* s) { return make_map(parse_map(s)); }

UPoly up(std::vector<int> c) {
  std::vector<Rat> r;
  for (int v : c) r.push_back(Rat(v));
  return UPoly(std::move(r));
}

bool same(const JhElement& a, const JhElement& b) { return a.a1() == b.a1() && a.a2() == b.a2(); }

JhElement random_jh(std::mt19937_64& rng, const UPoly& h, int deg) {
  std::uniform_int_distribution<int> c(-4, 4);
  for (;;) {
    std::vector<int> p1, p2;
    for (int k = 0; k <= deg; ++k) {
      p1.push_back(c(rng));
      p2.push_back(c(rng));
    }
    const UPoly a1 = up(p1), a2 = up(p2);
    if (a1.is_zero() && a2.is_zero()) continue;
    return jh_make(h, RatFunc1(a1), RatFunc1(a2));
  }
}

// Affine chord-tangent law on y^2 = x^3 + b, written independently of the
// projective construction. nullopt is the point at infinity.
using Aff = std::optional<std::pair<Rat, Rat>>;

Aff weierstrass_add(const Aff& P, const Aff& Q) {
  if (!P) return Q;
  if (!Q) return P;
  const auto& [x1, y1] = *P;
  const auto& [x2, y2] = *Q;
  Rat lambda;
  if (x1 == x2) {
    if (y1 + y2 == 0) return std::nullopt;
    lambda = 3 * x1 * x1 / (2 * y1);
  } else {
    lambda = (y2 - y1) / (x2 - x1);
  }
  const Rat x3 = lambda * lambda - x1 - x2;
  return std::pair<Rat, Rat>{x3, -(y1 + lambda * (x3 - x1))};
}

Point to_point(const Aff& a) { return a ? Point(a->first, a->second, Rat(1)) : Point(0, 1, 0); }

const HomPoly W17 = parse_poly("y^2*z - x^3 - 17*z^3");
const Point O(0, 1, 0);

}  // namespace

TEST(Jonquieres, SigmaAndIdentity) {
  const UPoly h = up({1, 0, 0, 0, 0, 0, 1});
  const JhElement s = jh_sigma(h);
  EXPECT_EQ(s.genus(), 2);
  EXPECT_FALSE(s.is_identity());
  EXPECT_TRUE(jh_mul(s, s).is_identity());
  EXPECT_TRUE(same(jh_inv(s), s));
  const CremonaMap S = jh_homogenize(s);
  EXPECT_TRUE(compose(S, S).is_identity());
  EXPECT_EQ(S, fixture_map("maps/jh_sigma.map"));
  EXPECT_TRUE(affine_preserves(jh_to_affine(s), hyperelliptic_equation(h)));
  // y -> h/y is the identity on y^2 = h.
  EXPECT_TRUE(affine_fixes(jh_to_affine(s), hyperelliptic_equation(h)));
  EXPECT_TRUE(jh_homogenize(jh_identity(h)).is_identity());
}

TEST(Jonquieres, Errors) {
  EXPECT_THROW(jh_make(up({0, 0, 1}), RatFunc1(Rat(1)), RatFunc1(Rat(0))), Error);
  EXPECT_THROW(jh_make(up({3}), RatFunc1(Rat(1)), RatFunc1(Rat(0))), Error);
  EXPECT_THROW(jh_make(up({0, 1}), RatFunc1(Rat(0)), RatFunc1(Rat(0))), Error);
  EXPECT_THROW(jh_mul(jh_sigma(up({1, 0, 1})), jh_sigma(up({2, 0, 1}))), Error);
}

TEST(Jonquieres, LinearExampleMatchesFixture) {
  const UPoly h = up({3, -2, 0, 0, 0, 0, 1});
  const JhElement e = jh_make(h, RatFunc1(up({2, 1})), RatFunc1(up({-1, 1})));
  EXPECT_EQ(jh_homogenize(e), fixture_map("maps/jh_linear.map"));
}

TEST(Jonquieres, DenominatorsAreCleared) {
  const UPoly h = up({1, 0, 1});
  const JhElement a = jh_make(h, RatFunc1{UPoly(Rat(1)), UPoly::x()}, RatFunc1{UPoly(Rat(2)), UPoly::x()});
  EXPECT_EQ(a.a1(), UPoly(Rat(1)));
  EXPECT_EQ(a.a2(), UPoly(Rat(2)));
}

TEST(JonquieresProperties, GroupAxioms) {
  std::mt19937_64 rng(501);
  const UPoly h = up({3, -2, 0, 0, 0, 0, 1});
  for (int i = 0; i < 1000; ++i) {
    const JhElement a = random_jh(rng, h, 2), b = random_jh(rng, h, 2), c = random_jh(rng, h, 1);
    EXPECT_TRUE(same(jh_mul(jh_mul(a, b), c), jh_mul(a, jh_mul(b, c))));
    EXPECT_TRUE(same(jh_mul(a, b), jh_mul(b, a)));
    EXPECT_TRUE(jh_mul(a, jh_inv(a)).is_identity());
    EXPECT_TRUE(same(jh_mul(a, jh_identity(h)), a));
  }
}

TEST(JonquieresProperties, AffineActionFixesTheCurve) {
  std::mt19937_64 rng(502);
  const UPoly h = up({3, -2, 0, 0, 0, 0, 1});
  const AffinePoly F = hyperelliptic_equation(h);
  for (int i = 0; i < 300; ++i) {
    const JhElement a = random_jh(rng, h, 2);
    EXPECT_TRUE(affine_preserves(jh_to_affine(a), F));
    EXPECT_TRUE(affine_fixes(jh_to_affine(a), F));
    EXPECT_EQ(affine_fixes(jh_to_affine(a), AffinePoly::y() - AffinePoly::x()), a.is_identity());
  }
}

TEST(JonquieresProperties, HomogenizationIsAHomomorphism) {
  std::mt19937_64 rng(503);
  const UPoly h = up({1, -1, 0, 1});
  for (int i = 0; i < 40; ++i) {
    const JhElement a = random_jh(rng, h, 1), b = random_jh(rng, h, 1);
    EXPECT_EQ(jh_homogenize(jh_mul(a, b)), compose(jh_homogenize(a), jh_homogenize(b)));
  }
}

TEST(ExtendAuto, Examples) {
  const UPoly h = up({1, 0, 0, 0, 0, 0, 1});
  const RatFunc1 mu{UPoly(Rat(1)), UPoly::x()}, c{UPoly(Rat(1)), UPoly::monomial(3, Rat(1))};
  for (int eps : {1, -1}) {
    const AffineMap2 g = extend_hyperelliptic_auto(h, mu, c, eps);
    EXPECT_TRUE(affine_preserves(g, hyperelliptic_equation(h)));
    EXPECT_TRUE(affine_maps_equal(affine_compose(g, g), AffineMap2::identity()));
  }
  EXPECT_THROW(extend_hyperelliptic_auto(up({2, 0, 0, 0, 0, 0, 1}), mu, c, 1), Error);
  EXPECT_THROW(extend_hyperelliptic_auto(h, mu, c, 2), Error);
  EXPECT_THROW(extend_hyperelliptic_auto(h, RatFunc1(UPoly::monomial(2, Rat(1))), c, 1), Error);
  // x -> -x with c = 1 also normalizes an even h.
  const AffineMap2 r = extend_hyperelliptic_auto(h, RatFunc1(-UPoly::x()), RatFunc1(Rat(1)), 1);
  EXPECT_TRUE(affine_preserves(r, hyperelliptic_equation(h)));
}

TEST(CubicGroupLaw, Examples) {
  const Point P(2, 5, 1), Q(-1, 4, 1);
  EXPECT_EQ(cubic_add(W17, O, P, O), P);
  EXPECT_EQ(cubic_neg(W17, O, P), Point(2, -5, 1));
  EXPECT_EQ(cubic_add(W17, O, P, cubic_neg(W17, O, P)), O);
  EXPECT_EQ(cubic_third(W17, O, O), O);
  EXPECT_EQ(cubic_mul(W17, O, P, 0), O);
  EXPECT_EQ(cubic_mul(W17, O, P, -1), cubic_neg(W17, O, P));
  EXPECT_THROW(cubic_third(W17, Point(1, 1, 1), P), Error);
  EXPECT_THROW(cubic_third(x * y * z, Point(1, 0, 0), Point(1, 0, 0)), Error);
  EXPECT_EQ(cubic_add(W17, O, P, Q), to_point(weierstrass_add(std::pair{Rat(2), Rat(5)}, std::pair{Rat(-1), Rat(4)})));
}

TEST(CubicGroupLaw, AgreesWithAffineFormulas) {
  const std::vector<std::pair<Rat, Rat>> gens{{2, 5}, {-1, 4}, {4, 9}, {-2, 3}, {8, 23}};
  std::mt19937_64 rng(504);
  std::uniform_int_distribution<int> k(-2, 2);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int i = 0; i < 200; ++i) {
    Aff a, b;
    const auto g1 = gens[pick(rng)], g2 = gens[pick(rng)];
    const int k1 = k(rng), k2 = k(rng);
    for (int j = 0; j < std::abs(k1); ++j) a = weierstrass_add(a, std::pair{g1.first, k1 < 0 ? -g1.second : g1.second});
    for (int j = 0; j < std::abs(k2); ++j) b = weierstrass_add(b, std::pair{g2.first, k2 < 0 ? -g2.second : g2.second});
    const Point A = to_point(a), B = to_point(b);
    EXPECT_EQ(cubic_mul(W17, O, to_point(g1), k1), A);
    EXPECT_EQ(cubic_add(W17, O, A, B), to_point(weierstrass_add(a, b)));
    EXPECT_EQ(cubic_add(W17, O, A, B), cubic_add(W17, O, B, A));
  }
}

TEST(DecCubic, QuadraticTranslation) {
  const Point p(2, 5, 1), q(-1, 4, 1), s(4, 9, 1);
  const CremonaMap g = dec_cubic_quadratic(W17, O, p, q, s);
  EXPECT_EQ(g.degree(), 2);
  const PlaneCurve E = make_curve(W17, {});
  EXPECT_TRUE(preserves(g, E).has_value());
  EXPECT_FALSE(fixes(g, E));
  for (const Point& t : {Point(-2, 3, 1), Point(8, 23, 1), Point(8, -23, 1)}) {
    EXPECT_EQ(apply(g, t), cubic_add(W17, O, t, s));
  }
  for (const auto& b : rational_base_points(g)) EXPECT_EQ(W17.eval(b.point), 0);
  EXPECT_THROW(dec_cubic_quadratic(W17, O, p, p, s), Error);
}

TEST(PencilNinthPoint, Grid) {
  EXPECT_EQ(pencil_ninth_point(fixture_points("points/grid8.pts")), Point(2, 2, 1));
  auto grid = fixture_points("points/grid9.pts");
  // Drop a different point: the pencil still recovers it.
  const Point dropped = grid[4];
  grid.erase(grid.begin() + 4);
  EXPECT_EQ(pencil_ninth_point(grid), dropped);
  EXPECT_THROW(pencil_ninth_point(fixture_points("points/geiser7.pts")), Error);
}

TEST(Geiser, PointAndMapAgree) {
  const auto pts = fixture_points("points/geiser7.pts");
  const Point q(5, 7, 1);
  const Point gq = geiser_point(pts, q);
  EXPECT_EQ(geiser_point(pts, gq), q);
  const CremonaMap G = fixture_map("maps/geiser7.map");
  EXPECT_EQ(G.degree(), 8);
  EXPECT_EQ(apply(G, q), gq);
  EXPECT_EQ(geiser_map(pts), G);
  EXPECT_TRUE(homaloidal_check(G, rational_base_points(G)).pass());
  EXPECT_THROW(geiser_point(pts, pts[0]), Error);
}

TEST(Geiser, CollinearPointsAreRejected) {
  const std::vector<Point> bad{Point(0, 0, 1), Point(1, 0, 1), Point(2, 0, 1), Point(3, 0, 1),
                               Point(0, 1, 1), Point(1, 2, 1), Point(5, 7, 1)};
  EXPECT_THROW(geiser_point(bad, Point(9, 4, 1)), Error);
}

TEST(GeiserProperties, Involution) {
  const auto pts = fixture_points("points/geiser7.pts");
  std::mt19937_64 rng(505);
  int checked = 0;
  for (int i = 0; i < 30; ++i) {
    const Point q = testkit::random_point(rng, 6);
    try {
      const Point g = geiser_point(pts, q);
      EXPECT_EQ(geiser_point(pts, g), q);
      ++checked;
    } catch (const Error&) {
    }
  }
  EXPECT_GE(checked, 20);
}

TEST(Bertini, AgreesWithSexticOracle) {
  const auto pts = fixture_points("points/bertini8.pts");
  for (const Point& q : {Point(5, 7, 1), Point(-2, 3, 1), Point(4, 1, 3)}) {
    const Point b = bertini_point(pts, q);
    EXPECT_EQ(b, bertini_point_by_sextics(pts, q));
    EXPECT_EQ(bertini_point(pts, b), q);
  }
  const CubicPencil P = cubic_pencil(pts);
  EXPECT_EQ(bertini_point(pts, P.ninth), P.ninth);
  EXPECT_THROW(bertini_point(pts, pts[0]), Error);
}

TEST(CubicSingularity, Examples) {
  EXPECT_TRUE(cubic_has_rational_singularity(parse_poly("y^2*z - x^3")));
  EXPECT_TRUE(cubic_has_rational_singularity(x * y * z));
  EXPECT_FALSE(cubic_has_rational_singularity(W17));
}

TEST(FiniteGroups, Orders) {
  EXPECT_EQ(map_order(m("y*z; x*z; x*y")), 2);
  EXPECT_EQ(map_order(m("y^2*z - y*z^2; x*y*z + x*z^2; x*y^2 + x*y*z")), 4);
  EXPECT_EQ(map_order(m("x; 2*y; z"), 10), 0);
  EXPECT_EQ(group_closure({m("y*z; x*z; x*y"), m("y; x; z"), m("y; z; x")}).size(), 12u);
  EXPECT_THROW(group_closure({m("x; 2*y; z")}, 5), Error);
}
