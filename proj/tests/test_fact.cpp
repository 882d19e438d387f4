#include "mfkit/fact.hpp"

#include <doctest.h>

using namespace mfkit;

namespace {

GradedRing qxy() { return GradedRing({"x", "y"}, {1, 1}, FieldSpec::rationals()); }

// rank-1 factorization (phi0 = a, phim1 = b) of w = a b
Factorization rank1(const GradedRing& R, const Poly& a, const Poly& b, long e1_twist) {
  PolyMat ma = poly_zero_matrix(1, 1, R.nvars()), mb = poly_zero_matrix(1, 1, R.nvars());
  ma(0, 0) = a;
  mb(0, 0) = b;
  return make_factorization(R, a * b, FreeModule{{e1_twist}}, FreeModule{{0}}, ma, mb);
}

}  // namespace

TEST_CASE("validate_factorization examples") {
  GradedRing R = qxy();
  Poly x = R.variable(0), y = R.variable(1);

  CHECK(validate_factorization(rank1(R, x, y, -1)).ok);
  GradedRing R1({"x"}, {1}, FieldSpec::rationals());
  CHECK(validate_factorization(rank1(R1, R1.variable(0), R1.variable(0), -1)).ok);

  // w = x + y with matrices ([x],[y]): both products report xy != x+y
  PolyMat mx = poly_zero_matrix(1, 1, 2), my = poly_zero_matrix(1, 1, 2);
  mx(0, 0) = x;
  my(0, 0) = y;
  Factorization bad = make_factorization(R, x + y, FreeModule{{0}}, FreeModule{{0}}, mx, my, false);
  ValidityReport rep = validate_factorization(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.failures.size() == 2);
  CHECK(rep.failures[0].find("(0,0)") != std::string::npos);
}

TEST_CASE("shift") {
  GradedRing R = qxy();
  Factorization E = rank1(R, R.variable(0), R.variable(1), -1);

  CHECK(shift(E, 0) == E);

  Factorization E1 = shift(E, 1);
  CHECK(E1.e1.twists == std::vector<long>{0});
  CHECK(E1.e0.twists == std::vector<long>{-1 + 2});
  CHECK(E1.phim1(0, 0) == -R.variable(0));
  CHECK(E1.phi0(0, 0) == -R.variable(1));
  CHECK(validate_factorization(E1).ok);

  // [2] = twist by Phi with matrices unchanged
  Factorization E2 = shift(E, 2);
  CHECK(E2 == twist(E, 1));
  CHECK(E2.phi0 == E.phi0);

  for (long n = -3; n <= 3; ++n) {
    CHECK(validate_factorization(shift(E, n)).ok);
    CHECK(shift(shift(E, n), -n) == E);
  }
  CHECK(shift(shift(E, 1), -1) == E);

  // same identities over a prime field
  GradedRing R5({"x", "y"}, {1, 1}, FieldSpec::prime_field(5));
  Factorization E5 = rank1(R5, R5.parse("2*x"), R5.parse("3*y"), -1);
  REQUIRE(validate_factorization(E5).ok);
  CHECK(shift(E5, 2) == twist(E5, 1));
  CHECK(shift(shift(E5, 1), -1) == E5);

  // shifting a morphism gives a morphism between the shifted endpoints
  FactMorphism id1 = shift(identity_morphism(E), 1);
  CHECK(id1.source == shift(E, 1));
  CHECK(validate_morphism(id1).ok);
  FactMorphism two = add(id1, id1);
  CHECK(validate_morphism(two).ok);
  FactMorphism cancel = add(two, negate(two));
  CHECK(is_zero(cancel.gm1));
  CHECK(is_zero(cancel.g0));
}

TEST_CASE("twist") {
  GradedRing R = qxy();
  Factorization E = rank1(R, R.variable(0), R.variable(1), -1);
  CHECK(twist(E, 0) == E);
  CHECK(twist(twist(E, 1), -1) == E);
  for (long m = -2; m <= 2; ++m) CHECK(validate_factorization(twist(E, m)).ok);

  Factorization U = make_factorization(E.ring, E.w, E.e1, E.e0, E.phi0, E.phim1, false);
  CHECK_FALSE(U.graded);
  CHECK_THROWS_AS(twist(U, 1), Error);
}

TEST_CASE("cone") {
  GradedRing R = qxy();
  Factorization E = rank1(R, R.variable(0), R.variable(1), -1);
  Factorization F = rank1(R, R.variable(1), R.variable(0), -1);

  // cone(0) is the block-diagonal sum E[1] (+) F
  CHECK(cone(zero_morphism(E, F)) == direct_sum(shift(E, 1), F));

  FactMorphism id = identity_morphism(E);
  Factorization C = cone(id);
  CHECK(validate_factorization(C).ok);
  CHECK(C.e1.rank() == 2);

  FactMorphism inc = cone_inclusion(id);
  FactMorphism pr = cone_projection(id);
  CHECK(validate_morphism(inc).ok);
  CHECK(validate_morphism(pr).ok);
  FactMorphism comp = compose(pr, inc);
  CHECK(is_zero(comp.gm1));
  CHECK(is_zero(comp.g0));
}

TEST_CASE("compose and direct_sum") {
  GradedRing R = qxy();
  Factorization E = rank1(R, R.variable(0), R.variable(1), -1);
  Factorization F = rank1(R, R.variable(1), R.variable(0), -1);

  // multiplication by y is a morphism E -> F (y*phi0_E = phi0_F adjusted)
  FactMorphism f = zero_morphism(E, F);
  f.gm1(0, 0) = R.variable(0);
  f.g0(0, 0) = R.variable(1);
  REQUIRE(validate_morphism(f).ok);

  CHECK(compose(identity_morphism(F), f) == f);
  FactMorphism z = compose(f, zero_morphism(E, E));
  CHECK(is_zero(z.gm1));
  CHECK(is_zero(z.g0));

  FactMorphism back = zero_morphism(F, E);
  back.gm1(0, 0) = R.variable(1);
  back.g0(0, 0) = R.variable(0);
  REQUIRE(validate_morphism(back).ok);
  // associativity on a triple
  CHECK(compose(compose(f, back), f) == compose(f, compose(back, f)));

  CHECK(direct_sum(E, zero_factorization(R, E.w)) == E);
  Factorization S = direct_sum(E, F);
  CHECK(S.e1.rank() == 2);
  CHECK(validate_factorization(S).ok);
  CHECK_THROWS_AS(direct_sum(E, rank1(R, R.variable(0), R.variable(0), -1)), Error);

  // endpoint mismatch
  CHECK_THROWS_AS(compose(f, f), Error);
  // cone rejects non-morphisms
  FactMorphism notg = zero_morphism(E, F);
  notg.gm1(0, 0) = Poly(1).bound(2);
  REQUIRE_FALSE(is_morphism(notg));
  CHECK_THROWS_AS(cone(notg), Error);
}

TEST_CASE("contractible envelope") {
  GradedRing R = qxy();
  Factorization E = rank1(R, R.variable(0), R.variable(1), -1);
  Envelope env = contractible_envelope(E);
  CHECK(validate_factorization(env.envelope).ok);
  CHECK(env.envelope.e1.rank() == 2);
  CHECK(validate_morphism(env.embedding).ok);

  // componentwise full column rank over the fraction field, certified by
  // evaluating at a point
  std::vector<FieldElem> pt{FieldElem(3), FieldElem(5)};
  CHECK(rank(evaluate(env.embedding.gm1, pt)) == E.e1.rank());
  CHECK(rank(evaluate(env.embedding.g0, pt)) == E.e0.rank());
}

TEST_CASE("base_change") {
  GradedRing R = qxy();
  Factorization E = rank1(R, R.variable(0), R.variable(1), -1);

  std::vector<Poly> idimg{R.variable(0), R.variable(1)};
  CHECK(base_change(E, R, idimg, E.w) == E);

  GradedRing T({"t"}, {1}, FieldSpec::rationals());
  std::vector<Poly> diag{T.variable(0), T.variable(0)};
  Factorization Et = base_change(E, T, diag, T.parse("t^2"));
  CHECK(validate_factorization(Et).ok);
  CHECK(Et.phi0(0, 0) == T.variable(0));
  CHECK(Et.phim1(0, 0) == T.variable(0));

  GradedRing R5({"x", "y"}, {1, 1}, FieldSpec::prime_field(5));
  std::vector<Poly> red{R5.variable(0), R5.variable(1)};
  CHECK(validate_factorization(base_change(E, R5, red, R5.parse("x*y"))).ok);

  // denominators coprime to p reduce: (1/2)x * 2y = xy, and 1/2 = 3 mod 5
  Factorization H = rank1(R, R.parse("1/2*x"), R.parse("2*y"), -1);
  Factorization H5 = base_change(H, R5, red, R5.parse("x*y"));
  CHECK(validate_factorization(H5).ok);
  CHECK(H5.phi0(0, 0) == R5.parse("3*x"));

  CHECK_THROWS_AS(base_change(E, T, diag, T.parse("t^3")), Error);
  // inhomogeneous image in graded mode
  std::vector<Poly> badimg{T.parse("t + t^2"), T.variable(0)};
  CHECK_THROWS_AS(base_change(E, T, badimg, T.parse("t^2 + t^3")), Error);
}

TEST_CASE("homotopy relation is an equivalence") {
  GradedRing R = qxy();
  Factorization E = rank1(R, R.variable(0), R.variable(1), -1);
  Factorization G = contractible_envelope(E).envelope;

  // explicit null-homotopy of id_G: with both structure maps [[0, 1], [w, 0]],
  // h = [[0, 0], [1, 0]] on both components witnesses id ~ 0
  Homotopy h;
  h.hm1 = poly_zero_matrix(2, 2, 2);
  h.h0 = poly_zero_matrix(2, 2, 2);
  h.hm1(1, 0) = Poly(1).bound(2);
  h.h0(1, 0) = Poly(1).bound(2);
  FactMorphism idg = identity_morphism(G);
  FactMorphism zg = zero_morphism(G, G);
  REQUIRE(homotopy_witnesses(idg, zg, h));

  // h witnesses g1 ~ g2 iff -h witnesses g2 ~ g1
  Homotopy neg{PolyMat(-h.hm1), PolyMat(-h.h0)};
  CHECK(homotopy_witnesses(zg, idg, neg));

  // witness sums compose: id ~ 0 via h and 0 ~ id via neg gives id ~ id via h + neg = 0
  Homotopy sum{PolyMat(h.hm1 + neg.hm1), PolyMat(h.h0 + neg.h0)};
  CHECK(homotopy_witnesses(idg, idg, sum));
}
