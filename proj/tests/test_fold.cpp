#include "mfkit/fold.hpp"

#include "mfkit/homalg.hpp"

#include <doctest.h>

#include <random>

using namespace mfkit;

namespace {

GradedRing ring_n(int n, FieldSpec fs = FieldSpec::rationals()) {
  static const std::vector<std::string> names = {"x", "y", "z", "u"};
  return GradedRing(std::vector<std::string>(names.begin(), names.begin() + n), std::vector<int>(n, 1), fs);
}

std::vector<int> seq_n(int n) {
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = i;
  return s;
}

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("koszul_complex ranks and d^2") {
  for (int n = 1; n <= 4; ++n) {
    GradedRing R = ring_n(n);
    FreeComplex K = koszul_complex(R, seq_n(n));
    CHECK(K.lo == -n);
    CHECK(K.hi == 0);
    for (long j = K.lo; j <= 0; ++j) CHECK(K.rank_at(j) == binom(n, -j));
    CHECK(validate_complex(K, true).ok);
  }
  GradedRing R1 = ring_n(1);
  FreeComplex K1 = koszul_complex(R1, seq_n(1));
  CHECK(K1.diff_at(0)(0, 0) == R1.variable(0));

  std::vector<int> repeated{0, 0};
  CHECK_THROWS_AS(koszul_complex(ring_n(2), repeated), Error);
}

TEST_CASE("koszul_homotopy: worked n=2 example and identities") {
  GradedRing R = ring_n(2);
  FreeComplex K = koszul_complex(R, seq_n(2));
  std::vector<Poly> split{R.variable(1), R.zero()};  // w = xy = y*x + 0*y
  KoszulData kd = koszul_homotopy(K, R, seq_n(2), split);
  CHECK(kd.w == R.parse("x*y"));

  // h(1) = y e1; h(e1) = 0; h(e2) = y e1^e2
  const PolyMat& h0 = kd.homotopies.at(0);    // Lambda^0 -> Lambda^1
  const PolyMat& h1 = kd.homotopies.at(-1);   // Lambda^1 -> Lambda^2
  CHECK(h0(0, 0) == R.variable(1));
  CHECK(h0(1, 0).is_zero());
  CHECK(h1(0, 0).is_zero());
  CHECK(h1(0, 1) == R.variable(1));

  // wrong splitting rejected
  std::vector<Poly> bad{R.variable(0), R.zero()};
  CHECK_THROWS_AS(stabilize(R, seq_n(2), R.parse("x*y"), bad), Error);
}

TEST_CASE("koszul identities on random splittings, n <= 4") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int n = 1; n <= 4; ++n) {
    GradedRing R = ring_n(n);
    FreeComplex K = koszul_complex(R, seq_n(n));
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<Poly> split;
      for (int i = 0; i < n; ++i) {
        Poly p = R.zero();
        for (long d = 0; d <= 2; ++d)
          for (const auto& m : R.monomials_of_degree(d))
            if (int c = coeff(rng); c != 0) p += R.monomial(m, FieldElem(c));
        split.push_back(std::move(p));
      }
      // constructor verifies dh + hd = w*Id and h^2 = 0 exactly
      CHECK_NOTHROW(koszul_homotopy(K, R, seq_n(n), split));
    }
  }
}

TEST_CASE("split_w") {
  GradedRing R = ring_n(2);
  auto parts = split_w(R, R.parse("x*y"), seq_n(2));
  CHECK(parts[0] == R.variable(1));
  CHECK(parts[1].is_zero());

  auto parts2 = split_w(R, R.parse("x^2 + y^2"), seq_n(2));
  CHECK(parts2[0] == R.variable(0));
  CHECK(parts2[1] == R.variable(1));

  GradedRing R3 = ring_n(3);
  std::vector<int> xy{0, 1};
  CHECK_THROWS_AS(split_w(R3, R3.variable(2), xy), Error);
}

TEST_CASE("fold: Koszul column and degree-0 identity") {
  GradedRing R = ring_n(1);
  // c0 = Koszul(x), homotopy block w1: fold gives ([w1], [x])
  FreeComplex K = koszul_complex(R, seq_n(1));
  Poly w1 = R.parse("x^3");
  FoldBlocks blocks;
  blocks.z0[{-1, 0}] = K.diff_at(0);  // d
  PolyMat h = poly_zero_matrix(1, 1, 1);
  h(0, 0) = w1;
  blocks.m1[{0, -1}] = h;
  Factorization E = fold(zero_complex(R), K, blocks, R.parse("x^4"));
  CHECK(E.phi0(0, 0) == R.variable(0));
  CHECK(E.phim1(0, 0) == w1);
  CHECK(validate_factorization(E).ok);

  // degree-0 concentrated pair with diagonal blocks is the identity embedding
  FreeComplex cm1 = make_complex(R, 0, {E.e1}, {});
  FreeComplex c0 = make_complex(R, 0, {E.e0}, {});
  FoldBlocks diag;
  diag.m1[{0, 0}] = E.phim1;
  diag.z0[{0, 0}] = E.phi0;
  CHECK(fold(cm1, c0, diag, E.w) == E);

  // violated sum identity is reported with the offending (p,q)
  FoldBlocks badblocks = blocks;
  badblocks.m1[{0, -1}](0, 0) = R.parse("x^2");
  ValidityReport rep = verify_fold_blocks(zero_complex(R), K, badblocks, R.parse("x^4"));
  CHECK_FALSE(rep.ok);
  CHECK(rep.to_string().find("(p,q)") != std::string::npos);
}

TEST_CASE("fold shift compatibility") {
  GradedRing R = ring_n(2);
  Poly w = R.parse("x*y");
  auto st = stabilization(R, seq_n(2), w, split_w(R, w, seq_n(2)));
  Folding shifted = shift_folding(st.folding);
  CHECK(shifted.fact == shift(st.folding.fact, 1));
  Folding twice = shift_folding(shifted);
  CHECK(twice.fact == shift(st.folding.fact, 2));

  GradedRing R3 = ring_n(3);
  Poly w3 = R3.parse("x*y + z^2");
  auto st3 = stabilization(R3, seq_n(3), w3, split_w(R3, w3, seq_n(3)));
  CHECK(shift_folding(st3.folding).fact == shift(st3.folding.fact, 1));
}

TEST_CASE("stabilize") {
  {
    GradedRing R = ring_n(1);
    std::vector<Poly> sp{R.variable(0)};
    Factorization E = stabilize(R, seq_n(1), R.parse("x^2"), sp);
    CHECK(E.e1.rank() == 1);
    CHECK(E.phi0(0, 0) == R.variable(0));
    CHECK(E.phim1(0, 0) == R.variable(0));
  }
  {
    GradedRing R = ring_n(2);
    Poly w = R.parse("x*y");
    std::vector<Poly> sp{R.variable(1), R.zero()};
    Factorization E = stabilize(R, seq_n(2), w, sp);
    CHECK(E.phi0(0, 0) == R.variable(0));
    CHECK(E.phi0(0, 1) == R.variable(1));
    CHECK(E.phi0(1, 0).is_zero());
    CHECK(E.phi0(1, 1) == R.variable(1));
    CHECK(E.phim1(0, 0) == R.variable(1));
    CHECK(E.phim1(0, 1) == -R.variable(1));
    CHECK(E.phim1(1, 0).is_zero());
    CHECK(E.phim1(1, 1) == R.variable(0));
    CHECK(PolyMat(E.phi0 * E.phim1) == scalar_matrix(w, 2));
    CHECK(PolyMat(E.phim1 * E.phi0) == scalar_matrix(w, 2));
  }
  {
    GradedRing R = ring_n(4);
    Poly w = R.parse("x*y + z*u");
    auto sp = split_w(R, w, seq_n(4));
    Factorization E = stabilize(R, seq_n(4), w, sp);
    CHECK(E.e1.rank() == 8);
    CHECK(E.e0.rank() == 8);
    CHECK(validate_factorization(E).ok);
  }
}

TEST_CASE("stabilize with nontrivial weights") {
  // w = x^2 + y is homogeneous of degree 2 for weights (1, 2)
  GradedRing R({"x", "y"}, {1, 2}, FieldSpec::rationals());
  Poly w = R.parse("x^2 + y");
  std::vector<int> seq{0, 1};
  std::vector<Poly> sp = split_w(R, w, seq);
  CHECK(sp[0] == R.variable(0));
  CHECK(sp[1] == R.constant(1));
  Factorization E = stabilize(R, seq, w, sp);
  CHECK(E.graded);
  CHECK(E.d == 2);
  CHECK(validate_factorization(E).ok);
  CHECK(shift(E, 2) == twist(E, 1));
}

TEST_CASE("totalize") {
  GradedRing R = ring_n(2);
  Poly w = R.parse("x*y");
  Factorization E = stabilize(R, seq_n(2), w, split_w(R, w, seq_n(2)));

  {  // single object at index 0 comes back unchanged
    FactChain one;
    one.lo = 0;
    one.objects = {E};
    CHECK(totalize(one) == E);
  }
  {  // 0 -> E -> E -> 0 via id: rank doubles, validates
    FactChain idc;
    idc.lo = 0;
    idc.objects = {E, E};
    idc.maps = {identity_morphism(E)};
    Factorization T = totalize(idc);
    CHECK(T.e1.rank() == 2 * E.e1.rank());
    CHECK(validate_factorization(T).ok);
  }
  {  // nonzero composite rejected
    FactChain badc;
    badc.lo = 0;
    badc.objects = {E, E, E};
    badc.maps = {identity_morphism(E), identity_morphism(E)};
    CHECK_THROWS_AS(totalize(badc), Error);
  }
  {  // totalize respects direct sums of chains, up to the summand permutation
    FactChain a;
    a.lo = 0;
    a.objects = {E, E};
    a.maps = {identity_morphism(E)};
    FactChain b = a;
    FactChain ab;
    ab.lo = 0;
    ab.objects = {direct_sum(a.objects[0], b.objects[0]), direct_sum(a.objects[1], b.objects[1])};
    ab.maps = {direct_sum(a.maps[0], b.maps[0])};
    Factorization TA = totalize(a), TB = totalize(b), TAB = totalize(ab);
    Factorization TT = direct_sum(TA, TB);
    REQUIRE(TAB.e1.rank() == TT.e1.rank());
    // permutation: interleaved [A-part(l) | B-part(l)] desc l vs [A | B]
    long ra1 = E.e1.rank(), ra0 = E.e0.rank();
    auto perm = [&](long parts, long rank_a, long rank_b, long total_a) {
      std::vector<long> p;
      for (long l = 0; l < parts; ++l) {
        for (long k = 0; k < rank_a; ++k) p.push_back(l * rank_a + k);
        for (long k = 0; k < rank_b; ++k) p.push_back(total_a + l * rank_b + k);
      }
      return p;
    };
    // per chain index the e1 part alternates between e1- and e0-ranks, but at
    // two indices of equal rank here (rank e1 == rank e0 for stabilizations)
    REQUIRE(ra1 == ra0);
    std::vector<long> pe1 = perm(2, ra1, ra1, 2 * ra1);
    std::vector<long> pe0 = pe1;
    bool same = true;
    for (long r = 0; r < TAB.phim1.rows(); ++r)
      for (long c = 0; c < TAB.phim1.cols(); ++c)
        same = same && TAB.phim1(r, c) == TT.phim1(pe1[r], pe0[c]);
    for (long r = 0; r < TAB.phi0.rows(); ++r)
      for (long c = 0; c < TAB.phi0.cols(); ++c)
        same = same && TAB.phi0(r, c) == TT.phi0(pe0[r], pe1[c]);
    CHECK(same);
    for (long i = 0; i < TAB.e1.rank(); ++i) CHECK(TAB.e1.twists[i] == TT.e1.twists[pe1[i]]);
  }
}

TEST_CASE("fold_cone") {
  GradedRing R = ring_n(2);
  Poly w = R.parse("x*y");
  auto st = stabilization(R, seq_n(2), w, split_w(R, w, seq_n(2)));
  const Folding& A = st.folding;

  {  // eta = id on a stabilization: folded cone validates and is contractible
    FactMorphism eta = identity_morphism(A.fact);
    FoldCone fc = fold_cone(eta, A, A);
    CHECK(validate_factorization(fc.cone_fact).ok);
    CHECK(validate_factorization(fc.folding.fact).ok);
    CHECK(folding_matches_cone(fc, A, A));
    CHECK(is_contractible(fc.cone_fact).contractible);
    CHECK(is_contractible(fc.folding.fact).contractible);
  }
  {  // eta = 0
    FactMorphism eta = zero_morphism(A.fact, A.fact);
    FoldCone fc = fold_cone(eta, A, A);
    CHECK(fc.cone_fact == direct_sum(shift(A.fact, 1), A.fact));
    CHECK(folding_matches_cone(fc, A, A));
  }
  {  // eta = w * id into the twisted folding: degree 0, diagonal blocks
    FreeComplex c0_tw = A.c0;
    for (auto& m : c0_tw.modules) m = m.twisted(A.fact.d);
    Folding B = make_folding(A.cm1, c0_tw, A.blocks, A.w);
    REQUIRE(B.fact == twist(A.fact, 1));

    FactMorphism eta = zero_morphism(A.fact, B.fact);
    eta.gm1 = scalar_matrix(w, A.fact.e1.rank());
    eta.g0 = scalar_matrix(w, A.fact.e0.rank());
    REQUIRE(validate_morphism(eta).ok);
    FoldCone fc = fold_cone(eta, A, B);
    CHECK(validate_factorization(fc.cone_fact).ok);
    CHECK(folding_matches_cone(fc, A, B));
    CHECK(verify_fold_blocks(fc.folding.cm1, fc.folding.c0, fc.folding.blocks, w).ok);
  }
  {  // morphisms of nonzero internal degree are rejected (graded bookkeeping)
    Homotopy h;
    h.hm1 = PolyMat::Constant(2, 2, Poly(1).bound(2));
    h.h0 = PolyMat::Constant(2, 2, Poly(1).bound(2));
    FactMorphism eta = zero_morphism(A.fact, A.fact);
    eta.gm1 = h.h0 * A.fact.phi0 + A.fact.phim1 * h.hm1;
    eta.g0 = A.fact.phi0 * h.h0 + h.hm1 * A.fact.phim1;
    REQUIRE(validate_morphism(eta).ok);
    CHECK_THROWS_AS(fold_cone(eta, A, A), Error);
  }
}
