#include "mfkit/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace mfkit;

namespace {

FieldMat from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  long r = static_cast<long>(rows.size());
  long c = r == 0 ? 0 : static_cast<long>(rows.begin()->size());
  FieldMat m(r, c);
  long i = 0;
  for (const auto& row : rows) {
    long j = 0;
    for (long v : row) m(i, j++) = FieldElem(v);
    ++i;
  }
  return m;
}

FieldVec vec(std::initializer_list<long> xs) {
  FieldVec v(static_cast<long>(xs.size()));
  long i = 0;
  for (long x : xs) v(i++) = FieldElem(x);
  return v;
}

}  // namespace

TEST_CASE("exact_solve examples") {
  {
    LinearSolution s = exact_solve(from_rows({{1, 0}, {0, 1}}), vec({1, 2}));
    REQUIRE(s.particular.has_value());
    CHECK((*s.particular)(0) == FieldElem(1));
    CHECK((*s.particular)(1) == FieldElem(2));
    CHECK(s.nullspace.empty());
  }
  {
    LinearSolution s = exact_solve(from_rows({{0}}), vec({1}));
    CHECK_FALSE(s.particular.has_value());
  }
  {
    LinearSolution s = exact_solve(from_rows({{1, 1}}), vec({0}));
    REQUIRE(s.particular.has_value());
    CHECK((*s.particular)(0).is_zero());
    CHECK((*s.particular)(1).is_zero());
    CHECK(s.nullspace.size() == 1);
  }
  CHECK_THROWS_AS(exact_solve(from_rows({{1, 1}}), vec({1, 2})), Error);
}

TEST_CASE("exact_solve randomized invariants") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int it = 0; it < 40; ++it) {
    long r = 1 + static_cast<long>(rng() % 5), c = 1 + static_cast<long>(rng() % 5);
    FieldMat A(r, c);
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < c; ++j) A(i, j) = FieldElem(entry(rng));
    FieldVec b(r);
    for (long i = 0; i < r; ++i) b(i) = FieldElem(entry(rng));

    LinearSolution s = exact_solve(A, b);
    if (s.particular) {
      FieldVec res = A * *s.particular - b;
      CHECK(is_zero(FieldMat(res)));
    }
    for (const auto& v : s.nullspace) CHECK(is_zero(FieldMat(A * v)));
    CHECK(rank(A) + static_cast<long>(s.nullspace.size()) == c);
  }
}

TEST_CASE("kernel and rank over F5") {
  FieldSpec f5 = FieldSpec::prime_field(5);
  FieldMat A(2, 2);
  A(0, 0) = FieldElem::from_string("1", f5);
  A(0, 1) = FieldElem::from_string("2", f5);
  A(1, 0) = FieldElem::from_string("3", f5);
  A(1, 1) = FieldElem::from_string("6", f5);  // row 2 = 3 * row 1 mod 5
  CHECK(rank(A) == 1);
  CHECK(kernel_basis(A).size() == 1);
}

TEST_CASE("poly matrix helpers") {
  GradedRing R({"x"}, {1}, FieldSpec::rationals());
  PolyMat a = poly_identity(2, 1);
  PolyMat w = scalar_matrix(R.parse("x^2"), 2);
  CHECK(w(0, 0) == R.parse("x^2"));
  CHECK(w(0, 1).is_zero());
  PolyMat b = block2x2(a, poly_zero_matrix(2, 1, 1), poly_zero_matrix(1, 2, 1), poly_identity(1, 1));
  CHECK(b.rows() == 3);
  CHECK(b.cols() == 3);
  CHECK(b(2, 2) == Poly(1).bound(1));

  std::vector<FieldElem> pt{FieldElem(3)};
  FieldMat e = evaluate(w, pt);
  CHECK(e(1, 1) == FieldElem(9));
}
