#include "mfkit/fold.hpp"
#include "mfkit/homalg.hpp"
#include "mfkit/registry.hpp"

#include <doctest.h>

#include <random>

using namespace mfkit;

// Random walk through the calculus: every constructed object must validate
// exactly, and a few cross-invariants are spot-checked along the way.
TEST_CASE("operation churn keeps everything exactly valid") {
  std::mt19937_64 rng(0xc0ffee);

  std::vector<Factorization> pool;
  pool.push_back(as_factorization(make_example("mf_pair(1,2)")));
  pool.push_back(as_factorization(make_example("mf_pair(1,3)")));
  pool.push_back(as_factorization(make_example("stab_koszul(2,\"x*y\")")));
  {
    GradedRing R5({"x", "y"}, {1, 1}, FieldSpec::prime_field(5));
    Poly w = R5.parse("x*y");
    std::vector<int> seq{0, 1};
    pool.push_back(stabilize(R5, seq, w, split_w(R5, w, seq)));
  }

  auto pick = [&](auto& v) -> decltype(v[0])& { return v[rng() % v.size()]; };

  for (int step = 0; step < 60; ++step) {
    Factorization& E = pick(pool);
    Factorization out;
    switch (rng() % 6) {
      case 0:
        out = shift(E, rng() % 2 ? 1 : -1);
        break;
      case 1:
        out = twist(E, rng() % 2 ? 1 : -1);
        break;
      case 2: {
        // direct sum with a compatible pool member, if any
        std::vector<const Factorization*> mates;
        for (const auto& F : pool)
          if (F.ring == E.ring && F.w == E.w && F.e1.rank() + E.e1.rank() <= 12)
            mates.push_back(&F);
        if (mates.empty()) continue;
        out = direct_sum(E, *pick(mates));
        break;
      }
      case 3: {
        // cone over a random degree-0 class representative
        std::vector<const Factorization*> mates;
        for (const auto& F : pool)
          if (F.ring == E.ring && F.w == E.w && F.e1.rank() + E.e1.rank() <= 10)
            mates.push_back(&F);
        if (mates.empty()) continue;
        const Factorization& F = *pick(mates);
        HomClasses cls = hom_classes(E, F, 0, HomDegree::internal(0));
        FactMorphism g = cls.morphisms.empty() ? zero_morphism(E, F) : cls.morphisms[rng() % cls.morphisms.size()];
        out = cone(g);
        // the triangle over g collapses exactly
        FactMorphism comp = compose(cone_projection(g), cone_inclusion(g));
        REQUIRE(is_zero(comp.gm1));
        REQUIRE(is_zero(comp.g0));
        break;
      }
      case 4: {
        if (E.e1.rank() > 6) continue;
        Envelope env = contractible_envelope(E);
        REQUIRE(validate_morphism(env.embedding).ok);
        out = env.envelope;
        break;
      }
      default: {
        if (E.e1.rank() > 5) continue;
        FactChain chain;
        chain.lo = 0;
        chain.objects = {E, E};
        chain.maps = {identity_morphism(E)};
        out = totalize(chain);
        REQUIRE(is_contractible(out).contractible);
        break;
      }
    }
    ValidityReport rep = validate_factorization(out);
    if (!rep.ok) {
      CAPTURE(step);
      FAIL_CHECK(rep.to_string());
      break;
    }
    REQUIRE(shift(shift(out, 1), -1) == out);
    REQUIRE(shift(out, 2) == twist(out, 1));
    if (out.e1.rank() <= 12) pool.push_back(std::move(out));
    if (pool.size() > 24) pool.erase(pool.begin() + 4);
  }

  // dg differentials still square to zero on a sample of the grown pool
  for (std::size_t i = 0; i < pool.size(); i += 5) {
    const Factorization& E = pool[i];
    HomSlice a = hom_slice(E, E, 0, HomDegree::internal(0));
    HomSlice b = hom_slice(E, E, 1, HomDegree::internal(0));
    REQUIRE(is_zero(FieldMat(b.differential * a.differential)));
  }
}
