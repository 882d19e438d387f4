#include "mfkit/document.hpp"

#include "mfkit/registry.hpp"

#include <doctest.h>

using namespace mfkit;

TEST_CASE("round-trip is canonical and idempotent") {
  for (const auto& expr : corpus_expressions()) {
    Document doc = make_example(expr);
    std::string once = write_document(doc);
    Document reparsed = parse_document(once);
    std::string twice = write_document(reparsed);
    CHECK(once == twice);
    CHECK(as_factorization(reparsed) == as_factorization(doc));
  }
}

TEST_CASE("coefficients normalize on parse") {
  std::string text = R"({
    "schema_version": "1",
    "ring": {"vars": ["x"], "weights": [1], "field": {"kind": "Q"}},
    "w": [{"coeff": "2/4", "exps": [1]}],
    "payload": {"type": "factorization", "e1_twists": [], "e0_twists": [], "phi0": [], "phim1": []}
  })";
  Document doc = parse_document(text);
  std::string out = write_document(doc);
  CHECK(out.find("\"1/2\"") != std::string::npos);
  CHECK(out.find("2/4") == std::string::npos);

  // F_p residues reduce
  std::string fp = R"({
    "schema_version": "1",
    "ring": {"vars": ["x"], "weights": [1], "field": {"kind": "Fp", "p": 5}},
    "w": [{"coeff": "7", "exps": [1]}],
    "payload": {"type": "factorization", "e1_twists": [], "e0_twists": [], "phi0": [], "phim1": []}
  })";
  CHECK(write_document(parse_document(fp)).find("\"2\"") != std::string::npos);
}

TEST_CASE("schema errors name the offending field") {
  // phi0 with a wrong row count
  std::string text = R"({
    "schema_version": "1",
    "ring": {"vars": ["x"], "weights": [1], "field": {"kind": "Q"}},
    "w": [{"coeff": "1", "exps": [2]}],
    "payload": {
      "type": "factorization",
      "e1_twists": [-1], "e0_twists": [0],
      "phi0": [],
      "phim1": [[[{"coeff": "1", "exps": [1]}]]]
    }
  })";
  try {
    parse_document(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("phi0") != std::string::npos);
    CHECK(std::string(e.what()).find("rows") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_document("not json"), ParseError);
  CHECK_THROWS_AS(parse_document("{}"), ParseError);

  std::string badtype = R"({
    "schema_version": "1",
    "ring": {"vars": ["x"], "weights": [1], "field": {"kind": "Q"}},
    "w": [],
    "payload": {"type": "widget"}
  })";
  CHECK_THROWS_AS(parse_document(badtype), ParseError);

  std::string badexps = R"({
    "schema_version": "1",
    "ring": {"vars": ["x", "y"], "weights": [1, 1], "field": {"kind": "Q"}},
    "w": [{"coeff": "1", "exps": [1]}],
    "payload": {"type": "factorization", "e1_twists": [], "e0_twists": [], "phi0": [], "phim1": []}
  })";
  CHECK_THROWS_AS(parse_document(badexps), ParseError);
}

TEST_CASE("morphism, chain, and complex_pair payloads round-trip") {
  Factorization E = as_factorization(make_example("mf_pair(1,2)"));

  {
    Document doc = make_document(identity_morphism(E));
    Document re = parse_document(write_document(doc));
    CHECK(as_morphism(re) == as_morphism(doc));
    CHECK(write_document(re) == write_document(doc));
  }
  {
    FactChain chain;
    chain.lo = 0;
    chain.objects = {E, E};
    chain.maps = {identity_morphism(E)};
    Document doc = make_document(chain);
    Document re = parse_document(write_document(doc));
    const FactChain& c = as_chain(re);
    CHECK(c.objects.size() == 2);
    CHECK(c.maps.size() == 1);
    CHECK(write_document(re) == write_document(doc));
  }
  {
    GradedRing R = E.ring;
    std::vector<int> seq{0};
    ComplexPair pair{zero_complex(R), koszul_complex(R, seq)};
    Document doc = make_document(R, E.w, pair);
    Document re = parse_document(write_document(doc));
    const ComplexPair& p = as_complex_pair(re);
    CHECK(p.c0.length() == 2);
    CHECK(p.m1.empty());
    CHECK(write_document(re) == write_document(doc));
  }
}
