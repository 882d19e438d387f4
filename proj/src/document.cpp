#include "mfkit/document.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace mfkit {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& path, const std::string& why) {
  throw ParseError("document error at " + path + ": " + why);
}

const Json& field(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path, "missing field '" + key + "'");
  return *it;
}

long to_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<long>();
}

std::string to_str(const Json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

// ---- writing -------------------------------------------------------------

Json poly_json(const Poly& p) {
  Json terms = Json::array();
  // leading term first
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    Json t;
    t["coeff"] = it->second.to_string();
    t["exps"] = it->first;
    terms.push_back(std::move(t));
  }
  return terms;
}

Json matrix_json(const PolyMat& m) {
  Json rows = Json::array();
  for (long i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (long j = 0; j < m.cols(); ++j) row.push_back(poly_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json ring_json(const GradedRing& ring) {
  Json r;
  r["vars"] = ring.vars();
  r["weights"] = ring.weights();
  Json f;
  if (ring.field().kind == FieldSpec::Kind::Rationals) {
    f["kind"] = "Q";
  } else {
    f["kind"] = "Fp";
    f["p"] = ring.field().p;
  }
  r["field"] = std::move(f);
  return r;
}

Json factorization_fields(const Factorization& E) {
  Json j;
  j["e1_twists"] = E.e1.twists;
  j["e0_twists"] = E.e0.twists;
  j["phi0"] = matrix_json(E.phi0);
  j["phim1"] = matrix_json(E.phim1);
  return j;
}

Json complex_fields(const FreeComplex& c) {
  Json j;
  j["lo"] = c.lo;
  Json mods = Json::array();
  for (const auto& m : c.modules) mods.push_back(m.twists);
  j["modules"] = std::move(mods);
  Json diffs = Json::array();
  for (const auto& d : c.diffs) diffs.push_back(matrix_json(d));
  j["diffs"] = std::move(diffs);
  return j;
}

// ---- parsing -------------------------------------------------------------

Poly parse_poly(const Json& j, const std::string& path, const GradedRing& ring) {
  if (!j.is_array()) bad(path, "expected a list of terms");
  Poly p = ring.zero();
  for (std::size_t k = 0; k < j.size(); ++k) {
    const Json& t = j[k];
    std::string tp = path + "[" + std::to_string(k) + "]";
    FieldElem c = FieldElem::from_string(to_str(field(t, tp, "coeff"), tp + ".coeff"), ring.field());
    const Json& ej = field(t, tp, "exps");
    if (!ej.is_array()) bad(tp + ".exps", "expected a list");
    if (static_cast<int>(ej.size()) != ring.nvars())
      bad(tp + ".exps", "expected " + std::to_string(ring.nvars()) + " exponents, got " +
                            std::to_string(ej.size()));
    Mono m(ring.nvars());
    for (int i = 0; i < ring.nvars(); ++i) {
      long e = to_int(ej[static_cast<std::size_t>(i)], tp + ".exps");
      if (e < 0) bad(tp + ".exps", "negative exponent");
      m[i] = static_cast<std::int32_t>(e);
    }
    p += ring.monomial(m, c);
  }
  return p;
}

PolyMat parse_matrix(const Json& j, const std::string& path, const GradedRing& ring, long rows, long cols) {
  if (!j.is_array()) bad(path, "expected a matrix (list of rows)");
  if (static_cast<long>(j.size()) != rows)
    bad(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  PolyMat m = poly_zero_matrix(rows, cols, ring.nvars());
  for (long i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    std::string rp = path + "[" + std::to_string(i) + "]";
    if (!row.is_array()) bad(rp, "expected a row (list of polynomials)");
    if (static_cast<long>(row.size()) != cols)
      bad(rp, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
    for (long c = 0; c < cols; ++c)
      m(i, c) = parse_poly(row[static_cast<std::size_t>(c)], rp + "[" + std::to_string(c) + "]", ring);
  }
  return m;
}

std::vector<long> parse_twists(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected a list of twists");
  std::vector<long> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(to_int(j[k], path));
  return out;
}

GradedRing parse_ring(const Json& j, const std::string& path) {
  const Json& vj = field(j, path, "vars");
  if (!vj.is_array()) bad(path + ".vars", "expected a list of names");
  std::vector<std::string> vars;
  for (std::size_t k = 0; k < vj.size(); ++k) vars.push_back(to_str(vj[k], path + ".vars"));
  const Json& wj = field(j, path, "weights");
  if (!wj.is_array()) bad(path + ".weights", "expected a list");
  std::vector<int> weights;
  for (std::size_t k = 0; k < wj.size(); ++k) weights.push_back(static_cast<int>(to_int(wj[k], path + ".weights")));
  const Json& fj = field(j, path, "field");
  std::string kind = to_str(field(fj, path + ".field", "kind"), path + ".field.kind");
  FieldSpec fs;
  if (kind == "Q") {
    fs = FieldSpec::rationals();
  } else if (kind == "Fp") {
    long p = to_int(field(fj, path + ".field", "p"), path + ".field.p");
    if (p < 2 || p >= (1L << 31)) bad(path + ".field.p", "modulus out of range");
    try {
      fs = FieldSpec::prime_field(static_cast<std::uint32_t>(p));
    } catch (const Error& e) {
      bad(path + ".field.p", e.what());
    }
  } else {
    bad(path + ".field.kind", "expected \"Q\" or \"Fp\"");
  }
  try {
    return GradedRing(std::move(vars), std::move(weights), fs);
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

Factorization parse_factorization_fields(const Json& j, const std::string& path, const GradedRing& ring,
                                         const Poly& w) {
  FreeModule e1{parse_twists(field(j, path, "e1_twists"), path + ".e1_twists")};
  FreeModule e0{parse_twists(field(j, path, "e0_twists"), path + ".e0_twists")};
  PolyMat phi0 = parse_matrix(field(j, path, "phi0"), path + ".phi0", ring, e0.rank(), e1.rank());
  PolyMat phim1 = parse_matrix(field(j, path, "phim1"), path + ".phim1", ring, e1.rank(), e0.rank());
  try {
    return make_factorization(ring, w, std::move(e1), std::move(e0), std::move(phi0), std::move(phim1));
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

FreeComplex parse_complex_fields(const Json& j, const std::string& path, const GradedRing& ring) {
  long lo = to_int(field(j, path, "lo"), path + ".lo");
  const Json& mj = field(j, path, "modules");
  if (!mj.is_array()) bad(path + ".modules", "expected a list");
  std::vector<FreeModule> modules;
  for (std::size_t k = 0; k < mj.size(); ++k)
    modules.push_back(FreeModule{parse_twists(mj[k], path + ".modules[" + std::to_string(k) + "]")});
  const Json& dj = field(j, path, "diffs");
  if (!dj.is_array()) bad(path + ".diffs", "expected a list");
  if (!modules.empty() && dj.size() + 1 != mj.size())
    bad(path + ".diffs", "expected " + std::to_string(mj.size() - 1) + " differentials");
  std::vector<PolyMat> diffs;
  for (std::size_t k = 0; k < dj.size(); ++k)
    diffs.push_back(parse_matrix(dj[k], path + ".diffs[" + std::to_string(k) + "]", ring,
                                 modules[k + 1].rank(), modules[k].rank()));
  try {
    return make_complex(ring, lo, std::move(modules), std::move(diffs));
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

}  // namespace

Document parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("document is not well-formed JSON: ") + e.what());
  }
  Document doc;
  doc.schema_version = to_str(field(j, "$", "schema_version"), "$.schema_version");
  if (doc.schema_version != "1") bad("$.schema_version", "unsupported version '" + doc.schema_version + "'");
  doc.ring = parse_ring(field(j, "$", "ring"), "$.ring");
  doc.w = parse_poly(field(j, "$", "w"), "$.w", doc.ring);

  const Json& pj = field(j, "$", "payload");
  std::string type = to_str(field(pj, "$.payload", "type"), "$.payload.type");
  if (type == "factorization") {
    doc.payload = parse_factorization_fields(pj, "$.payload", doc.ring, doc.w);
  } else if (type == "morphism") {
    FactMorphism g;
    g.source = parse_factorization_fields(field(pj, "$.payload", "source"), "$.payload.source", doc.ring, doc.w);
    g.target = parse_factorization_fields(field(pj, "$.payload", "target"), "$.payload.target", doc.ring, doc.w);
    g.gm1 = parse_matrix(field(pj, "$.payload", "gm1"), "$.payload.gm1", doc.ring, g.target.e1.rank(),
                         g.source.e1.rank());
    g.g0 = parse_matrix(field(pj, "$.payload", "g0"), "$.payload.g0", doc.ring, g.target.e0.rank(),
                        g.source.e0.rank());
    doc.payload = std::move(g);
  } else if (type == "complex") {
    doc.payload = parse_complex_fields(pj, "$.payload", doc.ring);
  } else if (type == "complex_pair") {
    ComplexPair pair;
    pair.m1 = parse_complex_fields(field(pj, "$.payload", "m1"), "$.payload.m1", doc.ring);
    pair.c0 = parse_complex_fields(field(pj, "$.payload", "c0"), "$.payload.c0", doc.ring);
    doc.payload = std::move(pair);
  } else if (type == "chain") {
    FactChain chain;
    chain.lo = to_int(field(pj, "$.payload", "lo"), "$.payload.lo");
    const Json& oj = field(pj, "$.payload", "objects");
    if (!oj.is_array() || oj.empty()) bad("$.payload.objects", "expected a nonempty list");
    for (std::size_t k = 0; k < oj.size(); ++k)
      chain.objects.push_back(parse_factorization_fields(oj[k], "$.payload.objects[" + std::to_string(k) + "]",
                                                         doc.ring, doc.w));
    const Json& mj = field(pj, "$.payload", "maps");
    if (!mj.is_array() || mj.size() + 1 != oj.size())
      bad("$.payload.maps", "expected " + std::to_string(oj.size() - 1) + " maps");
    for (std::size_t k = 0; k < mj.size(); ++k) {
      std::string mp = "$.payload.maps[" + std::to_string(k) + "]";
      FactMorphism g;
      g.source = chain.objects[k];
      g.target = chain.objects[k + 1];
      g.gm1 = parse_matrix(field(mj[k], mp, "gm1"), mp + ".gm1", doc.ring, g.target.e1.rank(),
                           g.source.e1.rank());
      g.g0 = parse_matrix(field(mj[k], mp, "g0"), mp + ".g0", doc.ring, g.target.e0.rank(),
                          g.source.e0.rank());
      chain.maps.push_back(std::move(g));
    }
    doc.payload = std::move(chain);
  } else {
    bad("$.payload.type", "unknown payload type '" + type + "'");
  }
  return doc;
}

std::string write_document(const Document& doc) {
  Json j;
  j["schema_version"] = doc.schema_version;
  j["ring"] = ring_json(doc.ring);
  j["w"] = poly_json(doc.w.bound(doc.ring.nvars()));

  Json p;
  if (auto* E = std::get_if<Factorization>(&doc.payload)) {
    p["type"] = "factorization";
    p.update(factorization_fields(*E));
  } else if (auto* g = std::get_if<FactMorphism>(&doc.payload)) {
    p["type"] = "morphism";
    p["source"] = factorization_fields(g->source);
    p["target"] = factorization_fields(g->target);
    p["gm1"] = matrix_json(g->gm1);
    p["g0"] = matrix_json(g->g0);
  } else if (auto* c = std::get_if<FreeComplex>(&doc.payload)) {
    p["type"] = "complex";
    p.update(complex_fields(*c));
  } else if (auto* pair = std::get_if<ComplexPair>(&doc.payload)) {
    p["type"] = "complex_pair";
    p["m1"] = complex_fields(pair->m1);
    p["c0"] = complex_fields(pair->c0);
  } else if (auto* chain = std::get_if<FactChain>(&doc.payload)) {
    p["type"] = "chain";
    p["lo"] = chain->lo;
    Json objs = Json::array();
    for (const auto& obj : chain->objects) objs.push_back(factorization_fields(obj));
    p["objects"] = std::move(objs);
    Json maps = Json::array();
    for (const auto& g : chain->maps) {
      Json m;
      m["gm1"] = matrix_json(g.gm1);
      m["g0"] = matrix_json(g.g0);
      maps.push_back(std::move(m));
    }
    p["maps"] = std::move(maps);
  }
  j["payload"] = std::move(p);
  return j.dump(2) + "\n";
}

Document make_document(const Factorization& E) {
  Document doc;
  doc.ring = E.ring;
  doc.w = E.w;
  doc.payload = E;
  return doc;
}

Document make_document(const FactMorphism& g) {
  Document doc;
  doc.ring = g.source.ring;
  doc.w = g.source.w;
  doc.payload = g;
  return doc;
}

Document make_document(const GradedRing& ring, const Poly& w, const FreeComplex& c) {
  Document doc;
  doc.ring = ring;
  doc.w = w.bound(ring.nvars());
  doc.payload = c;
  return doc;
}

Document make_document(const GradedRing& ring, const Poly& w, const ComplexPair& pair) {
  Document doc;
  doc.ring = ring;
  doc.w = w.bound(ring.nvars());
  doc.payload = pair;
  return doc;
}

Document make_document(const FactChain& chain) {
  Document doc;
  doc.ring = chain.objects.front().ring;
  doc.w = chain.objects.front().w;
  doc.payload = chain;
  return doc;
}

const Factorization& as_factorization(const Document& doc) {
  if (auto* E = std::get_if<Factorization>(&doc.payload)) return *E;
  throw Error("expected a factorization payload");
}

const FactMorphism& as_morphism(const Document& doc) {
  if (auto* g = std::get_if<FactMorphism>(&doc.payload)) return *g;
  throw Error("expected a morphism payload");
}

const ComplexPair& as_complex_pair(const Document& doc) {
  if (auto* p = std::get_if<ComplexPair>(&doc.payload)) return *p;
  throw Error("expected a complex_pair payload");
}

const FactChain& as_chain(const Document& doc) {
  if (auto* c = std::get_if<FactChain>(&doc.payload)) return *c;
  throw Error("expected a chain payload");
}

std::string read_file_or_stdin(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_or_stdout(const std::string& path, const std::string& bytes) {
  if (path == "-" || path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << bytes;
}

}  // namespace mfkit
