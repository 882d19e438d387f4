#include "mfkit/document.hpp"
#include "mfkit/homalg.hpp"
#include "mfkit/registry.hpp"
#include "mfkit/selftest.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

using namespace mfkit;

constexpr int kOk = 0;
constexpr int kInvalid = 1;    // domain errors, failed validation
constexpr int kParseError = 2;  // I/O and schema failures

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_validate(const std::string& path) {
  Document doc = parse_document(read_file_or_stdin(path));
  ValidityReport rep;
  if (auto* E = std::get_if<Factorization>(&doc.payload)) {
    rep = validate_factorization(*E);
  } else if (auto* g = std::get_if<FactMorphism>(&doc.payload)) {
    rep = validate_factorization(g->source);
    ValidityReport t = validate_factorization(g->target);
    ValidityReport m = validate_morphism(*g);
    for (auto& f : t.failures) rep.fail("target: " + f);
    for (auto& f : m.failures) rep.fail(f);
    rep.ok = rep.ok && t.ok && m.ok;
  } else if (auto* c = std::get_if<FreeComplex>(&doc.payload)) {
    rep = validate_complex(*c, doc.ring.homogeneous_degree(doc.w).has_value());
  } else if (auto* pair = std::get_if<ComplexPair>(&doc.payload)) {
    bool graded = doc.ring.homogeneous_degree(doc.w).has_value();
    rep = validate_complex(pair->m1, graded);
    ValidityReport r2 = validate_complex(pair->c0, graded);
    for (auto& f : r2.failures) rep.fail("c0: " + f);
    rep.ok = rep.ok && r2.ok;
  } else if (auto* chain = std::get_if<FactChain>(&doc.payload)) {
    rep = validate_chain(*chain);
  }
  std::cout << rep.to_string() << "\n";
  return rep.ok ? kOk : kInvalid;
}

int cmd_stabilize(const std::string& vars_csv, const std::string& weights_csv, const std::string& wtext,
                  const std::string& seq_csv, const std::string& split_semis, const std::string& field,
                  long p, const std::string& out) {
  std::vector<std::string> seq_names = split_list(seq_csv, ',');
  std::vector<std::string> vars = vars_csv.empty() ? seq_names : split_list(vars_csv, ',');
  std::vector<int> weights(vars.size(), 1);
  if (!weights_csv.empty()) {
    auto ws = split_list(weights_csv, ',');
    if (ws.size() != vars.size()) throw Error("need one weight per variable");
    for (std::size_t i = 0; i < ws.size(); ++i) weights[i] = std::stoi(ws[i]);
  }
  FieldSpec fs = field == "Fp" ? FieldSpec::prime_field(static_cast<std::uint32_t>(p))
                               : FieldSpec::rationals();
  GradedRing ring(vars, weights, fs);
  Poly w = ring.parse(wtext);
  std::vector<int> seq;
  for (const auto& name : seq_names) {
    int idx = ring.var_index(name);
    if (idx < 0) throw Error("sequence variable '" + name + "' is not a ring variable");
    seq.push_back(idx);
  }
  std::vector<Poly> splitting;
  if (split_semis.empty()) {
    splitting = split_w(ring, w, seq);
  } else {
    for (const auto& s : split_list(split_semis, ';')) splitting.push_back(ring.parse(s));
    if (splitting.size() != seq.size()) throw Error("need one splitting entry per sequence variable");
  }
  Factorization E = stabilize(ring, seq, w, splitting);
  std::cerr << "component ranks: " << E.e1.rank() << " | " << E.e0.rank() << "\n";
  write_file_or_stdout(out, write_document(make_document(E)));
  return kOk;
}

int cmd_cone(const std::string& path, const std::string& out) {
  Document doc = parse_document(read_file_or_stdin(path));
  const FactMorphism& g = as_morphism(doc);
  ValidityReport rep = validate_morphism(g);
  if (!rep.ok) throw Error("input is not a morphism of factorizations\n" + rep.to_string());
  write_file_or_stdout(out, write_document(make_document(cone(g))));
  return kOk;
}

int cmd_shift(const std::string& path, long n, const std::string& out) {
  Document doc = parse_document(read_file_or_stdin(path));
  const Factorization& E = as_factorization(doc);
  ValidityReport rep = validate_factorization(E);
  if (!rep.ok) throw Error("input does not validate\n" + rep.to_string());
  write_file_or_stdout(out, write_document(make_document(shift(E, n))));
  return kOk;
}

int cmd_hom(const std::string& epath, const std::string& fpath, long n, long nmax, bool have_degree,
            long degree, long degree_max, bool have_cap, long cap) {
  Document ed = parse_document(read_file_or_stdin(epath));
  Document fd = parse_document(read_file_or_stdin(fpath));
  const Factorization& E = as_factorization(ed);
  const Factorization& F = as_factorization(fd);
  if (!validate_factorization(E).ok || !validate_factorization(F).ok)
    throw Error("inputs must be valid factorizations");

  if (have_cap) {
    for (long k = n; k <= nmax; ++k) {
      HomClasses cls = hom_classes(E, F, static_cast<int>(k), HomDegree::capped(cap));
      std::cout << "n=" << k << " cap=" << cap << " dim=" << cls.dim << " (approximate)\n";
    }
    return kOk;
  }
  if (!have_degree) {
    if (!E.graded || !F.graded) throw Error("ungraded inputs need --cap");
    degree = 0;
  }
  long tmax = degree_max >= degree ? degree_max : degree;
  for (long k = n; k <= nmax; ++k)
    for (long t = degree; t <= tmax; ++t) {
      HomClasses cls = hom_classes(E, F, static_cast<int>(k), HomDegree::internal(t));
      std::cout << "n=" << k << " t=" << t << " dim=" << cls.dim << "\n";
    }
  return kOk;
}

int cmd_e1(const std::string& rpath, const std::string& fpath, long t, long rlo, long rhi,
           const std::string& direct_path) {
  Document rd = parse_document(read_file_or_stdin(rpath));
  Document fd = parse_document(read_file_or_stdin(fpath));
  const ComplexPair& pair = as_complex_pair(rd);
  const Factorization& F = as_factorization(fd);
  if (rd.ring != fd.ring || !(rd.w.bound(rd.ring.nvars()) == fd.w.bound(fd.ring.nvars())))
    throw Error("resolutions and target live over different (ring, w)");
  if (!validate_factorization(F).ok) throw Error("target factorization does not validate");
  bool graded = rd.ring.homogeneous_degree(rd.w).has_value();
  if (!validate_complex(pair.m1, graded).ok || !validate_complex(pair.c0, graded).ok)
    throw Error("resolution complexes do not validate");

  E1Table table = e1_page(pair.m1, pair.c0, F, t, rlo, rhi);
  std::cout << "E1 page at internal degree " << t << " (window r in [" << rlo << "," << rhi << "]):\n";
  if (table.entries.empty()) std::cout << "  (empty)\n";
  for (const auto& [pq, dim] : table.entries)
    std::cout << "  p=" << pq.first << " q=" << pq.second << " dim=" << dim << "\n";
  for (const auto& [r, total] : table.totals()) std::cout << "  total degree " << r << ": " << total << "\n";

  if (direct_path.empty()) {
    std::cout << "degeneration verdict: skipped (supply --direct <projective representative>)\n";
    return kOk;
  }
  Document pd = parse_document(read_file_or_stdin(direct_path));
  const Factorization& P = as_factorization(pd);
  std::map<long, long> direct;
  for (long r = rlo; r <= rhi; ++r)
    direct[r] = hom_classes(P, F, static_cast<int>(r), HomDegree::internal(t)).dim;
  DegenerationReport rep = ss_degeneration_check(table, direct);
  std::cout << rep.to_string();
  return rep.lower_bound_ok ? kOk : kInvalid;
}

int cmd_example(const std::string& expr, const std::string& out) {
  write_file_or_stdout(out, write_document(make_example(expr)));
  return kOk;
}

int cmd_selftest(const std::string& corpus_dir) {
  return selftest::run_all(std::cout, corpus_dir) ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mfkit: exact matrix factorizations of polynomial potentials"};
  app.require_subcommand(1);

  std::string path, out = "-", epath, fpath, rpath, direct_path, expr;
  std::string vars, weights, wtext, seq, splits, fieldkind = "Q", corpus_dir = "corpus";
  long n = 0, nmax_opt = std::numeric_limits<long>::min();
  long degree = 0, degree_max = std::numeric_limits<long>::min(), cap = 0, p = 5, t = 0;
  long rlo = -2, rhi = 3;

  auto* validate = app.add_subcommand("validate", "check a document against its module's identities");
  validate->add_option("path", path, "document path or -")->required();

  auto* stab = app.add_subcommand("stabilize", "Koszul stabilization of w over (sequence)");
  stab->add_option("--vars", vars, "ring variables, comma separated (default: the sequence)");
  stab->add_option("--weights", weights, "variable weights, comma separated (default: all 1)");
  stab->add_option("--w", wtext, "potential, e.g. \"x^2\" or \"x*y\"")->required();
  stab->add_option("--sequence", seq, "regular sequence of variables, comma separated")->required();
  stab->add_option("--split", splits, "splitting w_i, semicolon separated (default: greedy division)");
  stab->add_option("--field", fieldkind, "Q or Fp")->check(CLI::IsMember({"Q", "Fp"}));
  stab->add_option("--p", p, "prime modulus for Fp");
  stab->add_option("-o,--out", out, "output path or - (default stdout)");

  auto* conec = app.add_subcommand("cone", "cone of a morphism document");
  conec->add_option("path", path, "morphism document path or -")->required();
  conec->add_option("-o,--out", out, "output path or -");

  auto* shiftc = app.add_subcommand("shift", "shift a factorization by n");
  shiftc->add_option("path", path, "factorization document path or -")->required();
  shiftc->add_option("--n", n, "shift amount (may be negative)")->required();
  shiftc->add_option("-o,--out", out, "output path or -");

  auto* hom = app.add_subcommand("hom", "homotopy-category Hom dimensions");
  hom->add_option("E", epath, "source factorization document")->required();
  hom->add_option("F", fpath, "target factorization document")->required();
  hom->add_option("--n", n, "cohomological degree (default 0)");
  hom->add_option("--nmax", nmax_opt, "upper end of the n range (default: --n)");
  auto* dopt = hom->add_option("--degree", degree, "internal degree t (graded mode)");
  hom->add_option("--degree-max", degree_max, "upper end of the degree range");
  auto* copt = hom->add_option("--cap", cap, "degree cap (ungraded mode)");

  auto* e1 = app.add_subcommand("e1", "Hom spectral sequence E1 page");
  e1->add_option("resolutions", rpath, "complex_pair document with the component resolutions")->required();
  e1->add_option("F", fpath, "target factorization document")->required();
  e1->add_option("--degree", t, "internal degree")->required();
  e1->add_option("--rlo", rlo, "lowest total degree (default -2)");
  e1->add_option("--rhi", rhi, "highest total degree (default 3)");
  e1->add_option("--direct", direct_path, "projective representative for the degeneration verdict");

  auto* ex = app.add_subcommand("example", "emit a registry example document");
  ex->add_option("expr", expr, "e.g. mf_pair(1,3) or envelope(mf_pair(1,3))")->required();
  ex->add_option("-o,--out", out, "output path or -");

  auto* self = app.add_subcommand("selftest", "run the acceptance suites");
  self->add_option("--corpus-dir", corpus_dir, "shipped example documents (default: corpus)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(path);
    if (stab->parsed()) return cmd_stabilize(vars, weights, wtext, seq, splits, fieldkind, p, out);
    if (conec->parsed()) return cmd_cone(path, out);
    if (shiftc->parsed()) return cmd_shift(path, n, out);
    if (hom->parsed()) {
      long nmax = nmax_opt == std::numeric_limits<long>::min() ? n : nmax_opt;
      return cmd_hom(epath, fpath, n, nmax, dopt->count() > 0, degree, degree_max, copt->count() > 0, cap);
    }
    if (e1->parsed()) return cmd_e1(rpath, fpath, t, rlo, rhi, direct_path);
    if (ex->parsed()) return cmd_example(expr, out);
    if (self->parsed()) return cmd_selftest(corpus_dir);
  } catch (const mfkit::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const mfkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return kParseError;
  }
  return kOk;
}
