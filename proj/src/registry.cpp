#include "mfkit/registry.hpp"

#include "mfkit/homalg.hpp"

#include <cctype>
#include <sstream>

namespace mfkit {

const std::vector<ExampleEntry>& example_registry() {
  static const std::vector<ExampleEntry> entries = {
      {"mf_pair", "mf_pair(a, d)", "(x^a, x^{d-a}) for w = x^d over Q[x]"},
      {"stab_koszul", "stab_koszul(n, \"w\")", "Koszul stabilization of w over Q[x..] in n variables"},
      {"envelope", "envelope(E)", "contractible envelope G^-(E)"},
      {"cone_id", "cone_id(E)", "cone over the identity of E"},
      {"split_ses_tot", "split_ses_tot(E)", "totalization of the split exact sequence E -> E(+)E -> E"},
      {"tot_id", "tot_id(E)", "totalization of the two-term chain E -> E"},
  };
  return entries;
}

const std::vector<std::string>& corpus_expressions() {
  static const std::vector<std::string> exprs = {
      "mf_pair(1,2)",         "mf_pair(1,3)",
      "mf_pair(2,5)",         "stab_koszul(1,\"x^2\")",
      "stab_koszul(2,\"x*y\")", "stab_koszul(3,\"x*y*z\")",
      "envelope(mf_pair(1,3))", "cone_id(mf_pair(1,2))",
      "split_ses_tot(mf_pair(1,2))", "tot_id(stab_koszul(2,\"x*y\"))",
  };
  return exprs;
}

namespace {

// name(arg, ...) with integer, quoted string, or nested call arguments
struct ExprParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit ExprParser(const std::string& text) : s(text) {}

  void ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& why) {
    throw Error("example expression error at offset " + std::to_string(pos) + ": " + why);
  }

  struct Call {
    std::string name;
    std::vector<std::string> args;  // raw argument substrings
  };

  Call parse_call() {
    ws();
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    if (pos == start) fail("example name expected");
    Call c;
    c.name = s.substr(start, pos - start);
    ws();
    if (pos >= s.size() || s[pos] != '(') return c;
    ++pos;  // '('
    ws();
    if (pos < s.size() && s[pos] == ')') {
      ++pos;
      return c;
    }
    for (;;) {
      c.args.push_back(parse_arg());
      ws();
      if (pos < s.size() && s[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < s.size() && s[pos] == ')') {
        ++pos;
        return c;
      }
      fail("',' or ')' expected");
    }
  }

  std::string parse_arg() {
    ws();
    std::size_t start = pos;
    int depth = 0;
    bool in_str = false;
    while (pos < s.size()) {
      char ch = s[pos];
      if (in_str) {
        if (ch == '"') in_str = false;
      } else if (ch == '"') {
        in_str = true;
      } else if (ch == '(') {
        ++depth;
      } else if (ch == ')') {
        if (depth == 0) break;
        --depth;
      } else if (ch == ',' && depth == 0) {
        break;
      }
      ++pos;
    }
    if (in_str) fail("unterminated string");
    std::string arg = s.substr(start, pos - start);
    while (!arg.empty() && std::isspace(static_cast<unsigned char>(arg.back()))) arg.pop_back();
    return arg;
  }
};

long int_arg(const std::string& a) {
  try {
    std::size_t used = 0;
    long v = std::stol(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    return v;
  } catch (const std::exception&) {
    throw Error("expected an integer argument, got '" + a + "'");
  }
}

std::string string_arg(const std::string& a) {
  if (a.size() < 2 || a.front() != '"' || a.back() != '"')
    throw Error("expected a quoted string argument, got '" + a + "'");
  return a.substr(1, a.size() - 2);
}

Factorization build_factorization(const std::string& expr);

Factorization build_mf_pair(long a, long d) {
  if (d < 1 || a < 0 || a > d) throw Error("mf_pair(a,d) needs 0 <= a <= d and d >= 1");
  GradedRing R({"x"}, {1}, FieldSpec::rationals());
  FreeModule e1{{-a}}, e0{{0}};
  PolyMat phi0 = poly_zero_matrix(1, 1, 1);
  PolyMat phim1 = poly_zero_matrix(1, 1, 1);
  phi0(0, 0) = R.variable(0).pow(static_cast<unsigned>(a));
  phim1(0, 0) = R.variable(0).pow(static_cast<unsigned>(d - a));
  return make_factorization(R, R.variable(0).pow(static_cast<unsigned>(d)), e1, e0, phi0, phim1);
}

Factorization build_stab_koszul(long n, const std::string& wtext) {
  if (n < 1 || n > 4) throw Error("stab_koszul(n, w) needs 1 <= n <= 4");
  static const std::vector<std::string> names = {"x", "y", "z", "u"};
  std::vector<std::string> vars(names.begin(), names.begin() + n);
  GradedRing R(vars, std::vector<int>(n, 1), FieldSpec::rationals());
  Poly w = R.parse(wtext);
  std::vector<int> seq(n);
  for (int i = 0; i < n; ++i) seq[i] = i;
  std::vector<Poly> splitting = split_w(R, w, seq);
  return stabilize(R, seq, w, splitting);
}

FactChain build_split_ses(const Factorization& E) {
  Factorization middle = direct_sum(E, E);
  FactMorphism inc = zero_morphism(E, middle);
  inc.gm1 = vstack(poly_identity(E.e1.rank(), E.ring.nvars()),
                   poly_zero_matrix(E.e1.rank(), E.e1.rank(), E.ring.nvars()));
  inc.g0 = vstack(poly_identity(E.e0.rank(), E.ring.nvars()),
                  poly_zero_matrix(E.e0.rank(), E.e0.rank(), E.ring.nvars()));
  FactMorphism proj = zero_morphism(middle, E);
  proj.gm1 = hstack(poly_zero_matrix(E.e1.rank(), E.e1.rank(), E.ring.nvars()),
                    poly_identity(E.e1.rank(), E.ring.nvars()));
  proj.g0 = hstack(poly_zero_matrix(E.e0.rank(), E.e0.rank(), E.ring.nvars()),
                   poly_identity(E.e0.rank(), E.ring.nvars()));
  FactChain chain;
  chain.lo = 0;
  chain.objects = {E, middle, E};
  chain.maps = {inc, proj};
  return chain;
}

FactChain build_id_chain(const Factorization& E) {
  FactChain chain;
  chain.lo = 0;
  chain.objects = {E, E};
  chain.maps = {identity_morphism(E)};
  return chain;
}

Factorization build_factorization(const std::string& expr) {
  ExprParser p(expr);
  auto call = p.parse_call();
  p.ws();
  if (p.pos != expr.size()) p.fail("unexpected trailing input");

  auto need = [&](std::size_t n) {
    if (call.args.size() != n)
      throw Error(call.name + " expects " + std::to_string(n) + " argument(s)");
  };
  if (call.name == "mf_pair") {
    need(2);
    return build_mf_pair(int_arg(call.args[0]), int_arg(call.args[1]));
  }
  if (call.name == "stab_koszul") {
    need(2);
    return build_stab_koszul(int_arg(call.args[0]), string_arg(call.args[1]));
  }
  if (call.name == "envelope") {
    need(1);
    return contractible_envelope(build_factorization(call.args[0])).envelope;
  }
  if (call.name == "cone_id") {
    need(1);
    return cone(identity_morphism(build_factorization(call.args[0])));
  }
  if (call.name == "split_ses_tot") {
    need(1);
    return totalize(build_split_ses(build_factorization(call.args[0])));
  }
  if (call.name == "tot_id") {
    need(1);
    return totalize(build_id_chain(build_factorization(call.args[0])));
  }
  std::ostringstream os;
  os << "unknown example '" << call.name << "'; registry:";
  for (const auto& e : example_registry()) os << "\n  " << e.signature << "  -- " << e.description;
  throw Error(os.str());
}

}  // namespace

Document make_example(const std::string& expr) { return make_document(build_factorization(expr)); }

std::vector<ManifestResult> run_manifest(const std::string& expr) {
  std::vector<ManifestResult> out;
  Factorization E = build_factorization(expr);

  out.push_back({"validates", validate_factorization(E).ok});

  std::string bytes = write_document(make_document(E));
  std::string again = write_document(parse_document(bytes));
  out.push_back({"round-trip canonical", bytes == again});
  out.push_back({"parsed equals built", as_factorization(parse_document(bytes)) == E});

  ExprParser p(expr);
  auto call = p.parse_call();
  if (call.name == "mf_pair") {
    long a = int_arg(call.args[0]), d = int_arg(call.args[1]);
    if (a >= 1 && a <= d - 1) {
      HomClasses self = hom_classes(E, E, 0, HomDegree::internal(0));
      out.push_back({"self-Hom dim at (0,0) == 1", self.dim == 1});
    }
  } else if (call.name == "stab_koszul") {
    long n = int_arg(call.args[0]);
    long want = n == 1 ? 1 : (1L << (n - 1));
    out.push_back({"component ranks 2^{n-1}", E.e1.rank() == want && E.e0.rank() == want});
  } else if (call.name == "envelope" || call.name == "cone_id" || call.name == "split_ses_tot" ||
             call.name == "tot_id") {
    ContractibilityResult c = is_contractible(E);
    out.push_back({"contractible", c.contractible});
    if (c.witness)
      out.push_back({"witness verifies",
                     homotopy_witnesses(identity_morphism(E), zero_morphism(E, E), *c.witness)});
  }
  return out;
}

}  // namespace mfkit
