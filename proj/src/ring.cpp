#include "mfkit/ring.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

namespace mfkit {

bool GrlexLess::operator()(const Mono& a, const Mono& b) const {
  long da = std::accumulate(a.begin(), a.end(), 0L);
  long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Poly::Poly(long c) {
  if (c != 0) terms_[Mono{}] = FieldElem(c);
}

Poly::Poly(const FieldElem& c) {
  if (!c.is_zero()) terms_[Mono{}] = c;
}

Poly Poly::zero(int nvars) {
  Poly p;
  p.nvars_ = nvars;
  return p;
}

Poly Poly::term(Mono exps, FieldElem coeff, int nvars) {
  if (static_cast<int>(exps.size()) != nvars) throw Error("Poly::term: exponent arity mismatch");
  for (auto e : exps)
    if (e < 0) throw Error("Poly::term: negative exponent");
  Poly p;
  p.nvars_ = nvars;
  if (!coeff.is_zero()) p.terms_[std::move(exps)] = std::move(coeff);
  return p;
}

int Poly::unify_arity(int a, int b) {
  if (a == b) return a;
  if (a == -1) return b;
  if (b == -1) return a;
  throw Error("polynomial arity mismatch (" + std::to_string(a) + " vs " + std::to_string(b) + " variables)");
}

Poly Poly::bound(int n) const {
  if (nvars_ == n) return *this;
  if (nvars_ != -1) throw Error("polynomial arity mismatch");
  Poly p;
  p.nvars_ = n;
  for (const auto& [m, c] : terms_) p.terms_[Mono(n, 0)] = c;
  return p;
}

void Poly::add_term(const Mono& m, const FieldElem& c) {
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_[m] = c;
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Poly Poly::operator-() const {
  Poly r;
  r.nvars_ = nvars_;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  int n = unify_arity(nvars_, o.nvars_);
  Poly r = bound(n);
  if (o.nvars_ == n) {
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  } else {
    Poly ob = o.bound(n);
    for (const auto& [m, c] : ob.terms()) r.add_term(m, c);
  }
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  int n = unify_arity(nvars_, o.nvars_);
  Poly abound, bbound;
  const Poly* ap = this;
  if (nvars_ != n) {
    abound = bound(n);
    ap = &abound;
  }
  const Poly* bp = &o;
  if (o.nvars_ != n) {
    bbound = o.bound(n);
    bp = &bbound;
  }
  Poly r;
  r.nvars_ = n;
  Mono m;
  for (const auto& [ma, ca] : ap->terms_)
    for (const auto& [mb, cb] : bp->terms_) {
      m = ma;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

Poly Poly::operator*(const FieldElem& c) const {
  Poly r;
  r.nvars_ = nvars_;
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) {
    FieldElem w = v * c;
    if (!w.is_zero()) r.terms_[m] = w;
  }
  return r;
}

bool Poly::operator==(const Poly& o) const {
  int n;
  try {
    n = unify_arity(nvars_, o.nvars_);
  } catch (const Error&) {
    return false;
  }
  return bound(n).terms() == o.bound(n).terms();
}

Poly Poly::pow(unsigned e) const {
  Poly r(1);
  Poly b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Poly Poly::substitute(std::span<const Poly> images, int target_nvars, const FieldSpec& target_field) const {
  if (nvars_ >= 0 && static_cast<int>(images.size()) != nvars_)
    throw Error("substitute: need one image per variable");
  Poly r = Poly::zero(target_nvars);
  for (const auto& [m, c] : terms_) {
    Poly t(c.in_field(target_field));
    t = t.bound(target_nvars);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) t = t * images[i].bound(target_nvars).pow(static_cast<unsigned>(m[i]));
    r = r + t;
  }
  return r;
}

FieldElem Poly::evaluate(std::span<const FieldElem> point) const {
  if (nvars_ >= 0 && static_cast<int>(point.size()) != nvars_) throw Error("evaluate: wrong point arity");
  FieldElem acc(0);
  for (const auto& [m, c] : terms_) {
    FieldElem t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::int32_t e = 0; e < m[i]; ++e) t *= point[i];
    acc += t;
  }
  return acc;
}

FieldElem Poly::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? FieldElem(0) : it->second;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << it->second.to_string();
    for (std::size_t i = 0; i < it->first.size(); ++i)
      if (it->first[i] > 0) os << "*x" << i << "^" << it->first[i];
  }
  return os;
}

GradedRing::GradedRing(std::vector<std::string> vars, std::vector<int> weights, FieldSpec field)
    : vars_(std::move(vars)), weights_(std::move(weights)), field_(field) {
  if (vars_.size() != weights_.size()) throw Error("GradedRing: one weight per variable required");
  for (int w : weights_)
    if (w < 1) throw Error("GradedRing: weights must be positive");
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].empty()) throw Error("GradedRing: empty variable name");
    for (std::size_t j = i + 1; j < vars_.size(); ++j)
      if (vars_[i] == vars_[j]) throw Error("GradedRing: duplicate variable '" + vars_[i] + "'");
  }
}

int GradedRing::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

Poly GradedRing::constant(const FieldElem& c) const {
  return Poly(c.in_field(field_)).bound(nvars());
}

Poly GradedRing::variable(int i) const {
  if (i < 0 || i >= nvars()) throw Error("GradedRing: no such variable");
  Mono m(nvars(), 0);
  m[i] = 1;
  return Poly::term(std::move(m), FieldElem::one(field_), nvars());
}

Poly GradedRing::monomial(const Mono& exps, const FieldElem& coeff) const {
  return Poly::term(exps, coeff.in_field(field_), nvars());
}

long GradedRing::weighted_degree(const Mono& m) const {
  long d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<long>(m[i]) * weights_[i];
  return d;
}

std::optional<long> GradedRing::homogeneous_degree(const Poly& p) const {
  if (p.is_zero()) return std::nullopt;
  std::optional<long> d;
  for (const auto& [m, c] : p.terms()) {
    long dm = weighted_degree(m);
    if (!d)
      d = dm;
    else if (*d != dm)
      return std::nullopt;
  }
  return d;
}

namespace {

// Recursive-descent parser for polynomial expressions:
//   expr := term (('+'|'-') term)*      term := factor ('*' factor)*
//   factor := base ('^' uint)?          base := rational | var | '(' expr ')'
class PolyParser {
 public:
  PolyParser(const GradedRing& ring, const std::string& text) : ring_(ring), s_(text) {}

  Poly run() {
    Poly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  const GradedRing& ring_;
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) {
    throw Error("polynomial parse error at offset " + std::to_string(pos_) + ": " + why);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    skip_ws();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Poly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  Poly factor() {
    Poly b = base();
    if (eat('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == start) fail("exponent expected after '^'");
      b = b.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return b;
  }

  Poly base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("operand expected");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("missing ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string num = s_.substr(start, pos_ - start);
      if (eat('/')) {
        skip_ws();
        start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("denominator expected");
        num += "/" + s_.substr(start, pos_ - start);
      }
      return ring_.constant(FieldElem::from_string(num, ring_.field()));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      int idx = ring_.var_index(name);
      if (idx < 0) fail("unknown variable '" + name + "'");
      return ring_.variable(idx);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Poly GradedRing::parse(const std::string& text) const { return PolyParser(*this, text).run(); }

std::string GradedRing::to_string(const Poly& p) const {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // leading term first
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    std::string cs = c.to_string();
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (neg) cs = cs.substr(1);
    bool is_const = std::all_of(m.begin(), m.end(), [](auto e) { return e == 0; });
    if (cs != "1" || is_const) {
      os << cs;
      if (!is_const) os << "*";
    }
    bool firstv = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!firstv) os << "*";
      firstv = false;
      os << vars_[i];
      if (m[i] > 1) os << "^" << m[i];
    }
    first = false;
  }
  return os.str();
}

std::vector<Mono> GradedRing::monomials_of_degree(long degree) const {
  std::vector<Mono> out;
  if (degree < 0) return out;
  Mono cur(nvars(), 0);
  std::function<void(int, long)> rec = [&](int i, long rem) {
    if (i == nvars()) {
      if (rem == 0) out.push_back(cur);
      return;
    }
    for (long e = 0; e * weights_[i] <= rem; ++e) {
      cur[i] = static_cast<std::int32_t>(e);
      rec(i + 1, rem - e * weights_[i]);
    }
    cur[i] = 0;
  };
  rec(0, degree);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

std::vector<GradedPieceElem> graded_piece_basis(const GradedRing& ring, std::span<const long> twists,
                                                long degree) {
  std::vector<GradedPieceElem> out;
  for (std::size_t i = 0; i < twists.size(); ++i)
    for (auto& m : ring.monomials_of_degree(degree + twists[i]))
      out.push_back({static_cast<int>(i), std::move(m)});
  return out;
}

}  // namespace mfkit
