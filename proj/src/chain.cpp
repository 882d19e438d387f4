#include "mfkit/chain.hpp"

namespace mfkit {

namespace {
const FreeModule kZeroModule{};
}

const FreeModule& FreeComplex::module_at(long i) const {
  if (i < lo || i > hi) return kZeroModule;
  return modules[i - lo];
}

PolyMat FreeComplex::diff_at(long i) const {
  if (i > lo && i <= hi) return diffs[i - lo - 1];
  return poly_zero_matrix(rank_at(i), rank_at(i - 1), ring.nvars());
}

FreeComplex zero_complex(const GradedRing& ring) {
  FreeComplex c;
  c.ring = ring;
  c.lo = 0;
  c.hi = -1;
  return c;
}

FreeComplex make_complex(GradedRing ring, long lo, std::vector<FreeModule> modules,
                         std::vector<PolyMat> diffs) {
  FreeComplex c;
  c.ring = std::move(ring);
  c.lo = lo;
  c.hi = lo + static_cast<long>(modules.size()) - 1;
  c.modules = std::move(modules);
  c.diffs = std::move(diffs);
  if (c.empty() ? !c.diffs.empty() : c.diffs.size() + 1 != c.modules.size())
    throw Error("make_complex: need one differential per adjacent pair");
  for (long i = c.lo + 1; i <= c.hi; ++i) {
    const PolyMat& d = c.diffs[i - c.lo - 1];
    if (d.rows() != c.rank_at(i) || d.cols() != c.rank_at(i - 1))
      throw Error("make_complex: d_" + std::to_string(i) + " has wrong shape");
  }
  return c;
}

ValidityReport validate_complex(const FreeComplex& c, bool graded) {
  ValidityReport rep;
  for (long i = c.lo + 2; i <= c.hi; ++i) {
    PolyMat dd = c.diff_at(i) * c.diff_at(i - 1);
    if (!is_zero(dd)) rep.fail("d_" + std::to_string(i) + " d_" + std::to_string(i - 1) + " != 0");
  }
  if (graded) {
    for (long i = c.lo + 1; i <= c.hi; ++i)
      check_matrix_degrees(c.ring, c.diff_at(i), c.module_at(i).twists, c.module_at(i - 1).twists, 0,
                           "d_" + std::to_string(i), rep);
  }
  return rep;
}

FreeComplex shift_complex(const FreeComplex& c, long n) {
  FreeComplex r = c;
  r.lo = c.lo - n;
  r.hi = c.hi - n;
  if (n % 2 != 0)
    for (auto& d : r.diffs) d = -d;
  return r;
}

bool is_chain_map(const FreeComplex& a, const FreeComplex& b, const ChainMap& f) {
  auto comp = [&](long i) -> PolyMat {
    auto it = f.components.find(i);
    if (it != f.components.end()) return it->second;
    return poly_zero_matrix(b.rank_at(i), a.rank_at(i), a.ring.nvars());
  };
  long lo = std::min(a.lo, b.lo), hi = std::max(a.hi, b.hi);
  for (long i = lo; i <= hi; ++i) {
    if (comp(i).rows() != b.rank_at(i) || comp(i).cols() != a.rank_at(i)) return false;
    PolyMat lhs = comp(i) * a.diff_at(i);
    PolyMat rhs = b.diff_at(i) * comp(i - 1);
    if (!is_zero(PolyMat(lhs - rhs))) return false;
  }
  return true;
}

FreeComplex chain_cone(const FreeComplex& a, const FreeComplex& b, const ChainMap& f) {
  if (!is_chain_map(a, b, f)) throw Error("chain_cone: not a chain map");
  int n = a.ring.nvars();
  long lo = std::min(a.lo - 1, b.lo), hi = std::max(a.hi - 1, b.hi);
  std::vector<FreeModule> modules;
  std::vector<PolyMat> diffs;
  auto comp = [&](long i) -> PolyMat {
    auto it = f.components.find(i);
    if (it != f.components.end()) return it->second;
    return poly_zero_matrix(b.rank_at(i), a.rank_at(i), n);
  };
  for (long i = lo; i <= hi; ++i) modules.push_back(concat(a.module_at(i + 1), b.module_at(i)));
  for (long i = lo + 1; i <= hi; ++i) {
    PolyMat d = block2x2(-a.diff_at(i + 1), poly_zero_matrix(a.rank_at(i + 1), b.rank_at(i - 1), n),
                         comp(i), b.diff_at(i));
    diffs.push_back(std::move(d));
  }
  return make_complex(a.ring, lo, std::move(modules), std::move(diffs));
}

}  // namespace mfkit
