#ifndef MFKIT_CHAIN_HPP
#define MFKIT_CHAIN_HPP

#include "mfkit/fact.hpp"

#include <map>

namespace mfkit {

// Bounded complex of twisted free modules with ascending differentials
// d_i : A_{i-1} -> A_i for lo < i <= hi.
struct FreeComplex {
  GradedRing ring;
  long lo = 0;
  long hi = -1;  // hi < lo encodes the zero complex
  std::vector<FreeModule> modules;  // modules[i - lo]
  std::vector<PolyMat> diffs;       // diffs[i - lo - 1] = d_i

  bool empty() const { return hi < lo; }
  long length() const { return empty() ? 0 : hi - lo + 1; }
  const FreeModule& module_at(long i) const;
  // d_i, a zero-shaped matrix outside (lo, hi].
  PolyMat diff_at(long i) const;
  long rank_at(long i) const { return i < lo || i > hi ? 0 : modules[i - lo].rank(); }
};

FreeComplex zero_complex(const GradedRing& ring);
FreeComplex make_complex(GradedRing ring, long lo, std::vector<FreeModule> modules,
                         std::vector<PolyMat> diffs);

// d._{i+1} d_i = 0 plus homogeneity when twists demand it.
ValidityReport validate_complex(const FreeComplex& c, bool graded);

// X[1]_i = X_{i+1} with negated differentials.
FreeComplex shift_complex(const FreeComplex& c, long n);

// Chain map f between complexes: components f_i : A_i -> B_i.
struct ChainMap {
  std::map<long, PolyMat> components;
};
bool is_chain_map(const FreeComplex& a, const FreeComplex& b, const ChainMap& f);

// Cone(f)_i = A_{i+1} (+) B_i with differential [[-d_A, 0], [f, d_B]].
FreeComplex chain_cone(const FreeComplex& a, const FreeComplex& b, const ChainMap& f);

}  // namespace mfkit

#endif  // MFKIT_CHAIN_HPP
