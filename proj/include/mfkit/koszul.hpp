#ifndef MFKIT_KOSZUL_HPP
#define MFKIT_KOSZUL_HPP

#include "mfkit/chain.hpp"

#include <map>

namespace mfkit {

// Koszul complex on a sublist of distinct ring variables, Lambda^k placed at
// chain index -k.  Basis of Lambda^k: subsets S of the sequence in
// lexicographic order; slot e_S carries twist -sum of the weights in S.
// Differential: contraction by (x_1,..,x_n) with the sign (-1)^{position of
// the removed index within S}.
FreeComplex koszul_complex(const GradedRing& ring, std::span<const int> sequence);

struct KoszulData {
  std::vector<int> sequence;   // variable indices
  std::vector<Poly> splitting; // w_i with w = sum w_i x_i
  Poly w;
  FreeComplex complex;
  // homotopies[j] : A_j -> A_{j-1} (wedge with sum w_i e_i)
  std::map<long, PolyMat> homotopies;
};

// Contraction homotopy for the splitting; verifies dh + hd = w*Id and
// h h = 0 exactly before returning.
KoszulData koszul_homotopy(const FreeComplex& koszul, const GradedRing& ring,
                           std::span<const int> sequence, std::span<const Poly> splitting);

// Greedy grlex division of w by the sequence variables: each monomial goes to
// the first variable dividing it; errors when some monomial has no divisor.
std::vector<Poly> split_w(const GradedRing& ring, const Poly& w, std::span<const int> sequence);

// Subset enumeration used for the exterior basis (size k, lex order).
std::vector<std::vector<int>> subsets_of_size(int n, int k);

}  // namespace mfkit

#endif  // MFKIT_KOSZUL_HPP
