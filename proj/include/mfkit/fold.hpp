#ifndef MFKIT_FOLD_HPP
#define MFKIT_FOLD_HPP

#include "mfkit/chain.hpp"
#include "mfkit/koszul.hpp"

#include <map>
#include <utility>

namespace mfkit {

// Block family phi_{p,q} of a folding of the complex pair (cm1, c0).
//   m1[(p,q)] : Phi^{-1}(tot^0 part p) -> tot^{-1} part q   (phi^{-1} blocks)
//   z0[(p,q)] : tot^{-1} part p -> tot^0 part q             (phi^0 blocks)
// Missing keys mean zero blocks; blocks must vanish for q > p+1 and the
// superdiagonal must be the (+-)Phi-twisted differentials of the pair.
struct FoldBlocks {
  std::map<std::pair<long, long>, PolyMat> m1;
  std::map<std::pair<long, long>, PolyMat> z0;
};

// Interleaved layout of tot(+)(cm1, c0): components concatenate the per-index
// parts in descending chain index, so that the Koszul stabilization comes out
// in ascending exterior degree.
//   tot^{-1} part p: p even -> Phi^{-p/2} cm1_p;  p odd -> Phi^{-(p+1)/2} c0_p
//   tot^0  part p: p even -> Phi^{-p/2} c0_p;   p odd -> Phi^{-(p-1)/2} cm1_p
struct FoldLayout {
  long lo = 0, hi = -1;
  bool graded = false;
  long d = 0;
  std::vector<long> e1_offsets, e1_ranks;  // per part, descending p: index 0 <-> p = hi
  std::vector<long> e0_offsets, e0_ranks;
  FreeModule e1, e0;

  long part_slot(long p) const { return hi - p; }
  bool in_range(long p) const { return p >= lo && p <= hi; }
};

FoldLayout fold_layout(const FreeComplex& cm1, const FreeComplex& c0, const Poly& w);

// A folding: the complex pair, the verified blocks, and the assembled
// factorization.
struct Folding {
  FreeComplex cm1, c0;
  FoldBlocks blocks;
  Poly w;
  FoldLayout layout;
  Factorization fact;
};

// Vanishing + superdiagonal constraints + the block sum identities
//   sum_t phi0_{t,q} phi^{-1}_{p,t} = delta_{pq} w,
//   sum_t Phi(phi^{-1}_{t,q}) phi0_{p,t} = delta_{pq} w,
// reported per (p,q).
ValidityReport verify_fold_blocks(const FreeComplex& cm1, const FreeComplex& c0, const FoldBlocks& blocks,
                                  const Poly& w);

// Verify and assemble; throws with the offending (p,q) list on violation.
Folding make_folding(FreeComplex cm1, FreeComplex c0, FoldBlocks blocks, Poly w);
Factorization fold(const FreeComplex& cm1, const FreeComplex& c0, const FoldBlocks& blocks, const Poly& w);

// Fold blocks of the shift: A[1] folds (cm1[1], c0[1]) with
// m1'[p][q] = -z0[p+1][q+1] and z0'[p][q] = -m1[p+1][q+1].
Folding shift_folding(const Folding& f);

// Eisenbud stabilization of R/(sequence) for w = sum splitting_i x_i:
// the fold of (0, Koszul) whose phi blocks are the positive d and h of the
// contraction homotopy, i.e. the classical (d+h, d+h) factorization on
// odd/even exterior powers.
struct Stabilization {
  KoszulData koszul;
  Folding folding;
};
Stabilization stabilization(const GradedRing& ring, std::span<const int> sequence, const Poly& w,
                            std::span<const Poly> splitting);
Factorization stabilize(const GradedRing& ring, std::span<const int> sequence, const Poly& w,
                        std::span<const Poly> splitting);

// --- totalization ---------------------------------------------------------

// Bounded complex of factorizations: maps[i] : objects[i] -> objects[i+1],
// consecutive composites zero; object i sits at chain index lo + i.
struct FactChain {
  long lo = 0;
  std::vector<Factorization> objects;
  std::vector<FactMorphism> maps;
};

ValidityReport validate_chain(const FactChain& chain);

// tot(E_.) = (+) E_l[-l] with the connecting maps folded in; a single object
// at index 0 is returned unchanged.
Factorization totalize(const FactChain& chain);

// --- cones of folded factorizations ---------------------------------------

// Requires eta_{p,q} = 0 for q > p and the diagonal blocks to assemble into
// chain maps between the underlying complexes; returns the fact_core cone
// together with the induced folding over the mapping cones.
struct FoldCone {
  Factorization cone_fact;  // cone(eta) as computed by fact_core
  Folding folding;          // the same object presented as a folding
};
FoldCone fold_cone(const FactMorphism& eta, const Folding& A, const Folding& B);

// The interleaved fold layout of the cone folding differs from cone(eta)'s
// [A | B] concatenation by a permutation of generators; this checks that the
// two presentations carry identical matrices and twists under it.
bool folding_matches_cone(const FoldCone& fc, const Folding& A, const Folding& B);

}  // namespace mfkit

#endif  // MFKIT_FOLD_HPP
