#ifndef MFKIT_FACT_HPP
#define MFKIT_FACT_HPP

#include "mfkit/linalg.hpp"
#include "mfkit/ring.hpp"

#include <string>
#include <vector>

namespace mfkit {

// (+) R(twists[i]).  R(a) has its degree-m piece spanned by the monomials of
// weighted degree m + a; the i-th generator sits in degree -twists[i].
struct FreeModule {
  std::vector<long> twists;

  long rank() const { return static_cast<long>(twists.size()); }
  FreeModule twisted(long shift) const;

  bool operator==(const FreeModule& o) const { return twists == o.twists; }
  bool operator!=(const FreeModule& o) const { return !(*this == o); }
};

FreeModule concat(const FreeModule& a, const FreeModule& b);

// A factorization of w: maps
//   phi0  : E^{-1} -> E^0           (matrix rows ~ e0, cols ~ e1)
//   phim1 : Phi^{-1}(E^0) -> E^{-1} (matrix rows ~ e1, cols ~ e0)
// with phi0*phim1 = w*Id and phim1*phi0 = w*Id.  In graded mode Phi twists by
// d = deg w, matrices act entrywise unchanged, and every entry is homogeneous
// of the degree forced by the source/target twists.
struct Factorization {
  GradedRing ring;
  Poly w;
  FreeModule e1;  // E^{-1}
  FreeModule e0;  // E^0
  PolyMat phi0;
  PolyMat phim1;
  bool graded = false;
  long d = 0;  // deg w in graded mode

  bool operator==(const Factorization& o) const;
  bool operator!=(const Factorization& o) const { return !(*this == o); }
};

// Builds and shape-checks; graded mode (and d) is inferred from w unless
// forced off.  Does not verify the w*Id identities; validate_factorization
// does.
Factorization make_factorization(GradedRing ring, Poly w, FreeModule e1, FreeModule e0, PolyMat phi0,
                                 PolyMat phim1, bool allow_graded = true);

Factorization zero_factorization(const GradedRing& ring, const Poly& w);

struct FactMorphism {
  Factorization source;
  Factorization target;
  PolyMat gm1;  // E^{-1} -> F^{-1}
  PolyMat g0;   // E^0 -> F^0

  bool operator==(const FactMorphism& o) const;
};

struct Homotopy {
  PolyMat hm1;  // E^{-1} -> Phi^{-1}(F^0): rows ~ F.e0, cols ~ E.e1
  PolyMat h0;   // E^0 -> F^{-1}:           rows ~ F.e1, cols ~ E.e0
};

struct ValidityReport {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(std::string what) {
    ok = false;
    failures.push_back(std::move(what));
  }
  std::string to_string() const;
};

ValidityReport validate_factorization(const Factorization& E);
ValidityReport validate_morphism(const FactMorphism& g);
bool is_morphism(const FactMorphism& g);

// True when h witnesses g1 ~ g2:
//   g1^{-1}-g2^{-1} = h0*phi0_E + phim1_F*hm1
//   g1^0  -g2^0     = phi0_F*h0 + hm1*phim1_E
bool homotopy_witnesses(const FactMorphism& g1, const FactMorphism& g2, const Homotopy& h);

// --- shift / twist -------------------------------------------------------

// E[1] = (E^0, Phi(E^{-1}), -phi0_E, -Phi(phim1_E)); [n] iterates, negative n
// inverts.
Factorization shift(const Factorization& E, long n);
FactMorphism shift(const FactMorphism& g, long n);

// Phi^m on objects: all twists move by m*d, matrices unchanged.
Factorization twist(const Factorization& E, long m);

// --- additive and triangulated structure ---------------------------------

Factorization direct_sum(const Factorization& E, const Factorization& F);
FactMorphism direct_sum(const FactMorphism& g, const FactMorphism& h);

FactMorphism identity_morphism(const Factorization& E);
FactMorphism zero_morphism(const Factorization& E, const Factorization& F);
FactMorphism compose(const FactMorphism& g, const FactMorphism& f);  // g after f
FactMorphism add(const FactMorphism& g, const FactMorphism& h);
FactMorphism negate(const FactMorphism& g);

// C(g) = (E^0 (+) F^{-1}, Phi(E^{-1}) (+) F^0) with
//   phim1 = [[-phi0_E, 0], [gm1, phim1_F]],
//   phi0  = [[-phim1_E, 0], [g0, phi0_F]].
Factorization cone(const FactMorphism& g);
FactMorphism cone_inclusion(const FactMorphism& g);  // F -> C(g)
FactMorphism cone_projection(const FactMorphism& g);  // C(g) -> E[1]

// G^-(E): the contractible factorization with blocks [[0, 1], [w, 0]] on
// E^{-1} (+) E^0 / E^0 (+) Phi(E^{-1}), plus the canonical monomorphism
// E -> G^-(E) with components [I; phi0] and [I; phim1].
struct Envelope {
  Factorization envelope;
  FactMorphism embedding;
};
Envelope contractible_envelope(const Factorization& E);

// Base change along the ring map sending variable i to images[i]; requires
// theta(w) = target_w (and degree-preserving images in graded mode).
Factorization base_change(const Factorization& E, const GradedRing& target, std::span<const Poly> images,
                          const Poly& target_w);
FactMorphism base_change(const FactMorphism& g, const GradedRing& target, std::span<const Poly> images,
                         const Poly& target_w);

// Required entry degree for a degree-0 map between twisted free modules with
// an extra Phi^{phi_power} on the source.
long required_entry_degree(long target_twist, long source_twist, long phi_shift_on_source);

// Homogeneity check of a matrix block against twist lists; appends failures.
void check_matrix_degrees(const GradedRing& ring, const PolyMat& m, std::span<const long> target_twists,
                          std::span<const long> source_twists, long source_phi_times_d,
                          const std::string& label, ValidityReport& rep);

}  // namespace mfkit

#endif  // MFKIT_FACT_HPP
