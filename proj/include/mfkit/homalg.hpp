#ifndef MFKIT_HOMALG_HPP
#define MFKIT_HOMALG_HPP

#include "mfkit/chain.hpp"
#include "mfkit/fact.hpp"

#include <map>
#include <optional>
#include <tuple>

namespace mfkit {

// Degree parameter for Hom computations: an exact internal degree in graded
// mode, or a cap on entry degrees in ungraded mode.  Capped answers are
// approximate; only graded answers certify absence.
struct HomDegree {
  bool graded = true;
  long value = 0;  // internal degree t, or the cap

  static HomDegree internal(long t) { return {true, t}; }
  static HomDegree capped(long cap) { return {false, cap}; }
};

// Unfolded 2-periodic components F^m and differentials delta^m : F^m -> F^{m+1}
// (as matrices delta is phim1 for even m, phi0 for odd m; twists move by d
// every two steps).
FreeModule unfolded_component(const Factorization& F, long m);
const PolyMat& unfolded_delta(const Factorization& F, long m);

// Default cap for ungraded solving: deg w + max entry degree + 2.
long default_cap(const Factorization& E, const Factorization& F);

struct HomBasisElem {
  int comp;  // 0: the Hom(E^{-1}, F^{n-1}) summand, 1: the Hom(E^0, F^n) summand
  long row, col;
  Mono mono;
};

// The (n, degree) slice of the dg Hom complex: an exact coordinate space with
// the differential into the (n+1, degree) slice.
struct HomSlice {
  int n = 0;
  HomDegree deg;
  std::vector<HomBasisElem> basis;
  FieldMat differential;  // |basis(n+1)| x |basis(n)|
};

HomSlice hom_slice(const Factorization& E, const Factorization& F, int n, HomDegree deg);

// Coordinates <-> matrix pairs for slice elements.
std::pair<PolyMat, PolyMat> slice_element(const Factorization& E, const Factorization& F, int n,
                                          const HomSlice& slice, const FieldVec& coords);
// Exact coordinates of a pair known to live in the slice; throws if an entry
// falls outside the coordinate space.
FieldVec slice_coordinates(const HomSlice& slice, const PolyMat& gm1, const PolyMat& g0);

struct HomClasses {
  int n = 0;
  HomDegree deg;
  long dim = 0;
  bool certified = true;
  std::vector<std::pair<PolyMat, PolyMat>> representatives;
  std::vector<FactMorphism> morphisms;  // populated for n == 0
};

HomClasses hom_classes(const Factorization& E, const Factorization& F, int n, HomDegree deg);

// Internal degree of a homogeneous morphism (0 for the zero morphism),
// nullopt when the entries do not agree on one.
std::optional<long> morphism_internal_degree(const FactMorphism& g);

struct HomotopySearch {
  std::optional<Homotopy> witness;
  bool certified = true;  // found witnesses are always exact; absence is certified only in graded mode
};

HomotopySearch solve_homotopy(const FactMorphism& g1, const FactMorphism& g2, HomDegree deg);

struct ContractibilityResult {
  bool contractible = false;
  bool certified = true;
  std::optional<Homotopy> witness;
};

// id_E ~ 0?  Graded mode solves exactly at internal degree 0; ungraded mode
// uses the default cap (a found witness is still an exact certificate).
ContractibilityResult is_contractible(const Factorization& E);
ContractibilityResult is_contractible(const Factorization& E, HomDegree deg);

struct OrthogonalityReport {
  bool all_zero = true;
  std::vector<std::tuple<int, long, long>> violations;  // (n, t, dim)
  std::string to_string() const;
};

// dims of hom_classes(P, C, n, t) over the window n in [n_lo, n_hi],
// t in [t_lo, t_hi]; reports every nonzero dimension.
OrthogonalityReport orthogonality_check(const Factorization& P, const Factorization& C, int n_lo, int n_hi,
                                        long t_lo, long t_hi);

// Ext^k of the module resolved by `res` (a free resolution living at chain
// indices <= 0) into the twisted free module `target`, per cohomological
// degree k, at internal degree t.
std::map<long, long> ext_dims(const FreeComplex& res, const FreeModule& target, long t);
std::map<long, long> ext_koszul(const GradedRing& ring, std::span<const int> sequence,
                                const FreeModule& target, long t);

// E1-page of the Hom spectral sequence at internal degree t, over the window
// of total degrees [r_lo, r_hi].  Cell (p, q) holds
//   Ext^{p+q}(E^0, X_p) (+) Ext^{p+q-1}(E^{-1}, X_p),
// where X_p = Phi^{-s}(F^0) for p = 2s and Phi^{-s}(F^{-1}) for p = 2s+1;
// the total degree of a cell is q, so column sums at fixed q compare against
// Hom(E, F[q]).
struct E1Table {
  long t = 0;
  long r_lo = 0, r_hi = 0;
  std::map<std::pair<long, long>, long> entries;  // nonzero cells only

  std::map<long, long> totals() const;  // per total degree q
};

E1Table e1_page(const FreeComplex& res_m1, const FreeComplex& res_0, const Factorization& F, long t,
                long r_lo, long r_hi);

struct DegenerationReport {
  bool lower_bound_ok = true;  // sum of E1 dims >= direct dim at every degree
  bool degenerate = true;      // equality at every degree
  std::vector<std::tuple<long, long, long>> rows;  // (r, e1 total, direct dim)
  std::string to_string() const;
};

// direct: total degree r -> dim Hom(E, F[r]) at the table's internal degree.
DegenerationReport ss_degeneration_check(const E1Table& table, const std::map<long, long>& direct);

// Matrix of the induced map on homotopy classes given by precomposition with
// f : X -> Y, i.e. Hom^n(Y, F)_t -> Hom^n(X, F)_t.  Columns index the classes
// of the source space, rows those of the target space.
FieldMat precomposition_on_classes(const FactMorphism& f, const Factorization& F, int n, HomDegree deg);

}  // namespace mfkit

#endif  // MFKIT_HOMALG_HPP
