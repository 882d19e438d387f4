#include "mfkit/homalg.hpp"

#include "mfkit/koszul.hpp"

#include <algorithm>
#include <sstream>

namespace mfkit {

FreeModule unfolded_component(const Factorization& F, long m) {
  long d = F.graded ? F.d : 0;
  if (m % 2 == 0) return F.e0.twisted((m / 2) * d);
  return F.e1.twisted(((m - 1) / 2 + 1) * d);
}

const PolyMat& unfolded_delta(const Factorization& F, long m) {
  // delta^m : F^m -> F^{m+1}; even slots map by phim1 (w-side), odd by phi0.
  return m % 2 == 0 ? F.phim1 : F.phi0;
}

namespace {

long max_term_degree(const GradedRing& ring, const Poly& p) {
  long m = 0;
  for (const auto& [mono, c] : p.terms()) m = std::max(m, ring.weighted_degree(mono));
  return m;
}

long max_entry_degree(const GradedRing& ring, const PolyMat& m) {
  long r = 0;
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) r = std::max(r, max_term_degree(ring, m(i, j)));
  return r;
}

using BasisKey = std::tuple<int, long, long, Mono>;

struct SliceBasis {
  std::vector<HomBasisElem> elems;
  std::map<BasisKey, long> index;

  long size() const { return static_cast<long>(elems.size()); }
  void add(int comp, long row, long col, Mono mono) {
    index[{comp, row, col, mono}] = size();
    elems.push_back({comp, row, col, std::move(mono)});
  }
  long find(int comp, long row, long col, const Mono& mono) const {
    auto it = index.find({comp, row, col, mono});
    return it == index.end() ? -1 : it->second;
  }
};

void check_same_setting(const Factorization& E, const Factorization& F, const char* who) {
  if (E.ring != F.ring) throw Error(std::string(who) + ": factorizations over different rings");
  if (!(E.w == F.w)) throw Error(std::string(who) + ": mismatched potential");
}

// Basis of Hom(E^{-1}, F^{n-1}) (+) Hom(E^0, F^n) at the given degree.
SliceBasis slice_basis(const Factorization& E, const Factorization& F, int n, HomDegree deg) {
  SliceBasis b;
  const GradedRing& ring = E.ring;
  FreeModule tgt_m1 = unfolded_component(F, n - 1);
  FreeModule tgt_0 = unfolded_component(F, n);

  auto add_block = [&](int comp, const FreeModule& tgt, const FreeModule& src) {
    for (long i = 0; i < tgt.rank(); ++i)
      for (long j = 0; j < src.rank(); ++j) {
        if (deg.graded) {
          long want = deg.value + tgt.twists[i] - src.twists[j];
          for (auto& mono : ring.monomials_of_degree(want)) b.add(comp, i, j, std::move(mono));
        } else {
          for (long dd = 0; dd <= deg.value; ++dd)
            for (auto& mono : ring.monomials_of_degree(dd)) b.add(comp, i, j, std::move(mono));
        }
      }
  };
  add_block(0, tgt_m1, E.e1);
  add_block(1, tgt_0, E.e0);
  return b;
}

// Accumulates coefficient-space columns while assembling a linear map.
struct CoordSink {
  const SliceBasis& target;
  bool graded;
  FieldMat mat;

  CoordSink(const SliceBasis& target, long ncols, bool graded)
      : target(target), graded(graded),
        mat(FieldMat::Constant(target.size(), ncols, FieldElem(0))) {}

  void add(long col, int comp, long row, long entry_col, const Poly& p) {
    for (const auto& [mono, c] : p.terms()) {
      long idx = target.find(comp, row, entry_col, mono);
      if (idx < 0) {
        if (graded)
          throw Error("hom_slice: coefficient escapes the graded coordinate space");
        continue;  // capped mode truncates
      }
      mat(idx, col) += c;
    }
  }
};

}  // namespace

long default_cap(const Factorization& E, const Factorization& F) {
  const GradedRing& ring = E.ring;
  long degw = max_term_degree(ring, E.w);
  long entry = std::max(std::max(max_entry_degree(ring, E.phi0), max_entry_degree(ring, E.phim1)),
                        std::max(max_entry_degree(ring, F.phi0), max_entry_degree(ring, F.phim1)));
  return degw + entry + 2;
}

HomSlice hom_slice(const Factorization& E, const Factorization& F, int n, HomDegree deg) {
  check_same_setting(E, F, "hom_slice");
  HomSlice s;
  s.n = n;
  s.deg = deg;
  SliceBasis src = slice_basis(E, F, n, deg);
  SliceBasis tgt = slice_basis(E, F, n + 1, deg);
  s.basis = src.elems;

  const PolyMat& dF_prev = unfolded_delta(F, n - 1);  // F^{n-1} -> F^n
  const PolyMat& dF_cur = unfolded_delta(F, n);       // F^n -> F^{n+1}
  FieldElem sgn(n % 2 == 0 ? 1 : -1);

  CoordSink sink(tgt, src.size(), deg.graded);
  for (long col = 0; col < src.size(); ++col) {
    const HomBasisElem& e = src.elems[col];
    Poly mono = E.ring.monomial(e.mono, FieldElem::one(E.ring.field()));
    if (e.comp == 0) {
      // gm1 singleton at (row, col): first output picks up dF_prev * gm1,
      // second output picks up -sgn * gm1 * phim1_E.
      for (long i = 0; i < dF_prev.rows(); ++i)
        sink.add(col, 0, i, e.col, Poly(dF_prev(i, e.row) * mono));
      for (long j = 0; j < E.phim1.cols(); ++j)
        sink.add(col, 1, e.row, j, Poly(mono * E.phim1(e.col, j) * Poly(-sgn)));
    } else {
      // g0 singleton: first output -sgn * g0 * phi0_E, second dF_cur * g0.
      for (long j = 0; j < E.phi0.cols(); ++j)
        sink.add(col, 0, e.row, j, Poly(mono * E.phi0(e.col, j) * Poly(-sgn)));
      for (long i = 0; i < dF_cur.rows(); ++i)
        sink.add(col, 1, i, e.col, Poly(dF_cur(i, e.row) * mono));
    }
  }
  s.differential = std::move(sink.mat);
  return s;
}

std::pair<PolyMat, PolyMat> slice_element(const Factorization& E, const Factorization& F, int n,
                                          const HomSlice& slice, const FieldVec& coords) {
  int nv = E.ring.nvars();
  PolyMat gm1 = poly_zero_matrix(unfolded_component(F, n - 1).rank(), E.e1.rank(), nv);
  PolyMat g0 = poly_zero_matrix(unfolded_component(F, n).rank(), E.e0.rank(), nv);
  for (long k = 0; k < coords.rows(); ++k) {
    if (coords(k).is_zero()) continue;
    const HomBasisElem& e = slice.basis[k];
    Poly t = E.ring.monomial(e.mono, coords(k));
    if (e.comp == 0)
      gm1(e.row, e.col) += t;
    else
      g0(e.row, e.col) += t;
  }
  return {std::move(gm1), std::move(g0)};
}

FieldVec slice_coordinates(const HomSlice& slice, const PolyMat& gm1, const PolyMat& g0) {
  SliceBasis idx;
  for (const auto& e : slice.basis) idx.add(e.comp, e.row, e.col, e.mono);
  FieldVec v = FieldVec::Constant(static_cast<long>(slice.basis.size()), FieldElem(0));
  auto scatter = [&](int comp, const PolyMat& m) {
    for (long i = 0; i < m.rows(); ++i)
      for (long j = 0; j < m.cols(); ++j)
        for (const auto& [mono, c] : m(i, j).terms()) {
          long k = idx.find(comp, i, j, mono);
          if (k < 0) throw Error("slice_coordinates: element not in this slice");
          v(k) += c;
        }
  };
  scatter(0, gm1);
  scatter(1, g0);
  return v;
}

HomClasses hom_classes(const Factorization& E, const Factorization& F, int n, HomDegree deg) {
  check_same_setting(E, F, "hom_classes");
  HomSlice cur = hom_slice(E, F, n, deg);
  HomSlice prev = hom_slice(E, F, n - 1, deg);

  std::vector<FieldVec> kernel = kernel_basis(cur.differential);
  const FieldMat& dprev = prev.differential;

  long nprev = dprev.cols();
  FieldMat m(static_cast<long>(cur.basis.size()), nprev + static_cast<long>(kernel.size()));
  m.leftCols(nprev) = dprev;
  for (std::size_t k = 0; k < kernel.size(); ++k) m.col(nprev + static_cast<long>(k)) = kernel[k];

  Echelon ech = rref(std::move(m));
  HomClasses classes;
  classes.n = n;
  classes.deg = deg;
  classes.certified = deg.graded;
  for (int p : ech.pivots) {
    if (p < nprev) continue;
    const FieldVec& rep = kernel[static_cast<std::size_t>(p - nprev)];
    classes.representatives.push_back(slice_element(E, F, n, cur, rep));
  }
  classes.dim = static_cast<long>(classes.representatives.size());
  if (n == 0) {
    for (const auto& [gm1, g0] : classes.representatives) {
      FactMorphism g;
      g.source = E;
      g.target = F;
      g.gm1 = gm1;
      g.g0 = g0;
      classes.morphisms.push_back(std::move(g));
    }
  }
  return classes;
}

std::optional<long> morphism_internal_degree(const FactMorphism& g) {
  const Factorization &E = g.source, &F = g.target;
  const GradedRing& ring = E.ring;
  std::optional<long> t;
  auto scan = [&](const PolyMat& m, const std::vector<long>& tgt, const std::vector<long>& src) -> bool {
    for (long i = 0; i < m.rows(); ++i)
      for (long j = 0; j < m.cols(); ++j) {
        if (m(i, j).is_zero()) continue;
        auto dd = ring.homogeneous_degree(m(i, j));
        if (!dd) return false;
        long ti = *dd - (tgt[i] - src[j]);
        if (t && *t != ti) return false;
        t = ti;
      }
    return true;
  };
  if (!scan(g.gm1, F.e1.twists, E.e1.twists)) return std::nullopt;
  if (!scan(g.g0, F.e0.twists, E.e0.twists)) return std::nullopt;
  return t ? t : std::optional<long>(0);
}

HomotopySearch solve_homotopy(const FactMorphism& g1, const FactMorphism& g2, HomDegree deg) {
  if (!(g1.source == g2.source) || !(g1.target == g2.target))
    throw Error("solve_homotopy: morphisms have different endpoints");
  const Factorization &E = g1.source, &F = g1.target;
  const GradedRing& ring = E.ring;

  PolyMat diff_m1 = g1.gm1 - g2.gm1;
  PolyMat diff_0 = g1.g0 - g2.g0;

  SliceBasis unknowns = slice_basis(E, F, -1, deg);

  // target coordinates: comp 0 rows the gm1 equation (F.e1 x E.e1), comp 1
  // rows the g0 equation (F.e0 x E.e0); rows are created on demand.
  std::map<BasisKey, long> row_index;
  std::vector<std::pair<BasisKey, FieldElem>> rhs_entries;
  auto row_of = [&](int comp, long i, long j, const Mono& mono) {
    BasisKey k{comp, i, j, mono};
    auto it = row_index.find(k);
    if (it != row_index.end()) return it->second;
    long idx = static_cast<long>(row_index.size());
    row_index[k] = idx;
    return idx;
  };

  // Collect all rows first (RHS, then images of unknowns), then fill.
  struct Triplet {
    long row, col;
    FieldElem v;
  };
  std::vector<Triplet> trips;

  auto scatter = [&](int comp, long i, long j, const Poly& p, long col) {
    for (const auto& [mono, c] : p.terms()) trips.push_back({row_of(comp, i, j, mono), col, c});
  };

  for (long col = 0; col < unknowns.size(); ++col) {
    const HomBasisElem& e = unknowns.elems[col];
    Poly mono = ring.monomial(e.mono, FieldElem::one(ring.field()));
    if (e.comp == 0) {
      // hm1 singleton (rows F.e0, cols E.e1):
      //   gm1 equation += phim1_F * hm1;  g0 equation += hm1 * phim1_E
      for (long i = 0; i < F.phim1.rows(); ++i)
        scatter(0, i, e.col, Poly(F.phim1(i, e.row) * mono), col);
      for (long j = 0; j < E.phim1.cols(); ++j)
        scatter(1, e.row, j, Poly(mono * E.phim1(e.col, j)), col);
    } else {
      // h0 singleton (rows F.e1, cols E.e0):
      //   gm1 equation += h0 * phi0_E;  g0 equation += phi0_F * h0
      for (long j = 0; j < E.phi0.cols(); ++j)
        scatter(0, e.row, j, Poly(mono * E.phi0(e.col, j)), col);
      for (long i = 0; i < F.phi0.rows(); ++i)
        scatter(1, i, e.col, Poly(F.phi0(i, e.row) * mono), col);
    }
  }
  for (long i = 0; i < diff_m1.rows(); ++i)
    for (long j = 0; j < diff_m1.cols(); ++j)
      for (const auto& [mono, c] : diff_m1(i, j).terms())
        rhs_entries.push_back({BasisKey{0, i, j, mono}, c});
  for (long i = 0; i < diff_0.rows(); ++i)
    for (long j = 0; j < diff_0.cols(); ++j)
      for (const auto& [mono, c] : diff_0(i, j).terms())
        rhs_entries.push_back({BasisKey{1, i, j, mono}, c});
  for (const auto& [k, c] : rhs_entries) row_of(std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k));

  long nrows = static_cast<long>(row_index.size());
  FieldMat A = FieldMat::Constant(nrows, unknowns.size(), FieldElem(0));
  for (const auto& t : trips) A(t.row, t.col) += t.v;
  FieldVec b = FieldVec::Constant(nrows, FieldElem(0));
  for (const auto& [k, c] : rhs_entries)
    b(row_index.at(k)) += c;

  LinearSolution sol = exact_solve(A, b);
  HomotopySearch out;
  out.certified = deg.graded;
  if (!sol.particular) return out;

  HomSlice shape;
  shape.basis = unknowns.elems;
  auto [hm1, h0] = slice_element(E, F, -1, shape, *sol.particular);
  Homotopy h{std::move(hm1), std::move(h0)};
  if (!homotopy_witnesses(g1, g2, h)) throw Error("solve_homotopy: internal witness verification failed");
  out.witness = std::move(h);
  out.certified = true;
  return out;
}

ContractibilityResult is_contractible(const Factorization& E) {
  HomDegree deg = E.graded ? HomDegree::internal(0) : HomDegree::capped(default_cap(E, E));
  return is_contractible(E, deg);
}

ContractibilityResult is_contractible(const Factorization& E, HomDegree deg) {
  HomotopySearch s = solve_homotopy(identity_morphism(E), zero_morphism(E, E), deg);
  ContractibilityResult r;
  r.contractible = s.witness.has_value();
  r.certified = s.certified;
  r.witness = std::move(s.witness);
  return r;
}

std::string OrthogonalityReport::to_string() const {
  if (all_zero) return "all Hom classes vanish on the window";
  std::ostringstream os;
  os << "nonzero Hom classes:";
  for (const auto& [n, t, dim] : violations)
    os << " (n=" << n << ", t=" << t << ", dim=" << dim << ")";
  return os.str();
}

OrthogonalityReport orthogonality_check(const Factorization& P, const Factorization& C, int n_lo, int n_hi,
                                        long t_lo, long t_hi) {
  if (!P.graded || !C.graded) throw Error("orthogonality_check: graded mode required");
  OrthogonalityReport rep;
  for (int n = n_lo; n <= n_hi; ++n)
    for (long t = t_lo; t <= t_hi; ++t) {
      HomClasses cls = hom_classes(P, C, n, HomDegree::internal(t));
      if (cls.dim != 0) {
        rep.all_zero = false;
        rep.violations.push_back({n, t, cls.dim});
      }
    }
  return rep;
}

std::map<long, long> ext_dims(const FreeComplex& res, const FreeModule& target, long t) {
  std::map<long, long> out;
  if (res.empty()) return out;
  const GradedRing& ring = res.ring;
  long kmin = -res.hi, kmax = -res.lo;

  // cochain bases: C^k = Hom(res_{-k}, target)_t
  std::map<long, SliceBasis> bases;
  for (long k = kmin; k <= kmax + 1; ++k) {
    SliceBasis b;
    long j = -k;
    const FreeModule& src = res.module_at(j);
    for (long i = 0; i < target.rank(); ++i)
      for (long c = 0; c < src.rank(); ++c)
        for (auto& mono : ring.monomials_of_degree(t + target.twists[i] - src.twists[c]))
          b.add(0, i, c, std::move(mono));
    bases[k] = std::move(b);
  }

  // delta^k : C^k -> C^{k+1}, f -> f o d_{-k}
  std::map<long, FieldMat> deltas;
  for (long k = kmin - 1; k <= kmax; ++k) {
    const SliceBasis empty{};
    const SliceBasis& src = bases.count(k) ? bases.at(k) : empty;
    const SliceBasis& tgt = bases.count(k + 1) ? bases.at(k + 1) : empty;
    long j = -k;  // f : res_j -> target; f o d_j : res_{j-1} -> target
    PolyMat d = res.diff_at(j);
    CoordSink sink(tgt, src.size(), true);
    for (long col = 0; col < src.size(); ++col) {
      const HomBasisElem& e = src.elems[col];
      Poly mono = ring.monomial(e.mono, FieldElem::one(ring.field()));
      for (long c = 0; c < d.cols(); ++c) sink.add(col, 0, e.row, c, Poly(mono * d(e.col, c)));
    }
    deltas[k] = std::move(sink.mat);
  }

  for (long k = kmin; k <= kmax; ++k) {
    long kerdim = static_cast<long>(kernel_basis(deltas.at(k)).size());
    long imdim = rank(deltas.at(k - 1));
    out[k] = kerdim - imdim;
  }
  return out;
}

std::map<long, long> ext_koszul(const GradedRing& ring, std::span<const int> sequence,
                                const FreeModule& target, long t) {
  return ext_dims(koszul_complex(ring, sequence), target, t);
}

std::map<long, long> E1Table::totals() const {
  std::map<long, long> out;
  for (const auto& [pq, dim] : entries) out[pq.second] += dim;
  return out;
}

E1Table e1_page(const FreeComplex& res_m1, const FreeComplex& res_0, const Factorization& F, long t,
                long r_lo, long r_hi) {
  if (!F.graded || F.d < 1) throw Error("e1_page: F must be graded with deg w >= 1");
  E1Table table;
  table.t = t;
  table.r_lo = r_lo;
  table.r_hi = r_hi;

  long k0max = res_0.empty() ? -1 : -res_0.lo;
  long km1max = res_m1.empty() ? -1 : -res_m1.lo;
  long kmax = std::max(k0max, km1max + 1);
  if (kmax < 0) return table;

  for (long p = -r_hi; p <= kmax - r_lo; ++p) {
    // p = 2s -> target Phi^{-s} F^0; p = 2s+1 -> target Phi^{-s} F^{-1}
    bool even = ((p % 2) + 2) % 2 == 0;
    long s = even ? p / 2 : (p - 1) / 2;
    FreeModule target = (even ? F.e0 : F.e1).twisted(-s * F.d);

    std::map<long, long> ext0 =
        res_0.empty() ? std::map<long, long>{} : ext_dims(res_0, target, t);
    std::map<long, long> extm1 =
        res_m1.empty() ? std::map<long, long>{} : ext_dims(res_m1, target, t);
    for (long q = r_lo; q <= r_hi; ++q) {
      long dim = 0;
      if (auto it = ext0.find(p + q); it != ext0.end()) dim += it->second;
      if (auto it = extm1.find(p + q - 1); it != extm1.end()) dim += it->second;
      if (dim != 0) table.entries[{p, q}] = dim;
    }
  }
  return table;
}

std::string DegenerationReport::to_string() const {
  std::ostringstream os;
  os << "degeneration check: lower bound " << (lower_bound_ok ? "holds" : "VIOLATED") << ", "
     << (degenerate ? "degenerates (equality)" : "strict at some degree") << "\n";
  for (const auto& [r, e1, direct] : rows)
    os << "  r=" << r << ": sum E1 = " << e1 << ", direct Hom = " << direct
       << (e1 == direct ? "  (=)" : (e1 > direct ? "  (>)" : "  (<!)")) << "\n";
  return os.str();
}

DegenerationReport ss_degeneration_check(const E1Table& table, const std::map<long, long>& direct) {
  DegenerationReport rep;
  std::map<long, long> totals = table.totals();
  for (long r = table.r_lo; r <= table.r_hi; ++r) {
    auto it = direct.find(r);
    if (it == direct.end()) throw Error("ss_degeneration_check: direct dims do not cover degree " +
                                        std::to_string(r) + " (window mismatch)");
    long e1 = totals.count(r) ? totals.at(r) : 0;
    rep.rows.push_back({r, e1, it->second});
    if (e1 < it->second) rep.lower_bound_ok = false;
    if (e1 != it->second) rep.degenerate = false;
  }
  return rep;
}

FieldMat precomposition_on_classes(const FactMorphism& f, const Factorization& F, int n, HomDegree deg) {
  const Factorization &X = f.source, &Y = f.target;
  HomClasses src = hom_classes(Y, F, n, deg);
  HomClasses tgt = hom_classes(X, F, n, deg);

  HomSlice tgt_slice = hom_slice(X, F, n, deg);
  HomSlice tgt_prev = hom_slice(X, F, n - 1, deg);
  const FieldMat& dprev = tgt_prev.differential;

  // columns: boundaries, then target representatives
  long nb = dprev.cols(), nr = tgt.dim;
  FieldMat basis_mat(static_cast<long>(tgt_slice.basis.size()), nb + nr);
  basis_mat.leftCols(nb) = dprev;
  for (long k = 0; k < nr; ++k) {
    const auto& [gm1, g0] = tgt.representatives[k];
    basis_mat.col(nb + k) = slice_coordinates(tgt_slice, gm1, g0);
  }

  FieldMat out = FieldMat::Constant(nr, src.dim, FieldElem(0));
  for (long j = 0; j < src.dim; ++j) {
    const auto& [u, v] = src.representatives[j];
    PolyMat pu = u * f.gm1;
    PolyMat pv = v * f.g0;
    FieldVec vec = slice_coordinates(tgt_slice, pu, pv);
    LinearSolution sol = exact_solve(basis_mat, vec);
    if (!sol.particular) throw Error("precomposition_on_classes: image is not a cycle");
    for (long k = 0; k < nr; ++k) out(k, j) = (*sol.particular)(nb + k);
  }
  return out;
}

}  // namespace mfkit
