#include "mfkit/fold.hpp"

#include <sstream>

namespace mfkit {

namespace {

long half_floor_even(long p) { return p / 2; }  // p even, exact

// Phi exponent carried by tot part p (times -1): tot^{-1} even part gets
// Phi^{-p/2}, odd part Phi^{-(p+1)/2}; tot^0 even Phi^{-p/2}, odd
// Phi^{-(p-1)/2}.  All divisions are exact.
long e1_phi(long p) { return p % 2 == 0 ? half_floor_even(p) : (p + 1) / 2; }
long e0_phi(long p) { return p % 2 == 0 ? half_floor_even(p) : (p - 1) / 2; }

const FreeModule& e1_raw(const FreeComplex& cm1, const FreeComplex& c0, long p) {
  return p % 2 == 0 ? cm1.module_at(p) : c0.module_at(p);
}
const FreeModule& e0_raw(const FreeComplex& cm1, const FreeComplex& c0, long p) {
  return p % 2 == 0 ? c0.module_at(p) : cm1.module_at(p);
}

PolyMat fetch(const std::map<std::pair<long, long>, PolyMat>& blocks, long p, long q, long rows, long cols,
              int nvars) {
  auto it = blocks.find({p, q});
  if (it == blocks.end()) return poly_zero_matrix(rows, cols, nvars);
  return it->second;
}

bool plus_or_minus(const PolyMat& got, const PolyMat& want) {
  return got == want || is_zero(PolyMat(got + want));
}

}  // namespace

FoldLayout fold_layout(const FreeComplex& cm1, const FreeComplex& c0, const Poly& w) {
  if (!cm1.empty() && !c0.empty() && cm1.ring != c0.ring) throw Error("fold: complexes over different rings");
  const GradedRing& ring = cm1.empty() ? c0.ring : cm1.ring;
  FoldLayout lay;
  if (w.is_zero()) {
    lay.graded = true;
    lay.d = 0;
  } else if (auto deg = ring.homogeneous_degree(w.bound(ring.nvars()))) {
    lay.graded = true;
    lay.d = *deg;
  }
  if (cm1.empty() && c0.empty()) return lay;
  lay.lo = cm1.empty() ? c0.lo : (c0.empty() ? cm1.lo : std::min(cm1.lo, c0.lo));
  lay.hi = cm1.empty() ? c0.hi : (c0.empty() ? cm1.hi : std::max(cm1.hi, c0.hi));

  for (long p = lay.hi; p >= lay.lo; --p) {
    FreeModule m1 = e1_raw(cm1, c0, p);
    FreeModule m0 = e0_raw(cm1, c0, p);
    if (lay.graded) {
      m1 = m1.twisted(-e1_phi(p) * lay.d);
      m0 = m0.twisted(-e0_phi(p) * lay.d);
    } else {
      m1.twists.assign(m1.twists.size(), 0);
      m0.twists.assign(m0.twists.size(), 0);
    }
    lay.e1_offsets.push_back(lay.e1.rank());
    lay.e1_ranks.push_back(m1.rank());
    lay.e0_offsets.push_back(lay.e0.rank());
    lay.e0_ranks.push_back(m0.rank());
    lay.e1 = concat(lay.e1, m1);
    lay.e0 = concat(lay.e0, m0);
  }
  return lay;
}

ValidityReport verify_fold_blocks(const FreeComplex& cm1, const FreeComplex& c0, const FoldBlocks& blocks,
                                  const Poly& w) {
  ValidityReport rep;
  const GradedRing& ring = cm1.empty() ? c0.ring : cm1.ring;
  int nv = ring.nvars();
  Poly wb = w.bound(nv);
  FoldLayout lay = fold_layout(cm1, c0, wb);
  if (lay.hi < lay.lo) return rep;

  auto r1 = [&](long p) { return e1_raw(cm1, c0, p).rank(); };
  auto r0 = [&](long p) { return e0_raw(cm1, c0, p).rank(); };

  // shapes and vanishing for q > p+1
  for (const auto& [key, blk] : blocks.m1) {
    auto [p, q] = key;
    if (!lay.in_range(p) || !lay.in_range(q)) {
      if (!is_zero(blk)) rep.fail("phi^-1 block (" + std::to_string(p) + "," + std::to_string(q) + ") out of range");
      continue;
    }
    if (blk.rows() != r1(q) || blk.cols() != r0(p))
      rep.fail("phi^-1 block (" + std::to_string(p) + "," + std::to_string(q) + ") has wrong shape");
    else if (q > p + 1 && !is_zero(blk))
      rep.fail("phi^-1 block (" + std::to_string(p) + "," + std::to_string(q) + ") must vanish (q > p+1)");
  }
  for (const auto& [key, blk] : blocks.z0) {
    auto [p, q] = key;
    if (!lay.in_range(p) || !lay.in_range(q)) {
      if (!is_zero(blk)) rep.fail("phi^0 block (" + std::to_string(p) + "," + std::to_string(q) + ") out of range");
      continue;
    }
    if (blk.rows() != r0(q) || blk.cols() != r1(p))
      rep.fail("phi^0 block (" + std::to_string(p) + "," + std::to_string(q) + ") has wrong shape");
    else if (q > p + 1 && !is_zero(blk))
      rep.fail("phi^0 block (" + std::to_string(p) + "," + std::to_string(q) + ") must vanish (q > p+1)");
  }
  if (!rep.ok) return rep;

  // superdiagonal blocks are the (+-)twisted differentials of the pair
  for (long p = lay.lo; p < lay.hi; ++p) {
    PolyMat m1blk = fetch(blocks.m1, p, p + 1, r1(p + 1), r0(p), nv);
    PolyMat want_m1 = p % 2 == 0 ? c0.diff_at(p + 1) : cm1.diff_at(p + 1);
    if (!plus_or_minus(m1blk, want_m1))
      rep.fail("phi^-1 superdiagonal block (" + std::to_string(p) + "," + std::to_string(p + 1) +
               ") is not the (+-)twisted differential");
    PolyMat z0blk = fetch(blocks.z0, p, p + 1, r0(p + 1), r1(p), nv);
    PolyMat want_z0 = p % 2 == 0 ? cm1.diff_at(p + 1) : c0.diff_at(p + 1);
    if (!plus_or_minus(z0blk, want_z0))
      rep.fail("phi^0 superdiagonal block (" + std::to_string(p) + "," + std::to_string(p + 1) +
               ") is not the (+-)twisted differential");
  }

  // block sum identities with delta_{pq} w right-hand sides
  for (long p = lay.lo; p <= lay.hi; ++p)
    for (long q = lay.lo; q <= lay.hi; ++q) {
      PolyMat sum1 = poly_zero_matrix(r0(q), r0(p), nv);
      PolyMat sum2 = poly_zero_matrix(r1(q), r1(p), nv);
      for (long t = lay.lo; t <= lay.hi; ++t) {
        sum1 += fetch(blocks.z0, t, q, r0(q), r1(t), nv) * fetch(blocks.m1, p, t, r1(t), r0(p), nv);
        sum2 += fetch(blocks.m1, t, q, r1(q), r0(t), nv) * fetch(blocks.z0, p, t, r0(t), r1(p), nv);
      }
      PolyMat want1 = p == q ? scalar_matrix(wb, r0(p)) : poly_zero_matrix(r0(q), r0(p), nv);
      PolyMat want2 = p == q ? scalar_matrix(wb, r1(p)) : poly_zero_matrix(r1(q), r1(p), nv);
      if (!(sum1 == want1))
        rep.fail("sum_t phi^0_{t," + std::to_string(q) + "} phi^-1_{" + std::to_string(p) +
                 ",t} != " + std::string(p == q ? "w*Id" : "0") + " at (p,q)=(" + std::to_string(p) + "," +
                 std::to_string(q) + ")");
      if (!(sum2 == want2))
        rep.fail("sum_t Phi(phi^-1_{t," + std::to_string(q) + "}) phi^0_{" + std::to_string(p) +
                 ",t} != " + std::string(p == q ? "w*Id" : "0") + " at (p,q)=(" + std::to_string(p) + "," +
                 std::to_string(q) + ")");
    }
  return rep;
}

Folding make_folding(FreeComplex cm1, FreeComplex c0, FoldBlocks blocks, Poly w) {
  const GradedRing ring = cm1.empty() ? c0.ring : cm1.ring;
  int nv = ring.nvars();
  Poly wb = w.bound(nv);
  ValidityReport rep = verify_fold_blocks(cm1, c0, blocks, wb);
  if (!rep.ok) throw Error("fold: block identities violated\n" + rep.to_string());

  FoldLayout lay = fold_layout(cm1, c0, wb);
  PolyMat phim1 = poly_zero_matrix(lay.e1.rank(), lay.e0.rank(), nv);
  PolyMat phi0 = poly_zero_matrix(lay.e0.rank(), lay.e1.rank(), nv);
  for (const auto& [key, blk] : blocks.m1) {
    auto [p, q] = key;
    if (!lay.in_range(p) || !lay.in_range(q) || blk.size() == 0) continue;
    phim1.block(lay.e1_offsets[lay.part_slot(q)], lay.e0_offsets[lay.part_slot(p)], blk.rows(), blk.cols()) =
        blk;
  }
  for (const auto& [key, blk] : blocks.z0) {
    auto [p, q] = key;
    if (!lay.in_range(p) || !lay.in_range(q) || blk.size() == 0) continue;
    phi0.block(lay.e0_offsets[lay.part_slot(q)], lay.e1_offsets[lay.part_slot(p)], blk.rows(), blk.cols()) =
        blk;
  }

  Folding f;
  f.cm1 = std::move(cm1);
  f.c0 = std::move(c0);
  f.blocks = std::move(blocks);
  f.w = wb;
  f.layout = lay;
  f.fact = make_factorization(ring, wb, lay.e1, lay.e0, std::move(phi0), std::move(phim1), lay.graded);
  ValidityReport check = validate_factorization(f.fact);
  if (!check.ok) throw Error("fold: assembled factorization invalid\n" + check.to_string());
  return f;
}

Factorization fold(const FreeComplex& cm1, const FreeComplex& c0, const FoldBlocks& blocks, const Poly& w) {
  return make_folding(cm1, c0, blocks, w).fact;
}

Folding shift_folding(const Folding& f) {
  FoldBlocks shifted;
  for (const auto& [key, blk] : f.blocks.z0) shifted.m1[{key.first - 1, key.second - 1}] = -blk;
  for (const auto& [key, blk] : f.blocks.m1) shifted.z0[{key.first - 1, key.second - 1}] = -blk;
  return make_folding(shift_complex(f.cm1, 1), shift_complex(f.c0, 1), std::move(shifted), f.w);
}

Stabilization stabilization(const GradedRing& ring, std::span<const int> sequence, const Poly& w,
                            std::span<const Poly> splitting) {
  FreeComplex K = koszul_complex(ring, sequence);
  KoszulData kd = koszul_homotopy(K, ring, sequence, splitting);
  if (!(kd.w == w.bound(ring.nvars())))
    throw Error("stabilize: splitting sums to " + ring.to_string(kd.w) + ", not w = " + ring.to_string(w));

  FoldBlocks blocks;
  for (long p = K.lo; p <= K.hi; ++p) {
    if (p + 1 <= K.hi) {
      if (p % 2 == 0)
        blocks.m1[{p, p + 1}] = K.diff_at(p + 1);
      else
        blocks.z0[{p, p + 1}] = K.diff_at(p + 1);
    }
    if (p - 1 >= K.lo) {
      if (p % 2 == 0)
        blocks.m1[{p, p - 1}] = kd.homotopies.at(p);
      else
        blocks.z0[{p, p - 1}] = kd.homotopies.at(p);
    }
  }

  Stabilization st;
  st.koszul = std::move(kd);
  st.folding = make_folding(zero_complex(ring), K, std::move(blocks), w);
  return st;
}

Factorization stabilize(const GradedRing& ring, std::span<const int> sequence, const Poly& w,
                        std::span<const Poly> splitting) {
  return stabilization(ring, sequence, w, splitting).folding.fact;
}

ValidityReport validate_chain(const FactChain& chain) {
  ValidityReport rep;
  if (chain.objects.empty()) {
    rep.fail("chain has no objects");
    return rep;
  }
  if (chain.maps.size() + 1 != chain.objects.size()) {
    rep.fail("chain needs one map per adjacent pair");
    return rep;
  }
  const GradedRing& ring = chain.objects.front().ring;
  const Poly& w = chain.objects.front().w;
  for (const auto& obj : chain.objects) {
    if (obj.ring != ring) rep.fail("chain objects over different rings");
    if (!(obj.w == w)) rep.fail("chain objects with different potentials");
  }
  for (std::size_t i = 0; i < chain.maps.size(); ++i) {
    if (!(chain.maps[i].source == chain.objects[i]) || !(chain.maps[i].target == chain.objects[i + 1]))
      rep.fail("map " + std::to_string(i) + " endpoints do not match the chain objects");
    else if (!is_morphism(chain.maps[i]))
      rep.fail("map " + std::to_string(i) + " is not a morphism of factorizations");
  }
  if (!rep.ok) return rep;
  for (std::size_t i = 0; i + 1 < chain.maps.size(); ++i) {
    const auto& f = chain.maps[i];
    const auto& g = chain.maps[i + 1];
    if (!is_zero(PolyMat(g.gm1 * f.gm1)) || !is_zero(PolyMat(g.g0 * f.g0)))
      rep.fail("composite of maps " + std::to_string(i) + " and " + std::to_string(i + 1) + " is nonzero");
  }
  return rep;
}

Factorization totalize(const FactChain& chain) {
  ValidityReport rep = validate_chain(chain);
  if (!rep.ok) throw Error("totalize: invalid chain\n" + rep.to_string());

  const GradedRing& ring = chain.objects.front().ring;
  const Poly& w = chain.objects.front().w;
  int nv = ring.nvars();
  long lo = chain.lo, hi = chain.lo + static_cast<long>(chain.objects.size()) - 1;

  bool graded = true;
  for (const auto& obj : chain.objects) graded = graded && obj.graded;
  long d = graded ? chain.objects.front().d : 0;

  auto obj = [&](long l) -> const Factorization& { return chain.objects[l - lo]; };
  // connecting morphism into index l (from l-1)
  auto map_into = [&](long l) -> const FactMorphism& { return chain.maps[l - lo - 1]; };

  FreeModule e1, e0;
  std::vector<long> e1_off, e0_off;
  for (long l = hi; l >= lo; --l) {
    FreeModule m1 = l % 2 == 0 ? obj(l).e1 : obj(l).e0;
    FreeModule m0 = l % 2 == 0 ? obj(l).e0 : obj(l).e1;
    if (graded) {
      m1 = m1.twisted(-e1_phi(l) * d);
      m0 = m0.twisted(-e0_phi(l) * d);
    } else {
      m1.twists.assign(m1.twists.size(), 0);
      m0.twists.assign(m0.twists.size(), 0);
    }
    e1_off.push_back(e1.rank());
    e0_off.push_back(e0.rank());
    e1 = concat(e1, m1);
    e0 = concat(e0, m0);
  }
  auto slot = [&](long l) { return hi - l; };

  PolyMat phim1 = poly_zero_matrix(e1.rank(), e0.rank(), nv);
  PolyMat phi0 = poly_zero_matrix(e0.rank(), e1.rank(), nv);
  for (long l = lo; l <= hi; ++l) {
    // diagonal: the structure maps of E_l[-l]
    PolyMat dm1 = l % 2 == 0 ? PolyMat(obj(l).phim1) : PolyMat(-obj(l).phi0);
    PolyMat d0 = l % 2 == 0 ? PolyMat(obj(l).phi0) : PolyMat(-obj(l).phim1);
    phim1.block(e1_off[slot(l)], e0_off[slot(l)], dm1.rows(), dm1.cols()) = dm1;
    phi0.block(e0_off[slot(l)], e1_off[slot(l)], d0.rows(), d0.cols()) = d0;
    // connecting maps into index l+1
    if (l + 1 <= hi) {
      const FactMorphism& g = map_into(l + 1);
      PolyMat cm1 = l % 2 == 0 ? g.g0 : g.gm1;
      PolyMat c0 = l % 2 == 0 ? g.gm1 : g.g0;
      phim1.block(e1_off[slot(l + 1)], e0_off[slot(l)], cm1.rows(), cm1.cols()) = cm1;
      phi0.block(e0_off[slot(l + 1)], e1_off[slot(l)], c0.rows(), c0.cols()) = c0;
    }
  }
  return make_factorization(ring, w, std::move(e1), std::move(e0), std::move(phi0), std::move(phim1),
                            graded);
}

namespace {

PolyMat eta_slice(const PolyMat& m, const FoldLayout& bl, const FoldLayout& al, bool e1_side, long pa,
                  long qb, int nvars) {
  const auto& a_off = e1_side ? al.e1_offsets : al.e0_offsets;
  const auto& a_rk = e1_side ? al.e1_ranks : al.e0_ranks;
  const auto& b_off = e1_side ? bl.e1_offsets : bl.e0_offsets;
  const auto& b_rk = e1_side ? bl.e1_ranks : bl.e0_ranks;
  long ra = al.in_range(pa) ? a_rk[al.part_slot(pa)] : 0;
  long rb = bl.in_range(qb) ? b_rk[bl.part_slot(qb)] : 0;
  if (ra == 0 || rb == 0) return poly_zero_matrix(rb, ra, nvars);
  return m.block(b_off[bl.part_slot(qb)], a_off[al.part_slot(pa)], rb, ra);
}

}  // namespace

FoldCone fold_cone(const FactMorphism& eta, const Folding& A, const Folding& B) {
  if (!(eta.source == A.fact) || !(eta.target == B.fact))
    throw Error("fold_cone: eta endpoints do not match the given foldings");
  if (!is_morphism(eta)) throw Error("fold_cone: eta is not a morphism");
  const GradedRing& ring = eta.source.ring;
  int nv = ring.nvars();

  const FoldLayout& la = A.layout;
  const FoldLayout& lb = B.layout;
  long lo = std::min(la.lo, lb.lo), hi = std::max(la.hi, lb.hi);

  // eta_{p,q} = 0 for q > p
  for (long p = lo; p <= hi; ++p)
    for (long q = p + 1; q <= hi; ++q) {
      if (!is_zero(eta_slice(eta.gm1, lb, la, true, p, q, nv)) ||
          !is_zero(eta_slice(eta.g0, lb, la, false, p, q, nv)))
        throw Error("fold_cone: eta block (" + std::to_string(p) + "," + std::to_string(q) +
                    ") must vanish (q > p)");
    }

  // diagonal blocks assemble into chain maps on the component complexes
  ChainMap tilde_m1, tilde_0;
  for (long i = lo; i <= hi; ++i) {
    PolyMat dm1 =
        i % 2 == 0 ? eta_slice(eta.gm1, lb, la, true, i, i, nv) : eta_slice(eta.g0, lb, la, false, i, i, nv);
    PolyMat d0 =
        i % 2 == 0 ? eta_slice(eta.g0, lb, la, false, i, i, nv) : eta_slice(eta.gm1, lb, la, true, i, i, nv);
    tilde_m1.components[i] = std::move(dm1);
    tilde_0.components[i] = std::move(d0);
  }
  if (!is_chain_map(A.cm1, B.cm1, tilde_m1))
    throw Error("fold_cone: diagonal blocks are not a chain map on the (-1)-components");
  if (!is_chain_map(A.c0, B.c0, tilde_0))
    throw Error("fold_cone: diagonal blocks are not a chain map on the 0-components");

  FreeComplex cone_m1 = chain_cone(A.cm1, B.cm1, tilde_m1);
  FreeComplex cone_c0 = chain_cone(A.c0, B.c0, tilde_0);

  auto a_r1 = [&](long p) { return e1_raw(A.cm1, A.c0, p).rank(); };
  auto a_r0 = [&](long p) { return e0_raw(A.cm1, A.c0, p).rank(); };
  auto b_r1 = [&](long p) { return e1_raw(B.cm1, B.c0, p).rank(); };
  auto b_r0 = [&](long p) { return e0_raw(B.cm1, B.c0, p).rank(); };

  FoldLayout cone_lay = fold_layout(cone_m1, cone_c0, A.w);
  FoldBlocks blocks;
  for (long p = cone_lay.lo; p <= cone_lay.hi; ++p)
    for (long q = cone_lay.lo; q <= std::min(cone_lay.hi, p + 1); ++q) {
      PolyMat tl_m1 = -fetch(A.blocks.z0, p + 1, q + 1, a_r0(q + 1), a_r1(p + 1), nv);
      PolyMat bl_m1 = eta_slice(eta.gm1, lb, la, true, p + 1, q, nv);
      PolyMat br_m1 = fetch(B.blocks.m1, p, q, b_r1(q), b_r0(p), nv);
      PolyMat tr_m1 = poly_zero_matrix(tl_m1.rows(), br_m1.cols(), nv);
      blocks.m1[{p, q}] = block2x2(tl_m1, tr_m1, bl_m1, br_m1);

      PolyMat tl_0 = -fetch(A.blocks.m1, p + 1, q + 1, a_r1(q + 1), a_r0(p + 1), nv);
      PolyMat bl_0 = eta_slice(eta.g0, lb, la, false, p + 1, q, nv);
      PolyMat br_0 = fetch(B.blocks.z0, p, q, b_r0(q), b_r1(p), nv);
      PolyMat tr_0 = poly_zero_matrix(tl_0.rows(), br_0.cols(), nv);
      blocks.z0[{p, q}] = block2x2(tl_0, tr_0, bl_0, br_0);
    }

  FoldCone fc;
  fc.folding = make_folding(cone_m1, cone_c0, std::move(blocks), A.w);
  fc.cone_fact = cone(eta);
  return fc;
}

bool folding_matches_cone(const FoldCone& fc, const Folding& A, const Folding& B) {
  const Folding& f = fc.folding;
  const Factorization& C = fc.cone_fact;
  if (f.fact.e1.rank() != C.e1.rank() || f.fact.e0.rank() != C.e0.rank()) return false;
  if (!(f.fact.w == C.w)) return false;

  long rankA_e0 = A.fact.e0.rank(), rankA_e1 = A.fact.e1.rank();
  const FoldLayout& cl = f.layout;
  std::vector<long> pe1(static_cast<std::size_t>(f.fact.e1.rank()), -1);
  std::vector<long> pe0(static_cast<std::size_t>(f.fact.e0.rank()), -1);

  for (long p = cl.hi; p >= cl.lo; --p) {
    long slot = cl.part_slot(p);
    long off1 = cl.e1_offsets[slot];
    long off0 = cl.e0_offsets[slot];
    long ra1 = A.layout.in_range(p + 1) ? A.layout.e0_ranks[A.layout.part_slot(p + 1)] : 0;
    for (long k = 0; k < ra1; ++k)
      pe1[off1 + k] = A.layout.e0_offsets[A.layout.part_slot(p + 1)] + k;
    long rb1 = B.layout.in_range(p) ? B.layout.e1_ranks[B.layout.part_slot(p)] : 0;
    for (long k = 0; k < rb1; ++k)
      pe1[off1 + ra1 + k] = rankA_e0 + B.layout.e1_offsets[B.layout.part_slot(p)] + k;

    long ra0 = A.layout.in_range(p + 1) ? A.layout.e1_ranks[A.layout.part_slot(p + 1)] : 0;
    for (long k = 0; k < ra0; ++k)
      pe0[off0 + k] = A.layout.e1_offsets[A.layout.part_slot(p + 1)] + k;
    long rb0 = B.layout.in_range(p) ? B.layout.e0_ranks[B.layout.part_slot(p)] : 0;
    for (long k = 0; k < rb0; ++k)
      pe0[off0 + ra0 + k] = rankA_e1 + B.layout.e0_offsets[B.layout.part_slot(p)] + k;
  }
  for (long v : pe1)
    if (v < 0) return false;
  for (long v : pe0)
    if (v < 0) return false;

  for (long i = 0; i < f.fact.e1.rank(); ++i)
    if (f.fact.e1.twists[i] != C.e1.twists[pe1[i]]) return false;
  for (long i = 0; i < f.fact.e0.rank(); ++i)
    if (f.fact.e0.twists[i] != C.e0.twists[pe0[i]]) return false;

  for (long r = 0; r < f.fact.phim1.rows(); ++r)
    for (long c = 0; c < f.fact.phim1.cols(); ++c)
      if (f.fact.phim1(r, c) != C.phim1(pe1[r], pe0[c])) return false;
  for (long r = 0; r < f.fact.phi0.rows(); ++r)
    for (long c = 0; c < f.fact.phi0.cols(); ++c)
      if (f.fact.phi0(r, c) != C.phi0(pe0[r], pe1[c])) return false;
  return true;
}

}  // namespace mfkit
