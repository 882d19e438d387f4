#include "mfkit/fact.hpp"

#include <sstream>

namespace mfkit {

FreeModule FreeModule::twisted(long shift) const {
  FreeModule m = *this;
  for (auto& t : m.twists) t += shift;
  return m;
}

FreeModule concat(const FreeModule& a, const FreeModule& b) {
  FreeModule m = a;
  m.twists.insert(m.twists.end(), b.twists.begin(), b.twists.end());
  return m;
}

std::string ValidityReport::to_string() const {
  if (ok) return "valid";
  std::ostringstream os;
  os << "invalid:";
  for (const auto& f : failures) os << "\n  - " << f;
  return os.str();
}

bool Factorization::operator==(const Factorization& o) const {
  return ring == o.ring && w == o.w && e1 == o.e1 && e0 == o.e0 && graded == o.graded && d == o.d &&
         phi0 == o.phi0 && phim1 == o.phim1;
}

bool FactMorphism::operator==(const FactMorphism& o) const {
  return source == o.source && target == o.target && gm1 == o.gm1 && g0 == o.g0;
}

Factorization make_factorization(GradedRing ring, Poly w, FreeModule e1, FreeModule e0, PolyMat phi0,
                                 PolyMat phim1, bool allow_graded) {
  if (!ring.owns(w)) throw Error("make_factorization: w not in the ring");
  if (phi0.rows() != e0.rank() || phi0.cols() != e1.rank())
    throw Error("make_factorization: phi0 must be rank(e0) x rank(e1)");
  if (phim1.rows() != e1.rank() || phim1.cols() != e0.rank())
    throw Error("make_factorization: phim1 must be rank(e1) x rank(e0)");
  Factorization E;
  E.ring = std::move(ring);
  E.w = w.bound(E.ring.nvars());
  E.e1 = std::move(e1);
  E.e0 = std::move(e0);
  E.phi0 = std::move(phi0);
  E.phim1 = std::move(phim1);
  for (long i = 0; i < E.phi0.rows(); ++i)
    for (long j = 0; j < E.phi0.cols(); ++j) E.phi0(i, j) = E.phi0(i, j).bound(E.ring.nvars());
  for (long i = 0; i < E.phim1.rows(); ++i)
    for (long j = 0; j < E.phim1.cols(); ++j) E.phim1(i, j) = E.phim1(i, j).bound(E.ring.nvars());
  if (allow_graded) {
    if (E.w.is_zero()) {
      E.graded = true;
      E.d = 0;
    } else if (auto deg = E.ring.homogeneous_degree(E.w)) {
      E.graded = true;
      E.d = *deg;
    }
  }
  return E;
}

Factorization zero_factorization(const GradedRing& ring, const Poly& w) {
  int n = ring.nvars();
  return make_factorization(ring, w, FreeModule{}, FreeModule{}, poly_zero_matrix(0, 0, n),
                            poly_zero_matrix(0, 0, n));
}

long required_entry_degree(long target_twist, long source_twist, long phi_shift_on_source) {
  return target_twist - (source_twist + phi_shift_on_source);
}

void check_matrix_degrees(const GradedRing& ring, const PolyMat& m, std::span<const long> target_twists,
                          std::span<const long> source_twists, long source_phi_times_d,
                          const std::string& label, ValidityReport& rep) {
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) {
      if (m(i, j).is_zero()) continue;
      long want = required_entry_degree(target_twists[i], source_twists[j], source_phi_times_d);
      auto got = ring.homogeneous_degree(m(i, j));
      if (!got || *got != want) {
        std::ostringstream os;
        os << label << "(" << i << "," << j << "): entry " << ring.to_string(m(i, j))
           << (got ? " has degree " + std::to_string(*got) : " is inhomogeneous") << ", expected degree "
           << want;
        rep.fail(os.str());
      }
    }
}

namespace {

void check_product(const GradedRing& ring, const PolyMat& got, const Poly& w, const std::string& label,
                   ValidityReport& rep) {
  for (long i = 0; i < got.rows(); ++i)
    for (long j = 0; j < got.cols(); ++j) {
      Poly want = i == j ? w : ring.zero();
      if (got(i, j) != want) {
        std::ostringstream os;
        os << label << "(" << i << "," << j << ") = " << ring.to_string(got(i, j)) << ", expected "
           << ring.to_string(want);
        rep.fail(os.str());
      }
    }
}

}  // namespace

ValidityReport validate_factorization(const Factorization& E) {
  ValidityReport rep;
  if (E.phi0.rows() != E.e0.rank() || E.phi0.cols() != E.e1.rank()) rep.fail("phi0 has wrong shape");
  if (E.phim1.rows() != E.e1.rank() || E.phim1.cols() != E.e0.rank()) rep.fail("phim1 has wrong shape");
  if (!rep.ok) return rep;

  check_product(E.ring, E.phi0 * E.phim1, E.w, "phi0*phim1", rep);
  check_product(E.ring, E.phim1 * E.phi0, E.w, "phim1*phi0", rep);

  if (E.graded) {
    if (!E.w.is_zero()) {
      auto deg = E.ring.homogeneous_degree(E.w);
      if (!deg || *deg != E.d) rep.fail("w is not homogeneous of degree d");
    }
    check_matrix_degrees(E.ring, E.phi0, E.e0.twists, E.e1.twists, 0, "phi0", rep);
    check_matrix_degrees(E.ring, E.phim1, E.e1.twists, E.e0.twists, -E.d, "phim1", rep);
  }
  return rep;
}

ValidityReport validate_morphism(const FactMorphism& g) {
  ValidityReport rep;
  const Factorization &E = g.source, &F = g.target;
  if (E.ring != F.ring) {
    rep.fail("source and target live over different rings");
    return rep;
  }
  if (E.w != F.w) {
    rep.fail("source and target have different potentials");
    return rep;
  }
  if (g.gm1.rows() != F.e1.rank() || g.gm1.cols() != E.e1.rank()) rep.fail("gm1 has wrong shape");
  if (g.g0.rows() != F.e0.rank() || g.g0.cols() != E.e0.rank()) rep.fail("g0 has wrong shape");
  if (!rep.ok) return rep;

  PolyMat sq1 = F.phi0 * g.gm1 - g.g0 * E.phi0;
  if (!is_zero(sq1)) rep.fail("square phi0_F*gm1 = g0*phi0_E does not commute");
  PolyMat sq2 = F.phim1 * g.g0 - g.gm1 * E.phim1;
  if (!is_zero(sq2)) rep.fail("square phim1_F*g0 = gm1*phim1_E does not commute");
  return rep;
}

bool is_morphism(const FactMorphism& g) { return validate_morphism(g).ok; }

bool homotopy_witnesses(const FactMorphism& g1, const FactMorphism& g2, const Homotopy& h) {
  const Factorization &E = g1.source, &F = g1.target;
  PolyMat lhs1 = g1.gm1 - g2.gm1;
  PolyMat rhs1 = h.h0 * E.phi0 + F.phim1 * h.hm1;
  PolyMat lhs0 = g1.g0 - g2.g0;
  PolyMat rhs0 = F.phi0 * h.h0 + h.hm1 * E.phim1;
  return is_zero(PolyMat(lhs1 - rhs1)) && is_zero(PolyMat(lhs0 - rhs0));
}

Factorization shift(const Factorization& E, long n) {
  if (n == 0) return E;
  Factorization r = E;
  long steps = n > 0 ? n : -n;
  for (long k = 0; k < steps; ++k) {
    Factorization s = r;
    if (n > 0) {
      s.e1 = r.e0;
      s.e0 = r.e1.twisted(r.d);
      s.phim1 = -r.phi0;
      s.phi0 = -r.phim1;
    } else {
      s.e1 = r.e0.twisted(-r.d);
      s.e0 = r.e1;
      s.phim1 = -r.phi0;
      s.phi0 = -r.phim1;
    }
    r = std::move(s);
  }
  return r;
}

FactMorphism shift(const FactMorphism& g, long n) {
  FactMorphism r = g;
  long steps = n > 0 ? n : -n;
  for (long k = 0; k < steps; ++k) {
    FactMorphism s;
    s.source = shift(r.source, n > 0 ? 1 : -1);
    s.target = shift(r.target, n > 0 ? 1 : -1);
    s.gm1 = r.g0;
    s.g0 = r.gm1;
    r = std::move(s);
  }
  return r;
}

Factorization twist(const Factorization& E, long m) {
  if (!E.graded) throw Error("twist: ungraded factorization has no twist functor");
  Factorization r = E;
  r.e1 = E.e1.twisted(m * E.d);
  r.e0 = E.e0.twisted(m * E.d);
  return r;
}

Factorization direct_sum(const Factorization& E, const Factorization& F) {
  if (E.ring != F.ring) throw Error("direct_sum: ring mismatch");
  if (E.w != F.w) throw Error("direct_sum: potential mismatch");
  int n = E.ring.nvars();
  Factorization r = E;
  r.e1 = concat(E.e1, F.e1);
  r.e0 = concat(E.e0, F.e0);
  r.phi0 = block2x2(E.phi0, poly_zero_matrix(E.e0.rank(), F.e1.rank(), n),
                    poly_zero_matrix(F.e0.rank(), E.e1.rank(), n), F.phi0);
  r.phim1 = block2x2(E.phim1, poly_zero_matrix(E.e1.rank(), F.e0.rank(), n),
                     poly_zero_matrix(F.e1.rank(), E.e0.rank(), n), F.phim1);
  r.graded = E.graded && F.graded;
  return r;
}

FactMorphism direct_sum(const FactMorphism& g, const FactMorphism& h) {
  int n = g.source.ring.nvars();
  FactMorphism r;
  r.source = direct_sum(g.source, h.source);
  r.target = direct_sum(g.target, h.target);
  r.gm1 = block2x2(g.gm1, poly_zero_matrix(g.target.e1.rank(), h.source.e1.rank(), n),
                   poly_zero_matrix(h.target.e1.rank(), g.source.e1.rank(), n), h.gm1);
  r.g0 = block2x2(g.g0, poly_zero_matrix(g.target.e0.rank(), h.source.e0.rank(), n),
                  poly_zero_matrix(h.target.e0.rank(), g.source.e0.rank(), n), h.g0);
  return r;
}

FactMorphism identity_morphism(const Factorization& E) {
  FactMorphism g;
  g.source = E;
  g.target = E;
  g.gm1 = poly_identity(E.e1.rank(), E.ring.nvars());
  g.g0 = poly_identity(E.e0.rank(), E.ring.nvars());
  return g;
}

FactMorphism zero_morphism(const Factorization& E, const Factorization& F) {
  FactMorphism g;
  g.source = E;
  g.target = F;
  g.gm1 = poly_zero_matrix(F.e1.rank(), E.e1.rank(), E.ring.nvars());
  g.g0 = poly_zero_matrix(F.e0.rank(), E.e0.rank(), E.ring.nvars());
  return g;
}

FactMorphism compose(const FactMorphism& g, const FactMorphism& f) {
  if (!(f.target == g.source)) throw Error("compose: endpoints do not match");
  FactMorphism r;
  r.source = f.source;
  r.target = g.target;
  r.gm1 = g.gm1 * f.gm1;
  r.g0 = g.g0 * f.g0;
  return r;
}

FactMorphism add(const FactMorphism& g, const FactMorphism& h) {
  if (!(g.source == h.source) || !(g.target == h.target)) throw Error("add: endpoints do not match");
  FactMorphism r = g;
  r.gm1 = g.gm1 + h.gm1;
  r.g0 = g.g0 + h.g0;
  return r;
}

FactMorphism negate(const FactMorphism& g) {
  FactMorphism r = g;
  r.gm1 = -g.gm1;
  r.g0 = -g.g0;
  return r;
}

Factorization cone(const FactMorphism& g) {
  const Factorization &E = g.source, &F = g.target;
  if (E.ring != F.ring || E.w != F.w) throw Error("cone: endpoint data mismatch");
  if (!is_morphism(g)) throw Error("cone: g is not a morphism of factorizations");
  Factorization C = E;
  C.graded = E.graded && F.graded;
  C.e1 = concat(E.e0, F.e1);
  C.e0 = concat(E.e1.twisted(C.graded ? E.d : 0), F.e0);
  int n = E.ring.nvars();
  C.phim1 = block2x2(-E.phi0, poly_zero_matrix(E.e0.rank(), F.e0.rank(), n), g.gm1, F.phim1);
  C.phi0 = block2x2(-E.phim1, poly_zero_matrix(E.e1.rank(), F.e1.rank(), n), g.g0, F.phi0);
  return C;
}

FactMorphism cone_inclusion(const FactMorphism& g) {
  const Factorization &E = g.source, &F = g.target;
  int n = E.ring.nvars();
  FactMorphism inc;
  inc.source = F;
  inc.target = cone(g);
  inc.gm1 = vstack(poly_zero_matrix(E.e0.rank(), F.e1.rank(), n), poly_identity(F.e1.rank(), n));
  inc.g0 = vstack(poly_zero_matrix(E.e1.rank(), F.e0.rank(), n), poly_identity(F.e0.rank(), n));
  return inc;
}

FactMorphism cone_projection(const FactMorphism& g) {
  const Factorization &E = g.source, &F = g.target;
  int n = E.ring.nvars();
  FactMorphism pr;
  pr.source = cone(g);
  pr.target = shift(E, 1);
  pr.gm1 = hstack(poly_identity(E.e0.rank(), n), poly_zero_matrix(E.e0.rank(), F.e1.rank(), n));
  pr.g0 = hstack(poly_identity(E.e1.rank(), n), poly_zero_matrix(E.e1.rank(), F.e0.rank(), n));
  return pr;
}

Envelope contractible_envelope(const Factorization& E) {
  int n = E.ring.nvars();
  long r1 = E.e1.rank(), r0 = E.e0.rank();
  Factorization G = E;
  G.e1 = concat(E.e1, E.e0);
  G.e0 = concat(E.e0, E.e1.twisted(E.graded ? E.d : 0));
  G.phim1 = block2x2(poly_zero_matrix(r1, r0, n), poly_identity(r1, n), scalar_matrix(E.w, r0),
                     poly_zero_matrix(r0, r1, n));
  G.phi0 = block2x2(poly_zero_matrix(r0, r1, n), poly_identity(r0, n), scalar_matrix(E.w, r1),
                    poly_zero_matrix(r1, r0, n));

  FactMorphism emb;
  emb.source = E;
  emb.target = G;
  emb.gm1 = vstack(poly_identity(r1, n), E.phi0);
  emb.g0 = vstack(poly_identity(r0, n), E.phim1);
  return {std::move(G), std::move(emb)};
}

namespace {

PolyMat substitute(const PolyMat& m, const GradedRing& target, std::span<const Poly> images) {
  PolyMat out(m.rows(), m.cols());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      out(i, j) = m(i, j).substitute(images, target.nvars(), target.field());
  return out;
}

void check_base_change(const Factorization& E, const GradedRing& target, std::span<const Poly> images,
                       const Poly& target_w) {
  if (static_cast<int>(images.size()) != E.ring.nvars())
    throw Error("base_change: need one image per source variable");
  Poly mapped = E.w.substitute(images, target.nvars(), target.field());
  if (mapped != target_w.bound(target.nvars()))
    throw Error("base_change: theta(w) != target potential (" + target.to_string(mapped) + " vs " +
                target.to_string(target_w) + ")");
  if (E.graded) {
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i].is_zero()) continue;
      auto deg = target.homogeneous_degree(images[i]);
      if (!deg || *deg != E.ring.weights()[i])
        throw Error("base_change: image of variable " + E.ring.vars()[i] +
                    " must be homogeneous of its weight");
    }
  }
}

}  // namespace

Factorization base_change(const Factorization& E, const GradedRing& target, std::span<const Poly> images,
                          const Poly& target_w) {
  check_base_change(E, target, images, target_w);
  Factorization r;
  r.ring = target;
  r.w = target_w.bound(target.nvars());
  r.e1 = E.e1;
  r.e0 = E.e0;
  r.phi0 = substitute(E.phi0, target, images);
  r.phim1 = substitute(E.phim1, target, images);
  r.graded = E.graded;
  r.d = E.d;
  return r;
}

FactMorphism base_change(const FactMorphism& g, const GradedRing& target, std::span<const Poly> images,
                         const Poly& target_w) {
  FactMorphism r;
  r.source = base_change(g.source, target, images, target_w);
  r.target = base_change(g.target, target, images, target_w);
  r.gm1 = substitute(g.gm1, target, images);
  r.g0 = substitute(g.g0, target, images);
  return r;
}

}  // namespace mfkit
