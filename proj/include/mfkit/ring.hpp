#ifndef MFKIT_RING_HPP
#define MFKIT_RING_HPP

#include "mfkit/field.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mfkit {

using Mono = std::vector<std::int32_t>;

// Graded lexicographic order: total (unweighted) degree first, then lex.
// Used for canonical term iteration and printing only.
struct GrlexLess {
  bool operator()(const Mono& a, const Mono& b) const;
};

// Multivariate polynomial with exact coefficients.  nvars() == -1 marks a
// constant not yet bound to a ring arity (the additive/multiplicative
// identities Eigen conjures via Poly(0), Poly(1)); it unifies with any arity
// on the first binary operation.
class Poly {
 public:
  using TermMap = std::map<Mono, FieldElem, GrlexLess>;

  Poly() = default;
  explicit Poly(long c);
  explicit Poly(const FieldElem& c);

  static Poly zero(int nvars);
  static Poly term(Mono exps, FieldElem coeff, int nvars);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly operator*(const FieldElem& c) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(unsigned e) const;

  // Rebinds an arity-unbound constant to n variables; checks arity otherwise.
  Poly bound(int n) const;

  // Entry-wise substitution x_i -> images[i]; images live in a ring with
  // target_nvars variables (their coefficients may change field).
  Poly substitute(std::span<const Poly> images, int target_nvars, const FieldSpec& target_field) const;

  FieldElem evaluate(std::span<const FieldElem> point) const;

  FieldElem coeff(const Mono& m) const;

 private:
  int nvars_ = -1;
  TermMap terms_;

  void add_term(const Mono& m, const FieldElem& c);
  static int unify_arity(int a, int b);
};

inline Poly operator*(const FieldElem& c, const Poly& p) { return p * c; }

// Generic printing with placeholder names x0, x1, ...; ring-aware printing
// lives on GradedRing.
std::ostream& operator<<(std::ostream& os, const Poly& p);

// R = k[x_1..x_n] with positive integer weights per variable.
class GradedRing {
 public:
  GradedRing() = default;
  GradedRing(std::vector<std::string> vars, std::vector<int> weights, FieldSpec field);

  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<int>& weights() const { return weights_; }
  const FieldSpec& field() const { return field_; }
  int var_index(const std::string& name) const;  // -1 if absent

  Poly zero() const { return Poly::zero(nvars()); }
  Poly constant(const FieldElem& c) const;
  Poly constant(long c) const { return constant(FieldElem(c)); }
  Poly variable(int i) const;
  Poly monomial(const Mono& exps, const FieldElem& coeff) const;

  long weighted_degree(const Mono& m) const;
  // Weighted degree when every term agrees; nullopt for inhomogeneous or zero
  // (the zero polynomial is homogeneous of every degree).
  std::optional<long> homogeneous_degree(const Poly& p) const;

  bool owns(const Poly& p) const { return p.nvars() == nvars() || p.is_zero() || p.nvars() == -1; }

  Poly parse(const std::string& text) const;
  std::string to_string(const Poly& p) const;

  // All monomials of the given weighted degree, in grlex order.
  std::vector<Mono> monomials_of_degree(long degree) const;

  bool operator==(const GradedRing& o) const {
    return vars_ == o.vars_ && weights_ == o.weights_ && field_ == o.field_;
  }
  bool operator!=(const GradedRing& o) const { return !(*this == o); }

 private:
  std::vector<std::string> vars_;
  std::vector<int> weights_;
  FieldSpec field_;
};

// Basis of the degree-`degree` graded piece of the twisted free module
// (+) R(twists[i]): in slot i, the monomials of weighted degree
// degree + twists[i].
struct GradedPieceElem {
  int slot;
  Mono mono;
};
std::vector<GradedPieceElem> graded_piece_basis(const GradedRing& ring, std::span<const long> twists,
                                                long degree);

}  // namespace mfkit

namespace Eigen {
template <>
struct NumTraits<mfkit::Poly> : GenericNumTraits<mfkit::Poly> {
  typedef mfkit::Poly Real;
  typedef mfkit::Poly NonInteger;
  typedef mfkit::Poly Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 60,
    MulCost = 200
  };
  static inline Real epsilon() { return mfkit::Poly(0); }
  static inline Real dummy_precision() { return mfkit::Poly(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

#endif  // MFKIT_RING_HPP
