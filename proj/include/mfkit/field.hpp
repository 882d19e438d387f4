#ifndef MFKIT_FIELD_HPP
#define MFKIT_FIELD_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mfkit {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Domain errors (bad inputs, mismatched rings, inconsistent data).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

bool is_prime_u32(std::uint32_t n);

// The coefficient field: the rationals, or a prime field F_p with p < 2^31.
struct FieldSpec {
  enum class Kind { Rationals, PrimeField };

  Kind kind = Kind::Rationals;
  std::uint32_t p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime_field(std::uint32_t p);

  bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
  bool operator!=(const FieldSpec& o) const { return !(*this == o); }

  std::string to_string() const;
};

// One field element.  p_ == 0 means a rational; a rational whose denominator
// is coprime to p unifies with F_p on demand, so integer literals work in
// either field.  For p_ > 0 the value is an integer residue in [0, p).
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(long n) : v_(n) {}
  explicit FieldElem(BigRat v, std::uint32_t p = 0);

  static FieldElem zero(const FieldSpec& f) { return FieldElem(BigRat(0), f.p); }
  static FieldElem one(const FieldSpec& f) { return FieldElem(BigRat(1), f.p); }
  // Accepts "n" or "n/m" with optional leading '-'.
  static FieldElem from_string(const std::string& s, const FieldSpec& f);

  bool is_zero() const { return v_.is_zero(); }
  std::uint32_t modulus() const { return p_; }
  const BigRat& value() const { return v_; }

  // Interprets this element in the given field (reduces a rational mod p).
  FieldElem in_field(const FieldSpec& f) const;

  FieldElem operator-() const;
  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem inverse() const;

  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  FieldElem& operator/=(const FieldElem& o) { return *this = *this / o; }

  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  // Canonical text: reduced "n/m" over Q, decimal residue over F_p.
  std::string to_string() const;

 private:
  BigRat v_;
  std::uint32_t p_ = 0;

  static std::uint32_t unify(std::uint32_t a, std::uint32_t b);
};

std::ostream& operator<<(std::ostream& os, const FieldElem& x);

}  // namespace mfkit

#include <Eigen/Core>

namespace Eigen {
template <>
struct NumTraits<mfkit::FieldElem> : GenericNumTraits<mfkit::FieldElem> {
  typedef mfkit::FieldElem Real;
  typedef mfkit::FieldElem NonInteger;
  typedef mfkit::FieldElem Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 20,
    MulCost = 40
  };
  static inline Real epsilon() { return mfkit::FieldElem(0); }
  static inline Real dummy_precision() { return mfkit::FieldElem(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

#endif  // MFKIT_FIELD_HPP
