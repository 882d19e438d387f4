#include "mfkit/field.hpp"

#include <sstream>

namespace mfkit {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime_field(std::uint32_t p) {
  if (!is_prime_u32(p)) throw Error("FieldSpec: " + std::to_string(p) + " is not prime");
  FieldSpec f;
  f.kind = Kind::PrimeField;
  f.p = p;
  return f;
}

std::string FieldSpec::to_string() const {
  return kind == Kind::Rationals ? "Q" : "F" + std::to_string(p);
}

namespace {

std::uint64_t mod_reduce(const BigInt& n, std::uint32_t p) {
  BigInt r = n % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint64_t>();
}

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint32_t p) {
  if (a % p == 0) throw Error("division by zero in F_" + std::to_string(p));
  return mod_pow(a, p - 2, p);
}

}  // namespace

FieldElem::FieldElem(BigRat v, std::uint32_t p) : v_(std::move(v)), p_(p) {
  if (p_ == 0) return;
  std::uint64_t num = mod_reduce(numerator(v_), p_);
  std::uint64_t den = mod_reduce(denominator(v_), p_);
  if (den == 0) throw Error("denominator not invertible mod " + std::to_string(p_));
  v_ = BigRat(num * mod_inv(den, p_) % p_);
}

FieldElem FieldElem::from_string(const std::string& s, const FieldSpec& f) {
  BigRat v;
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
      v = BigRat(BigInt(s));
    } else {
      BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
      if (den == 0) throw Error("zero denominator");
      if (den < 0) {
        num = -num;
        den = -den;
      }
      v = BigRat(num, den);
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error("bad coefficient literal '" + s + "'");
  }
  return FieldElem(std::move(v), f.p);
}

std::uint32_t FieldElem::unify(std::uint32_t a, std::uint32_t b) {
  if (a == b) return a;
  if (a == 0) return b;
  if (b == 0) return a;
  throw Error("field mismatch: F" + std::to_string(a) + " vs F" + std::to_string(b));
}

FieldElem FieldElem::in_field(const FieldSpec& f) const {
  if (p_ == f.p) return *this;
  if (p_ != 0) throw Error("cannot move element from F" + std::to_string(p_) + " to " + f.to_string());
  return FieldElem(v_, f.p);
}

FieldElem FieldElem::operator-() const {
  FieldElem r;
  r.p_ = p_;
  if (p_ == 0 || v_.is_zero())
    r.v_ = -v_;
  else
    r.v_ = BigRat(BigInt(p_) - numerator(v_));
  return r;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  std::uint32_t p = unify(p_, o.p_);
  FieldElem r;
  r.p_ = p;
  if (p == 0) {
    r.v_ = v_ + o.v_;
  } else {
    std::uint64_t a = p_ == p ? mod_reduce(numerator(v_), p) : mod_reduce(numerator(FieldElem(v_, p).v_), p);
    std::uint64_t b = o.p_ == p ? mod_reduce(numerator(o.v_), p) : mod_reduce(numerator(FieldElem(o.v_, p).v_), p);
    r.v_ = BigRat((a + b) % p);
  }
  return r;
}

FieldElem FieldElem::operator-(const FieldElem& o) const { return *this + (-o); }

FieldElem FieldElem::operator*(const FieldElem& o) const {
  std::uint32_t p = unify(p_, o.p_);
  FieldElem r;
  r.p_ = p;
  if (p == 0) {
    r.v_ = v_ * o.v_;
  } else {
    std::uint64_t a = numerator(FieldElem(v_, p).v_).convert_to<std::uint64_t>();
    std::uint64_t b = numerator(FieldElem(o.v_, p).v_).convert_to<std::uint64_t>();
    r.v_ = BigRat(a * b % p);
  }
  return r;
}

FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inverse(); }

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw Error("division by zero");
  FieldElem r;
  r.p_ = p_;
  if (p_ == 0)
    r.v_ = BigRat(1) / v_;
  else
    r.v_ = BigRat(mod_inv(numerator(v_).convert_to<std::uint64_t>(), p_));
  return r;
}

bool FieldElem::operator==(const FieldElem& o) const {
  std::uint32_t p;
  try {
    p = unify(p_, o.p_);
  } catch (const Error&) {
    return false;
  }
  if (p == 0) return v_ == o.v_;
  return FieldElem(v_, p).v_ == FieldElem(o.v_, p).v_;
}

std::string FieldElem::to_string() const {
  std::ostringstream os;
  os << v_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FieldElem& x) { return os << x.to_string(); }

}  // namespace mfkit
