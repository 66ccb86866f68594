#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace jring {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different fields, or have incompatible shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Division by zero, or a proven identity failed (which means a bug).
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// An operation's mathematical hypotheses are not met or not certified.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

bool is_prime(std::uint64_t n);

/// The exact coefficient field: the rationals, or F_p for a prime p < 2^31.
class FieldSpec {
 public:
  enum class Kind { rationals, prime };

  static FieldSpec rationals() { return FieldSpec{}; }
  static FieldSpec prime(std::uint64_t p);

  Kind kind() const { return p_ == 0 ? Kind::rationals : Kind::prime; }
  bool is_rationals() const { return p_ == 0; }
  /// 0 for the rationals.
  std::uint32_t modulus() const { return p_; }
  /// "Q" or "F<p>".
  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  friend class Scalar;
  static FieldSpec unchecked(std::uint32_t p) {
    FieldSpec f;
    f.p_ = p;
    return f;
  }

  std::uint32_t p_ = 0;
};

inline constexpr std::uint32_t kDefaultPrime = 32003;

/// An exact field element.  Over F_p only the residue is meaningful,
/// over Q only the reduced fraction.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(FieldSpec field) : p_(field.modulus()) {}
  Scalar(FieldSpec field, long value);
  Scalar(FieldSpec field, const mpz_class& value);
  /// Throws ArithmeticError if the denominator vanishes in the field.
  Scalar(FieldSpec field, const mpq_class& value);

  FieldSpec field() const;
  bool is_zero() const { return p_ ? residue_ == 0 : sgn(q_) == 0; }
  bool is_one() const { return p_ ? residue_ == 1 : q_ == 1; }

  /// Residue in [0, p); only valid over a prime field.
  std::uint32_t residue() const { return residue_; }
  /// Exact rational value; only valid over Q.
  const mpq_class& rational() const { return q_; }

  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  void check_same(const Scalar& o) const;

  std::uint32_t p_ = 0;
  std::uint32_t residue_ = 0;
  mpq_class q_;
};

}  // namespace jring
