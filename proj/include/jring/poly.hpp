#pragma once

#include "jring/field.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jring {

using Exponents = std::vector<int>;

int total_degree(std::span<const int> e);

/// Graded lexicographic order with x1 < x2 < ... : total degree first,
/// then the exponent of the highest-indexed variable where they differ.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept;
};

/// All exponent vectors of total degree `degree`, ascending in grlex.
std::vector<Exponents> monomials_of_degree(int nvars, int degree);

/// Sparse multivariate polynomial over an exact field.  Zero
/// coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Scalar, GrlexLess>;

  MultiPoly(FieldSpec field, int nvars);

  static MultiPoly constant(FieldSpec field, int nvars, const Scalar& c);
  static MultiPoly monomial(FieldSpec field, Exponents e, const Scalar& c);
  static MultiPoly variable(FieldSpec field, int nvars, int index);

  FieldSpec field() const { return field_; }
  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Largest total degree, -1 for the zero polynomial.
  int degree() const;
  /// The common degree of all terms; nullopt for zero or inhomogeneous.
  std::optional<int> homogeneous_degree() const;

  Scalar coefficient(const Exponents& e) const;
  void add_term(const Exponents& e, const Scalar& c);

  /// Copy with the variable count widened by appending unused variables.
  MultiPoly extended(int nvars) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly operator-() const;
  MultiPoly scaled(const Scalar& c) const;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  /// Human-readable form using `names` (default x1..xn).
  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  void check_compatible(const MultiPoly& o) const;

  FieldSpec field_;
  int nvars_;
  TermMap terms_;
};

/// Formal partial derivative, coefficients reduced into the field.
MultiPoly partial_derivative(const MultiPoly& f, int index);

MultiPoly power(const MultiPoly& f, int m);

}  // namespace jring
