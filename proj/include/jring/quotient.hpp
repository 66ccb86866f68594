#pragma once

#include "jring/linalg.hpp"
#include "jring/poly.hpp"

#include <unordered_map>
#include <vector>

namespace jring {

/// Degree-N piece of K[x]/(gens), with normal forms.
class QuotientSlice {
 public:
  QuotientSlice(FieldSpec field, int nvars, int degree, std::vector<Exponents> monomials, Echelon image);

  FieldSpec field() const { return image_.field(); }
  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const std::vector<Exponents>& monomials() const { return monomials_; }
  std::optional<std::size_t> index_of(const Exponents& e) const;

  std::size_t image_dimension() const { return image_.rank(); }
  /// dim of the quotient in this degree.
  std::size_t dimension() const { return complement_.size(); }
  /// Monomial indices whose classes form a basis of the quotient.
  const std::vector<std::size_t>& complement() const { return complement_; }
  const Echelon& image() const { return image_; }

  /// Coordinates of the class of h (homogeneous of this degree, or zero)
  /// in the complement basis.
  SparseVec normal_form(const MultiPoly& h) const;
  /// Same for a vector indexed by monomials().
  SparseVec normal_form(SparseVec v) const;

 private:
  int nvars_;
  int degree_;
  std::vector<Exponents> monomials_;
  std::unordered_map<Exponents, std::size_t, ExponentsHash> index_;
  Echelon image_;
  std::vector<std::size_t> complement_;
  std::vector<std::size_t> complement_slot_;  // monomial index -> complement position, or npos
};

/// Throws Error for a nonhomogeneous generator; zero generators are ignored.
QuotientSlice quotient_slice(const std::vector<MultiPoly>& gens, int nvars, FieldSpec field, int degree);

/// dim of K[x]/(gens) in the given degree, by one sparse rank.
std::size_t quotient_dimension(const std::vector<MultiPoly>& gens, int nvars, FieldSpec field, int degree);

}  // namespace jring
