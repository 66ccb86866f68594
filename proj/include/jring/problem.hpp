#pragma once

#include "jring/poly.hpp"

#include <string>
#include <vector>

namespace jring {

/// Homogeneous system f_1..f_r in K[x_1..x_n] with degrees d_j >= 1.
/// F = sum y_j f_j is derived on demand, never stored.
class ProblemInput {
 public:
  /// Throws Error if a polynomial is zero, constant, inhomogeneous, over
  /// another field or in a different number of variables.
  ProblemInput(FieldSpec field, std::vector<MultiPoly> polys, std::vector<std::string> var_names = {});

  FieldSpec field() const { return field_; }
  int n() const { return n_; }
  int r() const { return static_cast<int>(polys_.size()); }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::vector<MultiPoly>& polys() const { return polys_; }
  const std::vector<std::string>& var_names() const { return names_; }

  /// d_1···d_r = 0 in K.
  bool degree_product_vanishes() const;

  /// Deterministic textual form in the input grammar.
  std::string canonical_text() const;
  /// 64-bit FNV-1a of canonical_text(), as 16 hex digits.
  std::string hash() const;

 private:
  FieldSpec field_;
  int n_;
  std::vector<MultiPoly> polys_;
  std::vector<int> degrees_;
  std::vector<std::string> names_;
};

std::string fnv1a_hex(const std::string& text);

}  // namespace jring
