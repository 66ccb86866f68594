#pragma once

#include "jring/forms.hpp"
#include "jring/quotient.hpp"

#include <map>
#include <optional>
#include <vector>

namespace jring {

// Forms here live on K[x] (or K[x]/(f)) with basis dx_1..dx_n: DiffForm
// values with r() == 0.  The weight of x^a dx_I is |a| + |I|.

/// Which products of multipliers appear: saito uses single ω_i, full
/// product uses ω_1∧…∧ω_r, generalized(s) uses every ω_J with |J| = r−s+1.
enum class DivisionShape { saito, full_product, generalized };

enum class DivisionRing { polynomial, quotient };

struct DivisionOptions {
  DivisionShape shape = DivisionShape::full_product;
  int s = 1;  // generalized only
  DivisionRing over = DivisionRing::polynomial;
  std::vector<MultiPoly> ideal;  // the f's, quotient mode only
  std::optional<MultiPoly> saturation;  // g, tried as g^m for m = 0..m_max
  int m_max = 10;
};

struct DivisionSolution {
  int m = 0;
  std::vector<std::vector<int>> subsets;  // 0-based multiplier indices
  std::vector<DiffForm> alphas;           // one per subset
};

/// Common weight of a nonzero x-only form; nullopt for zero or mixed.
std::optional<int> form_weight(const DiffForm& w);

/// Least m <= m_max (only m = 0 without saturation) with g^m ω expressed in
/// the requested shape, or nullopt.  In quotient mode the identity holds
/// modulo the ideal and the α's use normal-form representatives.
std::optional<DivisionSolution> wedge_division_solve(const DiffForm& omega, const std::vector<DiffForm>& multipliers,
                                                     const DivisionOptions& options);

/// Σ_J ω_J ∧ α_J.
DiffForm division_combination(const std::vector<DiffForm>& multipliers, const DivisionSolution& solution);

/// Reduces every coefficient of an x-only form to its normal form modulo
/// the ideal (identity when the ideal is empty).
DiffForm reduce_form(const DiffForm& w, const std::vector<MultiPoly>& ideal);

/// Basis of {ω of degree k and weight w : ω_i∧ω = 0 for all i}, modulo the
/// ideal, written with normal-form coefficients.
std::vector<DiffForm> wedge_annihilator(const std::vector<DiffForm>& multipliers, int k, int weight,
                                        const std::vector<MultiPoly>& ideal);

}  // namespace jring
