#pragma once

#include "jring/problem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jring {

enum class CertificateKind { m_primary, smooth_ci, no_common_zero };

std::string to_string(CertificateKind kind);

/// Every monomial of degree `degree` (hence of every higher degree) lies in
/// the ideal of the certified generators.
struct Certificate {
  CertificateKind kind = CertificateKind::m_primary;
  int degree = 0;
  std::size_t generators = 0;
  int bound = 0;
  FieldSpec field;
  std::string input_hash;  // empty for bare generator lists
};

/// All r×r minors of (∂f_i/∂x_j), in lexicographic column-subset order.
/// Zero minors are kept.  Throws ShapeError if r > n.
std::vector<MultiPoly> jacobian_minor_ideal(const ProblemInput& input);

/// Least N <= bound with (K[x]/(gens))_N = 0, or nullopt.
std::optional<Certificate> m_primary_certificate(const std::vector<MultiPoly>& gens, int nvars, FieldSpec field,
                                                 int bound);

/// max(Σd + n, n(D − 1) + 1) with D the largest generator degree (minors
/// included): with the second term a NONE at the default bound is conclusive.
int default_smooth_ci_bound(const ProblemInput& input);
/// max(Σd, n(max d − 1) + 1).
int default_no_common_zero_bound(const ProblemInput& input);

/// f together with the Jacobian minors is m-primary: the f's form a regular
/// sequence cutting out a smooth complete intersection.
std::optional<Certificate> smooth_ci_certificate(const ProblemInput& input, std::optional<int> bound = std::nullopt);

/// The f's alone are m-primary: no common zero in projective space.
std::optional<Certificate> no_common_zero_certificate(const ProblemInput& input,
                                                      std::optional<int> bound = std::nullopt);

/// Whether h lies in the ideal (gens); exact for homogeneous h.
bool ideal_membership(const MultiPoly& h, const std::vector<MultiPoly>& gens);

/// Certificate was issued for this input and has the given kind.
bool certifies(const std::optional<Certificate>& c, const ProblemInput& input, CertificateKind kind);

}  // namespace jring
