#pragma once

#include "jring/certify.hpp"
#include "jring/homology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jring {

/// complete_intersection: r < n and a smooth-CI certificate; the vanishing,
/// middle-class and H^{n+r−1}/H^{n+r} offset laws at q = 0.
/// no_common_zero: a no-common-zero certificate; only H^{2n}(0,n) survives.
enum class VerifyMode { complete_intersection, no_common_zero };

std::string to_string(VerifyMode mode);

struct Check {
  std::string name;
  std::string expected;
  std::string got;
  bool pass = false;
};

struct IntRange {
  int lo = 0;
  int hi = -1;
  bool contains(int v) const { return v >= lo && v <= hi; }
};

struct VerifyOptions {
  std::optional<IntRange> k;  // default 0..n+r
  std::optional<IntRange> p;  // default 0..n
  int threads = 0;
  int m_max = 10;
  /// Wedge-division round trips on annihilator bases; default: when n + r <= 5.
  std::optional<bool> division;
};

struct VerifyReport {
  VerifyMode mode = VerifyMode::complete_intersection;
  CohomologyReport cohomology;
  std::vector<Check> checks;
  bool passed() const;
};

/// Throws HypothesisError when the certificate is missing, of the wrong
/// kind or for another input, or when r >= n in complete-intersection mode.
VerifyReport verify_predictions(const ProblemInput& input, VerifyMode mode, const std::optional<Certificate>& certificate,
                          const VerifyOptions& options = {});

/// ∂w = 0 and w is not in the image of ∂ from the slice below: a nonzero
/// class in H^k(0,p).  w must lie in slice (k, 0, p).
bool is_nonzero_class(const DiffForm& w, int p, const ProblemInput& input);

/// df_1∧…∧df_r∧dy_1∧…∧dy_r.
DiffForm middle_witness(const ProblemInput& input);

struct DivisionStats {
  std::size_t kernel_dim = 0;
  std::size_t solved = 0;
  std::size_t saturation_zero = 0;
  std::size_t failures() const { return 2 * kernel_dim - solved - saturation_zero; }
};

/// For every basis element ω of the annihilator of all df_i∧ on k-forms of
/// the given weight over K[x]/(f): solve ω = df_1∧…∧df_r∧α, check the
/// product exactly, and run the saturation search with g = the first
/// nonzero Jacobian minor (it must stop at m = 0).
DivisionStats division_round_trip(const ProblemInput& input, int k, int weight, int m_max);

}  // namespace jring
