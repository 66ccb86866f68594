#pragma once

#include "jring/forms.hpp"
#include "jring/linalg.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace jring {

enum class MapKind { boundary_full, boundary_h, boundary_v, theta };

/// Column j is the coordinate vector of op(source[j]) in `target`.
/// Throws ShapeError if an image leaves the target slice.
SparseMatrix matrix_of(const std::function<DiffForm(const DiffForm&)>& op, const BasisSlice& source,
                       const BasisSlice& target, FieldSpec field);

/// Same for the built-in maps; the slices must have the bidegrees the map
/// dictates: (k+1, q, p+1) for the boundaries, (k−1, q, p) for θ.
SparseMatrix matrix_of(MapKind kind, const BasisSlice& source, const BasisSlice& target, const ProblemInput& input);

/// Matrix of ∂ from slice (k, q, p) to (k+1, q, p+1).
SparseMatrix boundary_matrix(const ProblemInput& input, int k, int q, int p);

/// rank of ∂ leaving slice (k, q, p); 0 when either side is empty.
std::size_t boundary_rank(const ProblemInput& input, int k, int q, int p);

/// dim H^k(Ω•, ∂)^{(q,p)}.
std::size_t cohomology_dim(const ProblemInput& input, int k, int q, int p);

struct SliceKey {
  int k = 0;
  int q = 0;
  int p = 0;
  friend auto operator<=>(const SliceKey&, const SliceKey&) = default;
};

struct CohomologyReport {
  std::string input_hash;
  FieldSpec field;
  std::map<SliceKey, std::size_t> dims;
  /// Wall time per slice, seconds (the two ranks it depends on).
  std::map<SliceKey, double> seconds;

  std::size_t at(int k, int q, int p) const;
};

/// Dimensions for every requested slice.  Each boundary rank is computed
/// once and shared across the slices on either side of it.  `threads`
/// <= 0 means hardware concurrency; the result does not depend on it.
CohomologyReport compute_cohomology(const ProblemInput& input, const std::vector<SliceKey>& slices, int threads = 0);

/// Degree-i piece of the Koszul complex on gens: C^k(i) = ⊕_{|S|=k} K[x]_{i + Σ_S d}.
std::size_t koszul_chain_dim(const std::vector<MultiPoly>& gens, int k, int i);
SparseMatrix koszul_matrix(const std::vector<MultiPoly>& gens, int k, int i);
std::size_t koszul_cohomology_dim(const std::vector<MultiPoly>& gens, int k, int i);

/// Runs fn(0..count-1) on up to `threads` workers (<= 0: hardware concurrency).
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace jring
