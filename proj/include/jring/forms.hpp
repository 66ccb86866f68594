#pragma once

#include "jring/problem.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace jring {

/// Bit i (< n) is dx_{i+1}, bit n + j is dy_{j+1}.  The canonical order
/// of a wedge word is ascending bit order, so every dx precedes every dy.
using WedgeMask = std::uint64_t;

/// 0-based index lists of a wedge word.
struct WedgeWord {
  std::vector<int> dx;
  std::vector<int> dy;
};

WedgeMask to_mask(const WedgeWord& w, int n);
WedgeWord from_mask(WedgeMask m, int n);
int word_degree(WedgeMask m);

/// One monomial form x^a y^b dx_I ∧ dy_J.  `exps` holds a then b.
struct FormKey {
  Exponents exps;
  WedgeMask word = 0;
  friend bool operator==(const FormKey&, const FormKey&) = default;
};

struct FormKeyLess {
  bool operator()(const FormKey& a, const FormKey& b) const;
};

struct FormKeyHash {
  std::size_t operator()(const FormKey& k) const noexcept;
};

struct Bidegree {
  int q = 0;
  int p = 0;
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

/// deg_1: +1 per x_i and dx_i, −d_j per y_j and dy_j; deg_2: +1 per y_j and dy_j.
Bidegree bidegree_of(const FormKey& key, int n, std::span<const int> degrees);

/// Sparse k-form over K[x_1..x_n, y_1..y_r].  A zero form is compatible
/// with every degree in sums and comparisons (θ of a 0-form and ∂ of a
/// top form are zero forms kept in the nearest valid degree).
class DiffForm {
 public:
  using TermMap = std::map<FormKey, Scalar, FormKeyLess>;

  DiffForm(FieldSpec field, int n, int r, int k);

  static DiffForm one(FieldSpec field, int n, int r);
  /// 0-form from a polynomial in n or n + r variables.
  static DiffForm function(const MultiPoly& f, int n, int r);
  static DiffForm dx(FieldSpec field, int n, int r, int i);
  static DiffForm dy(FieldSpec field, int n, int r, int j);
  static DiffForm monomial(FieldSpec field, int n, int r, const FormKey& key, const Scalar& c);

  FieldSpec field() const { return field_; }
  int n() const { return n_; }
  int r() const { return r_; }
  int degree() const { return k_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(const FormKey& key) const;
  void add_term(const FormKey& key, const Scalar& c);

  /// Common bidegree of all terms; nullopt for zero or mixed forms.
  std::optional<Bidegree> bidegree(std::span<const int> degrees) const;

  DiffForm& operator+=(const DiffForm& o);
  DiffForm& operator-=(const DiffForm& o);
  DiffForm operator-() const;
  DiffForm scaled(const Scalar& c) const;
  /// Multiplication by a polynomial in n or n + r variables.
  DiffForm multiplied(const MultiPoly& f) const;

  friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
  friend DiffForm operator-(DiffForm a, const DiffForm& b) { return a -= b; }
  friend bool operator==(const DiffForm& a, const DiffForm& b);

  std::string to_string() const;

 private:
  void check_compatible(const DiffForm& o) const;

  FieldSpec field_;
  int n_;
  int r_;
  int k_;
  TermMap terms_;
};

DiffForm wedge(const DiffForm& a, const DiffForm& b);

/// Exterior derivative of a polynomial in n or n + r variables.
DiffForm differential(const MultiPoly& f, int n, int r);

/// dF = Σ y_j df_j + Σ f_j dy_j.
DiffForm dF_of(const ProblemInput& input);

enum class BoundaryPart { full, horizontal, vertical };

/// The 1-form that ∂ (or ∂_h, ∂_v) wedges with from the left.
DiffForm boundary_multiplier(const ProblemInput& input, BoundaryPart part);
DiffForm boundary(const DiffForm& w, const ProblemInput& input, BoundaryPart part = BoundaryPart::full);

/// Contraction with x_i ∂/∂x_i − d_j y_j ∂/∂y_j; depends only on the degrees.
DiffForm theta(const DiffForm& w, std::span<const int> degrees);
DiffForm theta(const DiffForm& w, const ProblemInput& input);

/// ξ_k for 1 <= k <= r: Σ_{|S|=k} (∏_{i∉S} d_i) df_S ∧ dy_S; zero when 2k > n + r.
DiffForm xi(int k, const ProblemInput& input);

/// Ordered, duplicate-free monomial basis of (Ω^k)^{(q,p)}.
class BasisSlice {
 public:
  BasisSlice(int k, int q, int p, int n, int r, std::vector<FormKey> elements);

  int k() const { return k_; }
  int q() const { return q_; }
  int p() const { return p_; }
  int n() const { return n_; }
  int r() const { return r_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const std::vector<FormKey>& elements() const { return elements_; }
  const FormKey& operator[](std::size_t i) const { return elements_[i]; }
  std::optional<std::size_t> index_of(const FormKey& key) const;

 private:
  int k_, q_, p_, n_, r_;
  std::vector<FormKey> elements_;
  std::unordered_map<FormKey, std::size_t, FormKeyHash> index_;
};

BasisSlice basis(int k, int q, int p, int n, std::span<const int> degrees);
BasisSlice basis(int k, int q, int p, const ProblemInput& input);

/// dim (Ω^k)^{(q,p)} by binomial counting, without enumeration.
std::size_t slice_dimension(int k, int q, int p, int n, std::span<const int> degrees);

/// Coordinates of w in the slice; throws ShapeError if w leaves it.
std::vector<Scalar> coordinates(const DiffForm& w, const BasisSlice& slice, FieldSpec field);
DiffForm from_coordinates(const std::vector<Scalar>& c, const BasisSlice& slice, FieldSpec field);

/// Some ζ in slice (k, q, p) with θ(ζ) = η, or nullopt.
std::optional<DiffForm> theta_preimage(const DiffForm& eta, int k, int q, int p, const ProblemInput& input);

}  // namespace jring
