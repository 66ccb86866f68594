#pragma once

#include "jring/certify.hpp"
#include "jring/problem.hpp"
#include "jring/tpoly.hpp"

#include <map>
#include <optional>
#include <vector>

namespace jring {

/// p_e (plain) or p̃_e (tilde): (t d/dt)^e applied to 1/(1−t), resp.
/// t/(1−t), has numerator p over (1−t)^{e+1}.
IntPoly eulerian_p(int e, bool tilde = false);

/// Coefficient of b^e in the polynomial counting degree-(Σ b_j d_j − l)
/// monomials in n variables.  Throws ShapeError if Σe > n−1.
mpq_class coeff_a(int l, const std::vector<int>& e, const std::vector<int>& degrees, int n);

struct GQuotient {
  RatPoly g;
  RatPoly quotient;  // g / (1−t)^{E+1}
};

/// g_e(t) = Σ_l (−1)^{n−l} C(n,l) a^{(l)}_e t^{n−l} and its exact quotient
/// by (1−t)^{E+1}.  Throws ArithmeticError if the division is not exact.
GQuotient g_poly(const std::vector<int>& e, const std::vector<int>& degrees, int n);

/// Primitive Hodge polynomial of a smooth complete intersection of the
/// given degrees in P^{n−1}; throws HypothesisError unless 1 <= r < n.
IntPoly closed_form_H(int n, const std::vector<int>& degrees);

/// Σ h_p from the alternating binomial formula over compositions.
mpz_class H_at_one(int n, const std::vector<int>& degrees);

/// Hilbert series of the q = 0 complex from the post-cancellation sum;
/// throws ArithmeticError unless it equals (1−t)H(t) + (−1)^{n−r} t^n.
IntPoly euler_series(int n, const std::vector<int>& degrees);

/// Coefficient of t^p equals that of t^{n+r−1−p} for all p.
bool symmetry_check(const IntPoly& h, int n, int r);

/// First N+1 coefficients of ∏(1−t^{d_i}) / (1−t)^n.
std::vector<mpz_class> product_hilbert_series(int n, const std::vector<int>& degrees, int N);

struct HodgeTable {
  int n = 0;
  int r = 0;
  std::vector<int> degrees;
  IntPoly H;
  /// d_1⋯d_r = 0 in K and n + r even.
  bool exceptional = false;
  /// h_p for p = r..n−1.
  std::map<int, mpz_class> h;
  /// Implied dim H^{n+r}(0,p) and dim H^{n+r−1}(0,p) for p = 0..n.
  std::map<int, mpz_class> top;
  std::map<int, mpz_class> below_top;
};

/// Needs a smooth-CI certificate for this input (HypothesisError otherwise).
HodgeTable hodge_table(const ProblemInput& input, const std::optional<Certificate>& certificate);

}  // namespace jring
