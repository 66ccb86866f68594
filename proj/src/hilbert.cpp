#include "jring/hilbert.hpp"

#include <functional>
#include <mutex>

namespace jring {

namespace {

mpz_class factorial(int n) {
  static std::mutex lock;
  static std::vector<mpz_class> memo{1};
  std::lock_guard<std::mutex> g(lock);
  while (static_cast<int>(memo.size()) <= n) memo.push_back(memo.back() * static_cast<unsigned long>(memo.size()));
  return memo[n];
}

mpz_class binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

int sign(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

void check_degrees(int n, const std::vector<int>& degrees) {
  const int r = static_cast<int>(degrees.size());
  if (r < 1 || r >= n) throw HypothesisError("the closed form needs 1 <= r < n");
  for (int d : degrees)
    if (d < 1) throw HypothesisError("degrees must be positive");
}

/// Every e with all e_i >= 1 and Σe <= limit, in lexicographic order.
void for_each_exponent(int r, int limit, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> e(r, 1);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == r) {
      fn(e);
      return;
    }
    for (int v = 1; v <= left - (r - pos - 1); ++v) {
      e[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  if (limit >= r) rec(0, limit);
}

IntPoly to_integer(const RatPoly& p) {
  IntPoly out;
  for (const auto& [i, v] : p.coefficients()) {
    if (v.get_den() != 1) throw ArithmeticError("closed form produced a non-integral coefficient");
    out.set(i, v.get_num());
  }
  return out;
}

RatPoly to_rational(const IntPoly& p) {
  RatPoly out;
  for (const auto& [i, v] : p.coefficients()) out.set(i, mpq_class(v));
  return out;
}

RatPoly divide_exactly(RatPoly p, int times) {
  for (int i = 0; i < times; ++i) {
    mpq_class rem;
    p = p.divided_by_one_minus_t(rem);
    if (rem != 0) throw ArithmeticError("polynomial is not divisible by (1 - t)");
  }
  return p;
}

RatPoly product_of_p(const std::vector<int>& e) {
  RatPoly prod(mpq_class(1));
  for (int ei : e) prod = prod * to_rational(eulerian_p(ei));
  return prod;
}

}  // namespace

IntPoly eulerian_p(int e, bool tilde) {
  if (e < 0) throw ShapeError("eulerian_p needs e >= 0");
  IntPoly p = tilde ? IntPoly::monomial(1, 1) : IntPoly(1);
  const IntPoly t_minus_t2 = IntPoly::monomial(1, 1) - IntPoly::monomial(2, 1);
  for (int i = 1; i <= e; ++i) p = t_minus_t2 * p.derivative() + p.shifted(1) * mpz_class(i);
  return p;
}

mpq_class coeff_a(int l, const std::vector<int>& e, const std::vector<int>& degrees, int n) {
  if (e.size() != degrees.size()) throw ShapeError("exponent and degree vectors differ in length");
  int E = 0;
  for (int ei : e) {
    if (ei < 0) throw ShapeError("negative exponent");
    E += ei;
  }
  if (E > n - 1) throw ShapeError("exponent sum exceeds n - 1");
  // Elementary symmetric functions of l-(n-1), ..., l-1.
  std::vector<mpz_class> s(n, 0);
  s[0] = 1;
  for (int i = 1; i <= n - 1; ++i) {
    mpz_class v = l - i;
    for (int j = i; j >= 1; --j) s[j] += s[j - 1] * v;
  }
  mpz_class num = factorial(E) * s[n - 1 - E];
  mpz_class den = factorial(n - 1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    mpz_class dp;
    mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(degrees[i]), static_cast<unsigned long>(e[i]));
    num *= dp;
    den *= factorial(e[i]);
  }
  mpq_class a(num * sign(n - 1 - E), den);
  a.canonicalize();
  return a;
}

GQuotient g_poly(const std::vector<int>& e, const std::vector<int>& degrees, int n) {
  int E = 0;
  for (int ei : e) {
    if (ei < 1) throw ShapeError("g-polynomials need every e_i >= 1");
    E += ei;
  }
  if (E > n - 1) throw ShapeError("exponent sum exceeds n - 1");
  GQuotient out;
  for (int l = 0; l <= n; ++l)
    out.g.add(n - l, mpq_class(binomial(n, l) * sign(n - l)) * coeff_a(l, e, degrees, n));
  out.quotient = divide_exactly(out.g, E + 1);
  return out;
}

IntPoly closed_form_H(int n, const std::vector<int>& degrees) {
  check_degrees(n, degrees);
  const int r = static_cast<int>(degrees.size());
  RatPoly h = RatPoly::range(r, n - 1) * mpq_class(sign(n - r));
  for_each_exponent(r, n - 1, [&](const std::vector<int>& e) { h += g_poly(e, degrees, n).quotient * product_of_p(e); });
  return to_integer(h);
}

mpz_class H_at_one(int n, const std::vector<int>& degrees) {
  check_degrees(n, degrees);
  const int r = static_cast<int>(degrees.size());
  // compositions[l] = Σ_{i_1+…+i_r = l, i_j >= 1} ∏ d_j^{i_j}
  std::vector<mpz_class> compositions(n, 0);
  compositions[0] = 1;
  for (int d : degrees) {
    std::vector<mpz_class> next(n, 0);
    for (int l = 0; l < n; ++l) {
      if (compositions[l] == 0) continue;
      mpz_class power = d;
      for (int i = 1; l + i < n; ++i, power *= d) next[l + i] += compositions[l] * power;
    }
    compositions = std::move(next);
  }
  mpz_class sum = 0;
  for (int l = r; l <= n - 1; ++l) sum += binomial(n, l + 1) * compositions[l] * sign(l + 1);
  return mpz_class(sign(n - r) * (n - r)) + sum * sign(n);
}

IntPoly euler_series(int n, const std::vector<int>& degrees) {
  check_degrees(n, degrees);
  const int r = static_cast<int>(degrees.size());
  RatPoly series = RatPoly::monomial(r, mpq_class(sign(n + r)));
  for_each_exponent(r, n - 1, [&](const std::vector<int>& e) {
    int E = 0;
    for (int ei : e) E += ei;
    RatPoly inner;
    for (int l = 0; l <= n; ++l)
      inner.add(n - l, mpq_class(binomial(n, l) * sign(n - l)) * coeff_a(l, e, degrees, n));
    series += divide_exactly(inner * product_of_p(e), E);
  });
  IntPoly result = to_integer(series);
  IntPoly h = closed_form_H(n, degrees);
  IntPoly expected = h - h.shifted(1) + IntPoly::monomial(n, sign(n - r));
  if (!(result == expected)) throw ArithmeticError("alternating-sum series disagrees with (1 - t)H(t) + (-1)^(n-r) t^n");
  return result;
}

bool symmetry_check(const IntPoly& h, int n, int r) { return h.reflected(n + r - 1) == h; }

std::vector<mpz_class> product_hilbert_series(int n, const std::vector<int>& degrees, int N) {
  if (N < 0) return {};
  std::vector<mpz_class> c(N + 1, 0);
  c[0] = 1;
  for (int d : degrees) {
    if (d < 1) throw ShapeError("degrees must be positive");
    for (int i = N; i >= d; --i) c[i] -= c[i - d];
  }
  for (int k = 0; k < n; ++k)
    for (int i = 1; i <= N; ++i) c[i] += c[i - 1];
  return c;
}

HodgeTable hodge_table(const ProblemInput& input, const std::optional<Certificate>& certificate) {
  if (!certifies(certificate, input, CertificateKind::smooth_ci))
    throw HypothesisError("hodge table needs a smooth complete intersection certificate");
  const int n = input.n(), r = input.r();
  if (r >= n) throw HypothesisError("hodge table needs r < n");
  HodgeTable t;
  t.n = n;
  t.r = r;
  t.degrees = input.degrees();
  t.H = closed_form_H(n, t.degrees);
  t.exceptional = input.degree_product_vanishes() && (n + r) % 2 == 0;
  const int mid = (n + r) / 2;
  for (int p = r; p <= n - 1; ++p) t.h[p] = t.H.coefficient(p);
  for (int p = 0; p <= n; ++p) {
    mpz_class top = 0;
    if (p >= r && p <= n - 1) top = t.h[p] + (t.exceptional && p == mid ? 1 : 0);
    mpz_class offset = 0;
    if (r == n - 1) offset = p == r ? 1 : 0;
    else if (t.exceptional) offset = p == mid - 1 ? 1 : (p == mid ? -1 : 0);
    t.top[p] = top;
    t.below_top[p] = top + offset;
  }
  return t;
}

}  // namespace jring
