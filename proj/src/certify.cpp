#include "jring/certify.hpp"

#include "jring/quotient.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace jring {

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::m_primary: return "m-primary";
    case CertificateKind::smooth_ci: return "smooth-ci";
    case CertificateKind::no_common_zero: return "no-common-zero";
  }
  return "?";
}

namespace {

MultiPoly determinant(const std::vector<std::vector<MultiPoly>>& m, FieldSpec field, int nvars) {
  const std::size_t size = m.size();
  if (size == 1) return m[0][0];
  MultiPoly det(field, nvars);
  for (std::size_t c = 0; c < size; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<MultiPoly>> minor;
    for (std::size_t r = 1; r < size; ++r) {
      std::vector<MultiPoly> row;
      for (std::size_t j = 0; j < size; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(std::move(row));
    }
    MultiPoly term = m[0][c] * determinant(minor, field, nvars);
    if (c % 2) det -= term;
    else det += term;
  }
  return det;
}

}  // namespace

std::vector<MultiPoly> jacobian_minor_ideal(const ProblemInput& input) {
  const int n = input.n(), r = input.r();
  if (r > n) throw ShapeError("Jacobian minors need r <= n");
  std::vector<std::vector<MultiPoly>> jac;
  for (const auto& f : input.polys()) {
    std::vector<MultiPoly> row;
    for (int i = 0; i < n; ++i) row.push_back(partial_derivative(f, i));
    jac.push_back(std::move(row));
  }
  std::vector<MultiPoly> out;
  std::vector<int> cols(r);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == r) {
      std::vector<std::vector<MultiPoly>> m;
      for (int i = 0; i < r; ++i) {
        std::vector<MultiPoly> row;
        for (int c : cols) row.push_back(jac[i][c]);
        m.push_back(std::move(row));
      }
      out.push_back(determinant(m, input.field(), n));
      return;
    }
    for (int c = start; c <= n - (r - pos); ++c) {
      cols[pos] = c;
      rec(pos + 1, c + 1);
    }
  };
  rec(0, 0);
  return out;
}

std::optional<Certificate> m_primary_certificate(const std::vector<MultiPoly>& gens, int nvars, FieldSpec field,
                                                 int bound) {
  if (bound < 0) throw Error("certificate bound must be nonnegative");
  std::size_t nonzero = 0;
  for (const auto& g : gens) nonzero += !g.is_zero();
  for (int N = 0; N <= bound; ++N)
    if (quotient_dimension(gens, nvars, field, N) == 0)
      return Certificate{CertificateKind::m_primary, N, nonzero, bound, field, {}};
  return std::nullopt;
}

namespace {

/// An m-primary ideal generated in degrees <= D contains n general forms of
/// degree D (after a field extension, which leaves dimensions unchanged), so
/// its quotient vanishes from degree n(D − 1) + 1 on.
int vanishing_degree_bound(int n, int max_degree) { return n * (std::max(max_degree, 1) - 1) + 1; }

}  // namespace

int default_smooth_ci_bound(const ProblemInput& input) {
  const int sum = std::accumulate(input.degrees().begin(), input.degrees().end(), 0);
  const int minor_degree = sum - input.r();
  const int max_d = *std::max_element(input.degrees().begin(), input.degrees().end());
  return std::max(sum + input.n(), vanishing_degree_bound(input.n(), std::max(max_d, minor_degree)));
}

int default_no_common_zero_bound(const ProblemInput& input) {
  const int sum = std::accumulate(input.degrees().begin(), input.degrees().end(), 0);
  const int max_d = *std::max_element(input.degrees().begin(), input.degrees().end());
  return std::max(sum, vanishing_degree_bound(input.n(), max_d));
}

std::optional<Certificate> smooth_ci_certificate(const ProblemInput& input, std::optional<int> bound) {
  if (input.r() > input.n()) return std::nullopt;
  std::vector<MultiPoly> gens = input.polys();
  for (auto& m : jacobian_minor_ideal(input)) gens.push_back(std::move(m));
  auto c = m_primary_certificate(gens, input.n(), input.field(), bound.value_or(default_smooth_ci_bound(input)));
  if (!c) return c;
  c->kind = CertificateKind::smooth_ci;
  c->input_hash = input.hash();
  return c;
}

std::optional<Certificate> no_common_zero_certificate(const ProblemInput& input, std::optional<int> bound) {
  auto c = m_primary_certificate(input.polys(), input.n(), input.field(),
                                 bound.value_or(default_no_common_zero_bound(input)));
  if (!c) return c;
  c->kind = CertificateKind::no_common_zero;
  c->input_hash = input.hash();
  return c;
}

bool ideal_membership(const MultiPoly& h, const std::vector<MultiPoly>& gens) {
  if (h.is_zero()) return true;
  auto degree = h.homogeneous_degree();
  if (!degree) throw Error("membership test needs a homogeneous polynomial");
  return quotient_slice(gens, h.nvars(), h.field(), *degree).normal_form(h).empty();
}

bool certifies(const std::optional<Certificate>& c, const ProblemInput& input, CertificateKind kind) {
  return c && c->kind == kind && c->field == input.field() && c->input_hash == input.hash();
}

}  // namespace jring
