#include "jring/verify.hpp"

#include "jring/division.hpp"
#include "jring/hilbert.hpp"

#include <algorithm>

namespace jring {

std::string to_string(VerifyMode mode) {
  return mode == VerifyMode::complete_intersection ? "complete-intersection" : "no-common-zero";
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

std::string slice_name(int k, int p) { return "H^" + std::to_string(k) + "(0," + std::to_string(p) + ")"; }

void add_check(std::vector<Check>& out, std::string name, long expected, long got) {
  out.push_back({std::move(name), std::to_string(expected), std::to_string(got), expected == got});
}

void add_flag(std::vector<Check>& out, std::string name, bool got, const char* yes = "yes", const char* no = "no") {
  out.push_back({std::move(name), yes, got ? yes : no, got});
}

}  // namespace

DiffForm middle_witness(const ProblemInput& input) {
  const int n = input.n(), r = input.r();
  DiffForm w = DiffForm::one(input.field(), n, r);
  for (const auto& f : input.polys()) w = wedge(w, differential(f, n, r));
  for (int j = 0; j < r; ++j) w = wedge(w, DiffForm::dy(input.field(), n, r, j));
  return w;
}

bool is_nonzero_class(const DiffForm& w, int p, const ProblemInput& input) {
  if (w.is_zero()) return false;
  if (!boundary(w, input).is_zero()) return false;
  const int k = w.degree();
  BasisSlice slice = basis(k, 0, p, input);
  auto c = coordinates(w, slice, input.field());
  if (k == 0 || p == 0) return true;
  BasisSlice below = basis(k - 1, 0, p - 1, input);
  SparseMatrix in = matrix_of(MapKind::boundary_full, below, slice, input);
  std::size_t before = rank(in);
  SparseVec column;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) column.emplace_back(i, c[i]);
  in.append_column(column);
  return rank(in) == before + 1;
}

DivisionStats division_round_trip(const ProblemInput& input, int k, int weight, int m_max) {
  const int n = input.n();
  std::vector<DiffForm> multipliers;
  for (const auto& f : input.polys()) multipliers.push_back(differential(f, n, 0));
  std::optional<MultiPoly> g;
  for (auto& m : jacobian_minor_ideal(input))
    if (!m.is_zero()) {
      g = m;
      break;
    }
  if (!g) throw HypothesisError("all Jacobian minors vanish");
  DivisionStats stats;
  auto kernel = wedge_annihilator(multipliers, k, weight, input.polys());
  stats.kernel_dim = kernel.size();
  DivisionOptions plain;
  plain.shape = DivisionShape::full_product;
  plain.over = DivisionRing::quotient;
  plain.ideal = input.polys();
  DivisionOptions saturated = plain;
  saturated.saturation = g;
  saturated.m_max = m_max;
  for (const auto& omega : kernel) {
    auto sol = wedge_division_solve(omega, multipliers, plain);
    if (sol) {
      DiffForm back = division_combination(multipliers, *sol);
      if (back.degree() == omega.degree() && reduce_form(back - omega, input.polys()).is_zero()) ++stats.solved;
    }
    auto sat = wedge_division_solve(omega, multipliers, saturated);
    if (sat && sat->m == 0) ++stats.saturation_zero;
  }
  return stats;
}

VerifyReport verify_predictions(const ProblemInput& input, VerifyMode mode, const std::optional<Certificate>& certificate,
                          const VerifyOptions& options) {
  const int n = input.n(), r = input.r();
  const CertificateKind needed =
      mode == VerifyMode::complete_intersection ? CertificateKind::smooth_ci : CertificateKind::no_common_zero;
  if (!certifies(certificate, input, needed))
    throw HypothesisError("hypothesis not certified: " + to_string(needed) + " certificate required");
  if (mode == VerifyMode::complete_intersection && r >= n) throw HypothesisError("complete-intersection mode needs r < n");

  IntRange ks = options.k.value_or(IntRange{0, n + r});
  IntRange ps = options.p.value_or(IntRange{0, n});
  std::vector<SliceKey> keys;
  for (int k = std::max(0, ks.lo); k <= std::min(ks.hi, n + r); ++k)
    for (int p = std::max(0, ps.lo); p <= ps.hi; ++p) keys.push_back({k, 0, p});

  VerifyReport report;
  report.mode = mode;
  report.cohomology = compute_cohomology(input, keys, options.threads);
  auto dim = [&](int k, int p) { return static_cast<long>(report.cohomology.at(k, 0, p)); };
  auto have = [&](int k, int p) { return report.cohomology.dims.count({k, 0, p}) != 0; };
  auto& checks = report.checks;

  if (mode == VerifyMode::no_common_zero) {
    for (const auto& s : keys) {
      long expected = s.k == 2 * n && s.p == n ? 1 : 0;
      add_check(checks, slice_name(s.k, s.p), expected, dim(s.k, s.p));
    }
    if (!input.degree_product_vanishes()) {
      DiffForm x = xi(n, input);
      add_flag(checks, "xi_n is a cocycle", boundary(x, input).is_zero());
      add_flag(checks, "xi_n spans " + slice_name(2 * n, n), is_nonzero_class(x, n, input), "nonzero", "zero");
      if (r == n) {
        MultiPoly det = jacobian_minor_ideal(input).front();
        add_flag(checks, "Jacobian determinant outside the ideal", !ideal_membership(det, input.polys()));
      }
    }
    return report;
  }

  const int top = n + r;
  const bool exceptional = input.degree_product_vanishes() && top % 2 == 0;
  const int mid = top / 2;
  for (const auto& s : keys) {
    if (s.k == 2 * r && r < n - 1) {
      add_check(checks, slice_name(s.k, s.p) + " middle class", s.p == r ? 1 : 0, dim(s.k, s.p));
    } else if (s.k == top) {
      if (s.p < r || s.p >= n) add_check(checks, slice_name(s.k, s.p) + " vanishes", 0, dim(s.k, s.p));
    } else if (s.k != top - 1 && s.k != 2 * r) {
      add_check(checks, slice_name(s.k, s.p) + " vanishes", 0, dim(s.k, s.p));
    }
  }
  if (r < n - 1 && ks.contains(2 * r) && ps.contains(r))
    add_flag(checks, "df-dy witness spans " + slice_name(2 * r, r), is_nonzero_class(middle_witness(input), r, input),
             "nonzero", "zero");
  for (int p = std::max(0, ps.lo); p <= ps.hi; ++p) {
    if (!have(top, p) || !have(top - 1, p)) continue;
    long offset = 0;
    if (r == n - 1) offset = p == r ? 1 : 0;
    else if (exceptional) offset = p == mid - 1 ? 1 : (p == mid ? -1 : 0);
    add_check(checks, slice_name(top - 1, p) + " - " + slice_name(top, p), offset, dim(top - 1, p) - dim(top, p));
  }
  IntPoly H = closed_form_H(n, input.degrees());
  for (int p = std::max(r, ps.lo); p <= std::min(n - 1, ps.hi); ++p) {
    if (!have(top, p)) continue;
    long adjust = exceptional && p == mid ? 1 : 0;
    add_check(checks, "h_" + std::to_string(p) + " against closed form", H.coefficient(p).get_si(), dim(top, p) - adjust);
  }

  if (options.division.value_or(n + r <= 5)) {
    const int max_d = *std::max_element(input.degrees().begin(), input.degrees().end());
    for (int k = 0; k <= n - 2; ++k)
      for (int w = k; w <= k + max_d; ++w) {
        DivisionStats st = division_round_trip(input, k, w, options.m_max);
        std::string expected = std::to_string(st.kernel_dim) + " solved, m = 0 for " + std::to_string(st.kernel_dim);
        std::string got = std::to_string(st.solved) + " solved, m = 0 for " + std::to_string(st.saturation_zero);
        checks.push_back({"df-product division, " + std::to_string(k) + "-forms of weight " + std::to_string(w),
                          expected, got, st.failures() == 0});
      }
  }
  return report;
}

}  // namespace jring
