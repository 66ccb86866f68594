#include "doctest.h"
#include "support.hpp"

#include "jring/certify.hpp"
#include "jring/division.hpp"
#include "jring/verify.hpp"

using namespace jt;

namespace {

std::vector<DiffForm> differentials(const ProblemInput& in) {
  std::vector<DiffForm> out;
  for (const auto& f : in.polys()) out.push_back(differential(f, in.n(), 0));
  return out;
}

DiffForm x_monomial(FieldSpec f, int n, Exponents e, WedgeMask word) {
  return DiffForm::monomial(f, n, 0, FormKey{std::move(e), word}, Scalar(f, 1));
}

}  // namespace

TEST_CASE("weights of x-only forms") {
  FieldSpec f = Q();
  CHECK(form_weight(x_monomial(f, 3, {2, 0, 0}, 0b011)) == 4);
  CHECK_FALSE(form_weight(DiffForm(f, 3, 0, 1)).has_value());
  DiffForm mixed = x_monomial(f, 3, {1, 0, 0}, 0b001) + x_monomial(f, 3, {0, 0, 0}, 0b010);
  CHECK_FALSE(form_weight(mixed).has_value());
}

TEST_CASE("single multiplier over the polynomial ring") {
  Gen g(41);
  ProblemInput in = load("fermat_cubic.sys");
  auto mult = differentials(in);
  for (int trial = 0; trial < 20; ++trial) {
    DiffForm beta = g.x_form(in.field(), 3, 1, g.uniform(1, 3), g.uniform(1, 3));
    DiffForm omega = wedge(mult[0], beta);
    if (omega.is_zero()) continue;
    DivisionOptions opt;
    opt.shape = DivisionShape::saito;
    auto sol = wedge_division_solve(omega, mult, opt);
    REQUIRE(sol.has_value());
    CHECK(sol->m == 0);
    CHECK(division_combination(mult, *sol) == omega);
  }
}

TEST_CASE("zero divides trivially") {
  ProblemInput in = load("two_quadrics.sys");
  auto mult = differentials(in);
  for (auto shape : {DivisionShape::saito, DivisionShape::full_product}) {
    DivisionOptions opt;
    opt.shape = shape;
    auto sol = wedge_division_solve(DiffForm(in.field(), 4, 0, 2), mult, opt);
    REQUIRE(sol.has_value());
    CHECK(sol->m == 0);
    for (const auto& a : sol->alphas) CHECK(a.is_zero());
  }
}

TEST_CASE("full product round trip modulo a complete intersection") {
  Gen g(42);
  for (const auto& name : {"fermat_cubic.sys", "two_quadrics.sys", "two_conics.sys"}) {
    ProblemInput in = load(name);
    auto mult = differentials(in);
    DiffForm product = DiffForm::one(in.field(), in.n(), 0);
    for (const auto& m : mult) product = wedge(product, m);
    int solved = 0;
    for (int trial = 0; trial < 15; ++trial) {
      int k = g.uniform(0, in.n() - in.r());
      DiffForm gamma = g.x_form(in.field(), in.n(), k, k + g.uniform(0, 2), g.uniform(1, 3));
      DiffForm omega = reduce_form(wedge(product, gamma), in.polys());
      if (omega.is_zero()) continue;
      DivisionOptions opt;
      opt.over = DivisionRing::quotient;
      opt.ideal = in.polys();
      auto sol = wedge_division_solve(omega, mult, opt);
      REQUIRE(sol.has_value());
      CHECK(reduce_form(division_combination(mult, *sol) - omega, in.polys()).is_zero());
      ++solved;
    }
    CHECK(solved > 0);
  }
}

TEST_CASE("saturation finds the least exponent") {
  FieldSpec f = Q();
  // x1·(dx1∧dx2) = (x1 dx1)∧dx2, but dx1∧dx2 itself is no multiple of x1 dx1
  std::vector<DiffForm> mult{x_monomial(f, 2, {1, 0}, 0b01)};
  DiffForm omega = x_monomial(f, 2, {0, 0}, 0b11);
  DivisionOptions opt;
  opt.shape = DivisionShape::saito;
  CHECK_FALSE(wedge_division_solve(omega, mult, opt).has_value());
  opt.saturation = MultiPoly::variable(f, 2, 0);
  auto sol = wedge_division_solve(omega, mult, opt);
  REQUIRE(sol.has_value());
  CHECK(sol->m == 1);
  CHECK(division_combination(mult, *sol) == omega.multiplied(MultiPoly::variable(f, 2, 0)));
  opt.m_max = 0;
  CHECK_FALSE(wedge_division_solve(omega, mult, opt).has_value());
}

TEST_CASE("generalized shapes interpolate between the two extremes") {
  Gen g(43);
  ProblemInput in = load("two_quadrics.sys");
  auto mult = differentials(in);
  for (int trial = 0; trial < 10; ++trial) {
    DiffForm omega = g.x_form(in.field(), 4, 3, 3 + g.uniform(0, 2), g.uniform(1, 4));
    DivisionOptions saito, full, gen1, gen2;
    saito.shape = DivisionShape::saito;
    full.shape = DivisionShape::full_product;
    gen1.shape = gen2.shape = DivisionShape::generalized;
    gen1.s = 1;
    gen2.s = 2;
    CHECK(wedge_division_solve(omega, mult, gen1).has_value() == wedge_division_solve(omega, mult, full).has_value());
    CHECK(wedge_division_solve(omega, mult, gen2).has_value() ==
          wedge_division_solve(omega, mult, saito).has_value());
    DiffForm built = wedge(mult[0], g.x_form(in.field(), 4, 2, 3, 2)) + wedge(mult[1], g.x_form(in.field(), 4, 2, 3, 2));
    if (built.is_zero()) continue;
    auto sol = wedge_division_solve(built, mult, gen2);
    REQUIRE(sol.has_value());
    CHECK(sol->subsets.size() == 2);
    CHECK(division_combination(mult, *sol) == built);
  }
  DivisionOptions bad;
  bad.shape = DivisionShape::generalized;
  bad.s = 3;
  CHECK_THROWS_AS(wedge_division_solve(DiffForm(in.field(), 4, 0, 1), mult, bad), ShapeError);
}

TEST_CASE("division rejects malformed input") {
  ProblemInput in = load("fermat_cubic.sys");
  auto mult = differentials(in);
  DivisionOptions opt;
  CHECK_THROWS_AS(wedge_division_solve(DiffForm::dx(in.field(), 3, 1, 0), mult, opt), ShapeError);
  CHECK_THROWS_AS(wedge_division_solve(DiffForm::dx(in.field(), 3, 0, 0), {}, opt), ShapeError);
  DiffForm mixed = x_monomial(in.field(), 3, {1, 0, 0}, 0b001) + x_monomial(in.field(), 3, {0, 0, 0}, 0b010);
  CHECK_THROWS_AS(wedge_division_solve(mixed, mult, opt), ShapeError);
}

TEST_CASE("annihilator bases are annihilated") {
  for (std::string name : {"fermat_cubic.sys", "two_conics.sys", "conic_f2.sys"}) {
    ProblemInput in = load(name);
    auto mult = differentials(in);
    std::size_t found = 0;
    for (int k = 0; k < in.n(); ++k)
      for (int w = k; w <= k + 3; ++w)
        for (const auto& omega : wedge_annihilator(mult, k, w, in.polys())) {
          ++found;
          CHECK_FALSE(omega.is_zero());
          for (const auto& m : mult) CHECK(reduce_form(wedge(m, omega), in.polys()).is_zero());
        }
    CHECK(found > 0);
  }
}

TEST_CASE("annihilator elements divide by the full product in low degree") {
  for (std::string name : {"fermat_cubic.sys", "conic_f2.sys", "two_quadrics.sys"}) {
    ProblemInput in = load(name);
    std::size_t kernel = 0;
    for (int k = 0; k < in.n() - 1; ++k)
      for (int w = k; w <= k + 2; ++w) {
        DivisionStats st = division_round_trip(in, k, w, 10);
        INFO(name << " k " << k << " weight " << w);
        CHECK(st.failures() == 0);
        kernel += st.kernel_dim;
      }
    INFO(name);
    CHECK(kernel > 0);
  }
  // below k = r nothing is divisible by an r-fold product, so nothing is annihilated
  ProblemInput conics = load("two_conics.sys");
  for (int k = 0; k < 2; ++k)
    for (int w = k; w <= k + 3; ++w) CHECK(division_round_trip(conics, k, w, 10).kernel_dim == 0);
}
