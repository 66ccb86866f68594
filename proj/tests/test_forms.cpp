#include "doctest.h"
#include "support.hpp"

#include <numeric>

using namespace jt;

namespace {

Scalar one(FieldSpec f) { return Scalar(f, 1); }

DiffForm boundary_h(const DiffForm& w, const ProblemInput& in) { return boundary(w, in, BoundaryPart::horizontal); }
DiffForm boundary_v(const DiffForm& w, const ProblemInput& in) { return boundary(w, in, BoundaryPart::vertical); }

DiffForm product_of_degrees_times(const DiffForm& w, const ProblemInput& in) {
  long prod = 1;
  for (int d : in.degrees()) prod *= d;
  return w.scaled(Scalar(in.field(), prod));
}

struct Config {
  FieldSpec field;
  int n;
  int r;
};

std::vector<Config> configs() {
  return {{Q(), 2, 1}, {Q(), 3, 1}, {Q(), 3, 2}, {Q(), 2, 2}, {F(2), 3, 1}, {F(3), 2, 2}, {F(5), 4, 1}, {Q(), 2, 3}};
}

}  // namespace

TEST_CASE("wedge signs") {
  FieldSpec f = Q();
  auto dx1 = DiffForm::dx(f, 2, 1, 0), dx2 = DiffForm::dx(f, 2, 1, 1), dy1 = DiffForm::dy(f, 2, 1, 0);
  DiffForm dx12 = wedge(dx1, dx2);
  CHECK(dx12.size() == 1);
  CHECK(dx12.coefficient(FormKey{{0, 0, 0}, 0b011}).is_one());
  CHECK(wedge(dx2, dx1) == -dx12);
  CHECK(wedge(dx1, dx1).is_zero());
  CHECK(wedge(dy1, dx1) == -wedge(dx1, dy1));
  CHECK(wedge(dy1, dx1).coefficient(FormKey{{0, 0, 0}, 0b101}) == Scalar(f, -1));
  CHECK_THROWS_AS(wedge(dx1, DiffForm::dx(f, 3, 1, 0)), ShapeError);
}

TEST_CASE("wedge is associative and graded commutative") {
  Gen g(21);
  for (const auto& c : configs()) {
    for (int trial = 0; trial < 100; ++trial) {
      int ka = g.uniform(0, 2), kb = g.uniform(0, 2), kc = g.uniform(0, 1);
      auto a = g.form(c.field, c.n, c.r, std::min(ka, c.n + c.r), 3, 3);
      auto b = g.form(c.field, c.n, c.r, std::min(kb, c.n + c.r), 3, 3);
      auto e = g.form(c.field, c.n, c.r, std::min(kc, c.n + c.r), 3, 2);
      CHECK(wedge(wedge(a, b), e) == wedge(a, wedge(b, e)));
      DiffForm ba = wedge(b, a);
      if ((a.degree() * b.degree()) % 2) ba = -ba;
      CHECK(wedge(a, b) == ba);
    }
  }
}

TEST_CASE("dF of a single square") {
  ProblemInput in = parse("field Q\nvars x1\npoly x1^2\n");
  DiffForm dF = dF_of(in);
  CHECK(dF.size() == 2);
  CHECK(dF.coefficient(FormKey{{1, 1}, 0b01}) == Scalar(Q(), 2));
  CHECK(dF.coefficient(FormKey{{2, 0}, 0b10}).is_one());
  CHECK(dF.bidegree(in.degrees()) == Bidegree{0, 1});

  ProblemInput in2 = parse("field F 2\nvars x1\npoly x1^2\n");
  DiffForm dF2 = dF_of(in2);
  CHECK(dF2.size() == 1);
  CHECK(dF2.coefficient(FormKey{{2, 0}, 0b10}).is_one());
}

TEST_CASE("dF has bidegree (0,1)") {
  Gen g(4);
  for (const auto& c : configs())
    for (int trial = 0; trial < 20; ++trial) {
      ProblemInput in = g.input(c.field, c.n, c.r, 4);
      DiffForm dF = dF_of(in);
      for (const auto& [key, v] : dF.terms()) CHECK(bidegree_of(key, in.n(), in.degrees()) == Bidegree{0, 1});
    }
}

TEST_CASE("boundary on fixed forms") {
  for (const auto& name : corpus()) {
    ProblemInput in = load(name);
    DiffForm unit = DiffForm::one(in.field(), in.n(), in.r());
    CHECK(boundary(unit, in) == dF_of(in));
    CHECK(boundary(dF_of(in), in).is_zero());
    CHECK(theta(dF_of(in), in).is_zero());
  }
}

TEST_CASE("operator identities on random forms") {
  Gen g(1);
  for (const auto& c : configs()) {
    for (int inst = 0; inst < 4; ++inst) {
      ProblemInput in = g.input(c.field, c.n, c.r, 3);
      for (int trial = 0; trial < 25; ++trial) {
        int k = g.uniform(0, c.n + c.r);
        DiffForm w = g.form(c.field, c.n, c.r, k, 6, g.uniform(1, 5));
        DiffForm dw = boundary(w, in);
        CHECK(boundary(dw, in).is_zero());
        CHECK(theta(theta(w, in), in).is_zero());
        CHECK((theta(dw, in) + boundary(theta(w, in), in)).is_zero());
        CHECK(dw == boundary_h(w, in) + boundary_v(w, in));
        CHECK((boundary_h(boundary_v(w, in), in) + boundary_v(boundary_h(w, in), in)).is_zero());
        CHECK(boundary_h(boundary_h(w, in), in).is_zero());
        CHECK(boundary_v(boundary_v(w, in), in).is_zero());
      }
    }
  }
}

TEST_CASE("theta is a graded derivation") {
  Gen g(9);
  for (const auto& c : configs()) {
    std::vector<int> degrees(c.r);
    for (auto& d : degrees) d = g.uniform(1, 4);
    for (int trial = 0; trial < 100; ++trial) {
      int m = g.uniform(0, 2);
      DiffForm a = g.form(c.field, c.n, c.r, std::min(m, c.n + c.r), 4, 3);
      DiffForm b = g.form(c.field, c.n, c.r, g.uniform(0, std::min(2, c.n + c.r - a.degree())), 4, 3);
      DiffForm rhs = wedge(theta(a, degrees), b);
      DiffForm second = wedge(a, theta(b, degrees));
      rhs = a.degree() % 2 ? rhs - second : rhs + second;
      CHECK(theta(wedge(a, b), degrees) == rhs);
    }
  }
}

TEST_CASE("theta on basic forms") {
  ProblemInput in = load("two_quadrics.sys");
  FieldSpec f = in.field();
  const int n = in.n(), r = in.r();
  for (int i = 0; i < n; ++i)
    CHECK(theta(DiffForm::dx(f, n, r, i), in) == DiffForm::function(MultiPoly::variable(f, n + r, i), n, r));
  for (int j = 0; j < r; ++j) {
    DiffForm expected = DiffForm::function(MultiPoly::variable(f, n + r, n + j), n, r).scaled(Scalar(f, -in.degrees()[j]));
    CHECK(theta(DiffForm::dy(f, n, r, j), in) == expected);
  }
  // θ(dx1∧dx2) = x1 dx2 − x2 dx1
  DiffForm w = wedge(DiffForm::dx(f, n, r, 0), DiffForm::dx(f, n, r, 1));
  DiffForm x1 = DiffForm::function(MultiPoly::variable(f, n + r, 0), n, r);
  DiffForm x2 = DiffForm::function(MultiPoly::variable(f, n + r, 1), n, r);
  CHECK(theta(w, in) == wedge(x1, DiffForm::dx(f, n, r, 1)) - wedge(x2, DiffForm::dx(f, n, r, 0)));
}

TEST_CASE("theta of df_j is d_j f_j") {
  Gen g(12);
  auto check = [](const ProblemInput& in) {
    for (int j = 0; j < in.r(); ++j) {
      DiffForm df = differential(in.polys()[j], in.n(), in.r());
      CHECK(theta(df, in) == DiffForm::function(in.polys()[j], in.n(), in.r()).scaled(Scalar(in.field(), in.degrees()[j])));
    }
  };
  for (const auto& name : corpus()) check(load(name));
  for (const auto& c : configs())
    for (int trial = 0; trial < 100 / static_cast<int>(configs().size()) + 1; ++trial) check(g.input(c.field, c.n, c.r, 5));
}

TEST_CASE("xi forms") {
  ProblemInput cubic = load("fermat_cubic.sys");
  DiffForm df = differential(cubic.polys()[0], 3, 1);
  CHECK(xi(1, cubic) == wedge(df, DiffForm::dy(cubic.field(), 3, 1, 0)));

  ProblemInput pair = parse("field Q\nvars x1 x2 x3\npoly x1^2 + x2^2\npoly x3^3 + x1*x2*x3\n");
  FieldSpec f = pair.field();
  DiffForm df1 = differential(pair.polys()[0], 3, 2), df2 = differential(pair.polys()[1], 3, 2);
  DiffForm expected = wedge(df1, DiffForm::dy(f, 3, 2, 0)).scaled(Scalar(f, 3)) +
                      wedge(df2, DiffForm::dy(f, 3, 2, 1)).scaled(Scalar(f, 2));
  CHECK(xi(1, pair) == expected);
  CHECK(xi(2, pair).bidegree(pair.degrees()) == Bidegree{0, 2});
  CHECK_THROWS(xi(3, pair));
  CHECK_THROWS(xi(0, pair));
}

TEST_CASE("theta of xi forms") {
  Gen g(13);
  auto check = [](const ProblemInput& in) {
    DiffForm dF = dF_of(in);
    CHECK(theta(xi(1, in), in) == product_of_degrees_times(dF, in));
    for (int k = 1; k < in.r(); ++k) {
      DiffForm rhs = wedge(dF, xi(k, in));
      if (k % 2) rhs = -rhs;
      CHECK(theta(xi(k + 1, in), in) == rhs);
    }
    if (in.r() >= in.n()) CHECK(boundary(xi(in.n(), in), in).is_zero());
  };
  for (const auto& name : corpus()) check(load(name));
  for (const auto& c : configs())
    for (int trial = 0; trial < 13; ++trial) check(g.input(c.field, c.n, c.r, 4));
  for (int trial = 0; trial < 100; ++trial) {
    int n = g.uniform(1, 3);
    check(g.input(trial % 2 ? Q() : F(3), n, n + g.uniform(0, 1), 3));
  }
}

TEST_CASE("basis slices") {
  ProblemInput cubic = load("fermat_cubic.sys");
  CHECK(basis(0, 0, 0, cubic).size() == 1);
  // x^a y1 dx1∧dx2∧dx3∧dy1 with |a| = 3
  BasisSlice top = basis(4, 0, 2, cubic);
  CHECK(top.size() == monomials_of_degree(3, 3).size());
  for (const auto& key : top.elements()) {
    CHECK(key.word == 0b1111);
    CHECK(key.exps[3] == 1);
  }
  for (const auto& name : corpus()) {
    ProblemInput in = load(name);
    CHECK(basis(in.n() + in.r(), 0, 0, in).empty());
  }
}

TEST_CASE("basis elements have the slice bidegree and boundaries stay in the next slice") {
  for (const auto& name : corpus()) {
    ProblemInput in = load(name);
    for (int k = 0; k <= in.n() + in.r(); ++k)
      for (int q = -1; q <= 2; ++q)
        for (int p = 0; p <= 3; ++p) {
          BasisSlice s = basis(k, q, p, in);
          BasisSlice next = basis(k + 1, q, p + 1, in);
          for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(bidegree_of(s[i], in.n(), in.degrees()) == Bidegree{q, p});
            CHECK(word_degree(s[i].word) == k);
            CHECK(s.index_of(s[i]) == i);
            DiffForm image = boundary(DiffForm::monomial(in.field(), in.n(), in.r(), s[i], one(in.field())), in);
            for (const auto& [key, v] : image.terms()) CHECK(next.index_of(key).has_value());
          }
          for (std::size_t i = 1; i < s.size(); ++i) CHECK(FormKeyLess{}(s[i - 1], s[i]));
        }
  }
}

TEST_CASE("slice counts by binomials match enumeration") {
  Gen g(14);
  for (int n = 1; n <= 5; ++n)
    for (int r = 1; n + r <= 6; ++r)
      for (int rep = 0; rep < 3; ++rep) {
        std::vector<int> d(r);
        for (auto& x : d) x = g.uniform(1, 4);
        for (int k = 0; k <= n + r; ++k)
          for (int q = -2; q <= 2; ++q)
            for (int p = 0; p <= 6; ++p) {
              if (slice_dimension(k, q, p, n, d) > 20000) continue;
              CHECK(basis(k, q, p, n, d).size() == slice_dimension(k, q, p, n, d));
            }
      }
}

TEST_CASE("coordinates round trip") {
  ProblemInput in = load("two_conics.sys");
  BasisSlice s = basis(3, 0, 2, in);
  Gen g(15);
  std::vector<Scalar> c(s.size());
  for (auto& v : c) v = g.scalar(in.field());
  DiffForm w = from_coordinates(c, s, in.field());
  CHECK(coordinates(w, s, in.field()) == c);
  CHECK_THROWS_AS(coordinates(dF_of(in), s, in.field()), ShapeError);
}

TEST_CASE("theta preimages") {
  ProblemInput in = load("fermat_cubic.sys");
  FieldSpec f = in.field();
  DiffForm x1 = DiffForm::function(MultiPoly::variable(f, 4, 0), 3, 1);
  auto z = theta_preimage(x1, 1, 1, 0, in);
  REQUIRE(z.has_value());
  CHECK(*z == DiffForm::dx(f, 3, 1, 0));

  DiffForm dF = dF_of(in);
  auto zeta = theta_preimage(dF, 2, 0, 1, in);
  REQUIRE(zeta.has_value());
  CHECK(theta(*zeta, in) == dF);

  CHECK_FALSE(theta_preimage(DiffForm::one(f, 3, 1), 1, 0, 0, in).has_value());
}
