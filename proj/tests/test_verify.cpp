#include "doctest.h"
#include "support.hpp"

#include "jring/verify.hpp"

using namespace jt;

namespace {

VerifyReport verify_ci(const ProblemInput& in, VerifyOptions opt = {}) {
  return verify_predictions(in, VerifyMode::complete_intersection, smooth_ci_certificate(in), opt);
}

std::string failures(const VerifyReport& rep) {
  std::string out;
  for (const auto& c : rep.checks)
    if (!c.pass) out += c.name + ": expected " + c.expected + ", got " + c.got + "\n";
  return out;
}

}  // namespace

TEST_CASE("verification passes on the certified corpus") {
  for (std::string name : {"fermat_cubic.sys", "two_quadrics.sys", "conic_f2.sys", "two_conics.sys"}) {
    ProblemInput in = load(name);
    VerifyReport rep = verify_ci(in);
    INFO(name << "\n" << failures(rep));
    CHECK(rep.passed());
    CHECK(rep.checks.size() > 10);
  }
  ProblemInput sq = load("squares.sys");
  VerifyReport rep = verify_predictions(sq, VerifyMode::no_common_zero, no_common_zero_certificate(sq));
  INFO(failures(rep));
  CHECK(rep.passed());
  CHECK(rep.cohomology.at(4, 0, 2) == 1);
}

TEST_CASE("cubic cohomology at q = 0") {
  ProblemInput in = load("fermat_cubic.sys");
  VerifyReport rep = verify_ci(in);
  const auto& h = rep.cohomology;
  CHECK(h.at(2, 0, 1) == 1);
  CHECK(h.at(3, 0, 1) == 1);
  CHECK(h.at(4, 0, 1) == 1);
  CHECK(h.at(3, 0, 2) == 1);
  CHECK(h.at(4, 0, 2) == 1);
  for (int k = 0; k <= 4; ++k)
    for (int p = 0; p <= 3; ++p) {
      if (k == 2 && p == 1) continue;
      if (k >= 3 && (p == 1 || p == 2)) continue;
      CHECK(h.at(k, 0, p) == 0);
    }
}

TEST_CASE("offsets between the two top degrees") {
  auto top_pair = [](const VerifyReport& rep, int top, int p) {
    return static_cast<long>(rep.cohomology.at(top - 1, 0, p)) - static_cast<long>(rep.cohomology.at(top, 0, p));
  };
  VerifyReport quadrics = verify_ci(load("two_quadrics.sys"));
  for (int p = 0; p <= 4; ++p) CHECK(top_pair(quadrics, 6, p) == 0);
  CHECK(quadrics.cohomology.at(6, 0, 2) == 1);
  CHECK(quadrics.cohomology.at(6, 0, 3) == 1);
  CHECK(quadrics.cohomology.at(5, 0, 2) == 1);
  CHECK(quadrics.cohomology.at(5, 0, 3) == 1);

  VerifyReport conic = verify_ci(load("conic_f2.sys"));
  CHECK(top_pair(conic, 4, 1) == 1);
  CHECK(top_pair(conic, 4, 2) == -1);
  CHECK(top_pair(conic, 4, 0) == 0);
  CHECK(top_pair(conic, 4, 3) == 0);

  VerifyReport conics = verify_ci(load("two_conics.sys"));
  CHECK(top_pair(conics, 5, 2) == 1);
  CHECK(conics.cohomology.at(5, 0, 2) == 3);
  for (int p : {0, 1, 3}) CHECK(top_pair(conics, 5, p) == 0);
}

TEST_CASE("verification refuses uncertified input") {
  ProblemInput f3 = load("fermat_cubic_f3.sys");
  REQUIRE_FALSE(smooth_ci_certificate(f3).has_value());
  CHECK_THROWS_AS(verify_ci(f3), HypothesisError);

  ProblemInput cubic = load("fermat_cubic.sys");
  auto other = smooth_ci_certificate(load("two_quadrics.sys"));
  CHECK_THROWS_AS(verify_predictions(cubic, VerifyMode::complete_intersection, other), HypothesisError);
  CHECK_THROWS_AS(verify_predictions(cubic, VerifyMode::no_common_zero, smooth_ci_certificate(cubic)), HypothesisError);

  ProblemInput sq = load("squares.sys");
  auto c = smooth_ci_certificate(sq);
  REQUIRE(c.has_value());
  CHECK_THROWS_AS(verify_predictions(sq, VerifyMode::complete_intersection, c), HypothesisError);
}

TEST_CASE("ranges restrict the computed slices") {
  ProblemInput in = load("fermat_cubic.sys");
  VerifyOptions opt;
  opt.k = IntRange{3, 4};
  opt.p = IntRange{1, 2};
  opt.division = false;
  VerifyReport rep = verify_ci(in, opt);
  CHECK(rep.passed());
  CHECK(rep.cohomology.dims.size() == 4);
  for (const auto& c : rep.checks) CHECK(c.name.find("division") == std::string::npos);
}

TEST_CASE("nonzero classes") {
  for (std::string name : {"fermat_cubic.sys", "two_quadrics.sys"}) {
    ProblemInput in = load(name);
    CHECK(is_nonzero_class(middle_witness(in), in.r(), in));
    // dF = ∂1 is exact
    CHECK_FALSE(is_nonzero_class(dF_of(in), 1, in));
  }
  ProblemInput cubic = load("fermat_cubic.sys");
  DiffForm w = DiffForm::monomial(cubic.field(), 3, 1, FormKey{{3, 0, 0, 0}, WedgeMask(1) << 3}, Scalar(cubic.field(), 1));
  REQUIRE_FALSE(boundary(w, cubic).is_zero());
  CHECK_FALSE(is_nonzero_class(w, 1, cubic));
  CHECK_FALSE(is_nonzero_class(DiffForm(cubic.field(), 3, 1, 2), 1, cubic));
}

TEST_CASE("middle witness shape") {
  ProblemInput in = load("two_quadrics.sys");
  DiffForm w = middle_witness(in);
  CHECK(w.degree() == 4);
  CHECK(w.bidegree(in.degrees()) == Bidegree{0, 2});
  CHECK(boundary(w, in).is_zero());
}

TEST_CASE("verify mode names") {
  CHECK(to_string(VerifyMode::complete_intersection) != to_string(VerifyMode::no_common_zero));
}
