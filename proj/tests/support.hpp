#pragma once

#include "jring/cli.hpp"
#include "jring/forms.hpp"
#include "jring/problem.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef JRING_TEST_DATA
#define JRING_TEST_DATA "tests/data"
#endif

namespace jt {

using namespace jring;

inline std::string data_path(const std::string& name) { return std::string(JRING_TEST_DATA) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ProblemInput load(const std::string& name) { return cli::parse_input(read_file(data_path(name))); }

inline ProblemInput parse(const std::string& text) { return cli::parse_input(text); }

inline MultiPoly poly(const std::string& expr, int n, FieldSpec field = FieldSpec::rationals()) {
  std::string text = "field " + (field.is_rationals() ? std::string("Q") : "F " + std::to_string(field.modulus()));
  text += "\nvars";
  for (int i = 1; i <= n; ++i) text += " x" + std::to_string(i);
  text += "\npoly " + expr + "\n";
  return cli::parse_input(text).polys().front();
}

/// Deterministic random source for the property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  Scalar scalar(FieldSpec f, bool nonzero = false) {
    for (;;) {
      Scalar s;
      if (f.is_rationals())
        s = Scalar(f, mpq_class(uniform(-5, 5), uniform(1, 4)));
      else
        s = Scalar(f, static_cast<long>(uniform(0, static_cast<int>(f.modulus()) - 1)));
      if (!nonzero || !s.is_zero()) return s;
    }
  }

  Exponents exponents(int nvars, int degree) {
    Exponents e(nvars, 0);
    for (int i = 0; i < degree; ++i) ++e[uniform(0, nvars - 1)];
    return e;
  }

  MultiPoly homogeneous(FieldSpec f, int nvars, int degree, int terms) {
    MultiPoly p(f, nvars);
    for (int t = 0; t < terms; ++t) p.add_term(exponents(nvars, degree), scalar(f, true));
    return p;
  }

  MultiPoly any_poly(FieldSpec f, int nvars, int max_degree, int terms) {
    MultiPoly p(f, nvars);
    for (int t = 0; t < terms; ++t) p.add_term(exponents(nvars, uniform(0, max_degree)), scalar(f, true));
    return p;
  }

  /// Random system whose polynomials are nonzero and homogeneous; not necessarily smooth.
  ProblemInput input(FieldSpec f, int n, int r, int max_degree) {
    std::vector<MultiPoly> polys;
    for (int j = 0; j < r; ++j) {
      int d = uniform(1, max_degree);
      MultiPoly p(f, n);
      while (p.is_zero()) p = homogeneous(f, n, d, uniform(1, 4));
      polys.push_back(p);
    }
    return ProblemInput(f, polys);
  }

  WedgeMask word(int n, int r, int k) {
    std::vector<int> bits(n + r);
    for (int i = 0; i < n + r; ++i) bits[i] = i;
    std::shuffle(bits.begin(), bits.end(), rng_);
    WedgeMask m = 0;
    for (int i = 0; i < k; ++i) m |= WedgeMask(1) << bits[i];
    return m;
  }

  /// Random k-form over K[x, y], total polynomial degree <= max_degree.
  DiffForm form(FieldSpec f, int n, int r, int k, int max_degree, int terms) {
    DiffForm w(f, n, r, k);
    for (int t = 0; t < terms; ++t) {
      FormKey key{exponents(n + r, uniform(0, max_degree)), word(n, r, k)};
      w.add_term(key, scalar(f, true));
    }
    return w;
  }

  /// Random x-only k-form of the given weight.
  DiffForm x_form(FieldSpec f, int n, int k, int weight, int terms) {
    DiffForm w(f, n, 0, k);
    if (weight < k) return w;
    for (int t = 0; t < terms; ++t) {
      FormKey key{exponents(n, weight - k), word(n, 0, k)};
      w.add_term(key, scalar(f, true));
    }
    return w;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline FieldSpec Q() { return FieldSpec::rationals(); }
inline FieldSpec F(std::uint64_t p) { return FieldSpec::prime(p); }

/// Every certified input under tests/data, with its file name.
inline std::vector<std::string> corpus() {
  return {"fermat_cubic.sys", "two_quadrics.sys", "conic_f2.sys", "two_conics.sys", "squares.sys"};
}

}  // namespace jt
