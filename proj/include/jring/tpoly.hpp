#pragma once

#include <gmpxx.h>

#include <map>
#include <sstream>
#include <string>

namespace jring {

/// Univariate polynomial in t with exact coefficients (mpz_class or
/// mpq_class).  No zero coefficients are stored.
template <class C>
class TPoly {
 public:
  TPoly() = default;
  explicit TPoly(const C& constant) { set(0, constant); }

  static TPoly monomial(int exponent, const C& c) {
    TPoly p;
    p.set(exponent, c);
    return p;
  }
  /// t^lo + ... + t^hi (empty when hi < lo).
  static TPoly range(int lo, int hi) {
    TPoly p;
    for (int i = lo; i <= hi; ++i) p.set(i, C(1));
    return p;
  }

  const std::map<int, C>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }
  int low_degree() const { return c_.empty() ? -1 : c_.begin()->first; }

  C coefficient(int i) const {
    auto it = c_.find(i);
    return it == c_.end() ? C(0) : it->second;
  }

  void set(int i, const C& v) {
    if (v == 0) c_.erase(i);
    else c_[i] = v;
  }
  void add(int i, const C& v) { set(i, coefficient(i) + v); }

  C evaluate(const C& t) const {
    C acc = 0;
    int last = degree();
    for (int i = last; i >= 0; --i) acc = acc * t + coefficient(i);
    return acc;
  }

  TPoly derivative() const {
    TPoly p;
    for (const auto& [i, v] : c_)
      if (i > 0) p.set(i - 1, v * i);
    return p;
  }

  TPoly shifted(int by) const {
    TPoly p;
    for (const auto& [i, v] : c_) p.c_[i + by] = v;
    return p;
  }

  /// t^n p(1/t).
  TPoly reflected(int n) const {
    TPoly p;
    for (const auto& [i, v] : c_) p.c_[n - i] = v;
    return p;
  }

  TPoly& operator+=(const TPoly& o) {
    for (const auto& [i, v] : o.c_) add(i, v);
    return *this;
  }
  TPoly& operator-=(const TPoly& o) {
    for (const auto& [i, v] : o.c_) add(i, -v);
    return *this;
  }
  TPoly& operator*=(const C& s) {
    if (s == 0) c_.clear();
    for (auto& [i, v] : c_) v *= s;
    return *this;
  }
  friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
  friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
  friend TPoly operator*(TPoly a, const C& s) { return a *= s; }
  friend TPoly operator*(const TPoly& a, const TPoly& b) {
    TPoly p;
    for (const auto& [i, u] : a.c_)
      for (const auto& [j, v] : b.c_) p.add(i + j, u * v);
    return p;
  }
  friend bool operator==(const TPoly& a, const TPoly& b) { return a.c_ == b.c_; }

  /// Division by (1 − t): returns the quotient and sets `remainder` to p(1).
  TPoly divided_by_one_minus_t(C& remainder) const {
    // p = (1 − t) q + p(1); q_i = −Σ_{j>i} p_j.
    TPoly q;
    C suffix = 0;
    for (int i = degree(); i >= 1; --i) {
      suffix += coefficient(i);
      q.set(i - 1, -suffix);
    }
    remainder = suffix + coefficient(0);
    return q;
  }

  /// "t + 101t^2 + ..." with the lowest degree first; "0" for zero.
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, v] : c_) {
      C mag = v < 0 ? C(-v) : v;
      if (first) os << (v < 0 ? "-" : "");
      else os << (v < 0 ? " - " : " + ");
      first = false;
      bool unit = mag == 1;
      if (!unit || i == 0) os << mag;
      if (i >= 1) os << "t";
      if (i >= 2) os << "^" << i;
    }
    return os.str();
  }

 private:
  std::map<int, C> c_;
};

using IntPoly = TPoly<mpz_class>;
using RatPoly = TPoly<mpq_class>;

}  // namespace jring
