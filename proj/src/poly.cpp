#include "jring/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace jring {

int total_degree(std::span<const int> e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return a.size() < b.size();
}

std::size_t ExponentsHash::operator()(const Exponents& e) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : e) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

void fill_monomials(Exponents& cur, int pos, int remaining, std::vector<Exponents>& out) {
  if (pos + 1 == static_cast<int>(cur.size())) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur[pos] = v;
    fill_monomials(cur, pos + 1, remaining - v, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<Exponents> monomials_of_degree(int nvars, int degree) {
  std::vector<Exponents> out;
  if (degree < 0 || nvars < 0) return out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponents cur(nvars, 0);
  fill_monomials(cur, 0, degree, out);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

MultiPoly::MultiPoly(FieldSpec field, int nvars) : field_(field), nvars_(nvars) {
  if (nvars < 0) throw ShapeError("negative variable count");
}

MultiPoly MultiPoly::constant(FieldSpec field, int nvars, const Scalar& c) {
  MultiPoly p(field, nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::monomial(FieldSpec field, Exponents e, const Scalar& c) {
  MultiPoly p(field, static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

MultiPoly MultiPoly::variable(FieldSpec field, int nvars, int index) {
  if (index < 0 || index >= nvars) throw ShapeError("variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(field, std::move(e), Scalar(field, 1));
}

int MultiPoly::degree() const {
  // grlex puts the largest total degree last
  return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first);
}

std::optional<int> MultiPoly::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = total_degree(terms_.begin()->first);
  return d == degree() ? std::optional<int>(d) : std::nullopt;
}

Scalar MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar(field_) : it->second;
}

void MultiPoly::add_term(const Exponents& e, const Scalar& c) {
  if (static_cast<int>(e.size()) != nvars_) throw ShapeError("exponent length does not match variable count");
  if (c.field() != field_) throw ShapeError("coefficient field mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly MultiPoly::extended(int nvars) const {
  if (nvars < nvars_) throw ShapeError("cannot shrink variable count");
  MultiPoly r(field_, nvars);
  for (const auto& [e, c] : terms_) {
    Exponents w = e;
    w.resize(nvars, 0);
    r.terms_.emplace(std::move(w), c);
  }
  return r;
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (field_ != o.field_) throw ShapeError("polynomial field mismatch");
  if (nvars_ != o.nvars_) throw ShapeError("polynomial variable count mismatch");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly MultiPoly::scaled(const Scalar& c) const {
  MultiPoly r(field_, nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  MultiPoly r(a.field_, a.nvars_);
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

std::string MultiPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest term first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string cs = c.to_string();
    bool negative = !cs.empty() && cs[0] == '-';
    if (negative) cs.erase(0, 1);
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    bool constant = total_degree(e) == 0;
    if (cs != "1" || constant) {
      os << cs;
      if (!constant) os << "*";
    }
    bool first_var = true;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << (i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i + 1));
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

MultiPoly partial_derivative(const MultiPoly& f, int index) {
  if (index < 0 || index >= f.nvars()) throw ShapeError("derivative index out of range");
  MultiPoly r(f.field(), f.nvars());
  for (const auto& [e, c] : f.terms()) {
    if (e[index] == 0) continue;
    Exponents d = e;
    d[index] -= 1;
    r.add_term(d, c * Scalar(f.field(), static_cast<long>(e[index])));
  }
  return r;
}

MultiPoly power(const MultiPoly& f, int m) {
  if (m < 0) throw ShapeError("negative exponent");
  MultiPoly r = MultiPoly::constant(f.field(), f.nvars(), Scalar(f.field(), 1));
  for (int i = 0; i < m; ++i) r *= f;
  return r;
}

}  // namespace jring
