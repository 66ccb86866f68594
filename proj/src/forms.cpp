#include "jring/forms.hpp"

#include "jring/homology.hpp"
#include "jring/linalg.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace jring {

WedgeMask to_mask(const WedgeWord& w, int n) {
  WedgeMask m = 0;
  for (int i : w.dx) {
    if (i < 0 || i >= n) throw ShapeError("dx index out of range");
    m |= WedgeMask{1} << i;
  }
  for (int j : w.dy) {
    if (j < 0 || n + j >= 64) throw ShapeError("dy index out of range");
    m |= WedgeMask{1} << (n + j);
  }
  return m;
}

WedgeWord from_mask(WedgeMask m, int n) {
  WedgeWord w;
  for (int b = 0; b < 64; ++b)
    if (m >> b & 1) (b < n ? w.dx : w.dy).push_back(b < n ? b : b - n);
  return w;
}

int word_degree(WedgeMask m) { return std::popcount(m); }

bool FormKeyLess::operator()(const FormKey& a, const FormKey& b) const {
  if (a.word != b.word) return a.word < b.word;
  return GrlexLess{}(a.exps, b.exps);
}

std::size_t FormKeyHash::operator()(const FormKey& k) const noexcept {
  return ExponentsHash{}(k.exps) ^ (std::hash<WedgeMask>{}(k.word) * 0x9e3779b97f4a7c15ull);
}

Bidegree bidegree_of(const FormKey& key, int n, std::span<const int> degrees) {
  Bidegree b;
  for (int i = 0; i < n; ++i) b.q += key.exps[i];
  for (std::size_t j = 0; j < degrees.size(); ++j) {
    int e = key.exps[n + j] + static_cast<int>(key.word >> (n + j) & 1);
    b.q -= e * degrees[j];
    b.p += e;
  }
  b.q += std::popcount(key.word & ((WedgeMask{1} << n) - 1));
  return b;
}

// ---------------------------------------------------------------------------

DiffForm::DiffForm(FieldSpec field, int n, int r, int k) : field_(field), n_(n), r_(r), k_(k) {
  if (n < 0 || r < 0 || n + r > 63) throw ShapeError("unsupported form shape");
  if (k < 0 || k > n + r) throw ShapeError("form degree out of range");
}

DiffForm DiffForm::one(FieldSpec field, int n, int r) {
  DiffForm w(field, n, r, 0);
  w.add_term({Exponents(n + r, 0), 0}, Scalar(field, 1));
  return w;
}

DiffForm DiffForm::function(const MultiPoly& f, int n, int r) {
  if (f.nvars() != n && f.nvars() != n + r) throw ShapeError("polynomial variable count does not fit form shape");
  DiffForm w(f.field(), n, r, 0);
  for (const auto& [e, c] : f.terms()) {
    Exponents x = e;
    x.resize(n + r, 0);
    w.add_term({std::move(x), 0}, c);
  }
  return w;
}

DiffForm DiffForm::dx(FieldSpec field, int n, int r, int i) {
  if (i < 0 || i >= n) throw ShapeError("dx index out of range");
  DiffForm w(field, n, r, 1);
  w.add_term({Exponents(n + r, 0), WedgeMask{1} << i}, Scalar(field, 1));
  return w;
}

DiffForm DiffForm::dy(FieldSpec field, int n, int r, int j) {
  if (j < 0 || j >= r) throw ShapeError("dy index out of range");
  DiffForm w(field, n, r, 1);
  w.add_term({Exponents(n + r, 0), WedgeMask{1} << (n + j)}, Scalar(field, 1));
  return w;
}

DiffForm DiffForm::monomial(FieldSpec field, int n, int r, const FormKey& key, const Scalar& c) {
  DiffForm w(field, n, r, word_degree(key.word));
  w.add_term(key, c);
  return w;
}

Scalar DiffForm::coefficient(const FormKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Scalar(field_) : it->second;
}

void DiffForm::add_term(const FormKey& key, const Scalar& c) {
  if (static_cast<int>(key.exps.size()) != n_ + r_) throw ShapeError("form exponent length mismatch");
  if (word_degree(key.word) != k_ || (key.word >> (n_ + r_)) != 0) throw ShapeError("wedge word does not fit form");
  if (c.field() != field_) throw ShapeError("form coefficient field mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::optional<Bidegree> DiffForm::bidegree(std::span<const int> degrees) const {
  if (terms_.empty()) return std::nullopt;
  Bidegree b = bidegree_of(terms_.begin()->first, n_, degrees);
  for (const auto& [key, c] : terms_)
    if (!(bidegree_of(key, n_, degrees) == b)) return std::nullopt;
  return b;
}

void DiffForm::check_compatible(const DiffForm& o) const {
  if (field_ != o.field_ || n_ != o.n_ || r_ != o.r_) throw ShapeError("form shape mismatch");
  if (k_ != o.k_ && !terms_.empty() && !o.terms_.empty()) throw ShapeError("adding forms of different degree");
}

DiffForm& DiffForm::operator+=(const DiffForm& o) {
  check_compatible(o);
  if (terms_.empty()) k_ = o.k_;
  for (const auto& [key, c] : o.terms_) add_term(key, c);
  return *this;
}

DiffForm& DiffForm::operator-=(const DiffForm& o) {
  check_compatible(o);
  if (terms_.empty()) k_ = o.k_;
  for (const auto& [key, c] : o.terms_) add_term(key, -c);
  return *this;
}

DiffForm DiffForm::operator-() const {
  DiffForm w(*this);
  for (auto& [key, c] : w.terms_) c = -c;
  return w;
}

DiffForm DiffForm::scaled(const Scalar& c) const {
  DiffForm w(field_, n_, r_, k_);
  if (c.is_zero()) return w;
  for (const auto& [key, v] : terms_) w.terms_.emplace(key, v * c);
  return w;
}

DiffForm DiffForm::multiplied(const MultiPoly& f) const { return wedge(function(f, n_, r_), *this); }

bool operator==(const DiffForm& a, const DiffForm& b) {
  return a.field_ == b.field_ && a.n_ == b.n_ && a.r_ == b.r_ && (a.k_ == b.k_ || a.terms_.empty()) &&
         a.terms_ == b.terms_;
}

std::string DiffForm::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (int i = 0; i < n_ + r_; ++i) {
      if (key.exps[i] == 0) continue;
      os << "*" << (i < n_ ? "x" + std::to_string(i + 1) : "y" + std::to_string(i - n_ + 1));
      if (key.exps[i] > 1) os << "^" << key.exps[i];
    }
    auto w = from_mask(key.word, n_);
    for (int i : w.dx) os << " dx" << i + 1;
    for (int j : w.dy) os << " dy" << j + 1;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

// Sign of rearranging left ++ right into ascending order.
int merge_sign(WedgeMask left, WedgeMask right) {
  int inversions = 0;
  while (right) {
    int b = std::countr_zero(right);
    right &= right - 1;
    WedgeMask above = b == 63 ? 0 : ~((WedgeMask{2} << b) - 1);
    inversions += std::popcount(left & above);
  }
  return inversions % 2 ? -1 : 1;
}

}  // namespace

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  if (a.field() != b.field() || a.n() != b.n() || a.r() != b.r()) throw ShapeError("wedge of forms with different shapes");
  if (a.degree() + b.degree() > a.n() + a.r()) return DiffForm(a.field(), a.n(), a.r(), a.n() + a.r());
  DiffForm out(a.field(), a.n(), a.r(), a.degree() + b.degree());
  const int nv = a.n() + a.r();
  FormKey key{Exponents(nv), 0};
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      if (ka.word & kb.word) continue;
      for (int i = 0; i < nv; ++i) key.exps[i] = ka.exps[i] + kb.exps[i];
      key.word = ka.word | kb.word;
      Scalar c = ca * cb;
      out.add_term(key, merge_sign(ka.word, kb.word) < 0 ? -c : c);
    }
  return out;
}

DiffForm differential(const MultiPoly& f, int n, int r) {
  MultiPoly g = f.nvars() == n + r ? f : f.extended(n + r);
  DiffForm out(f.field(), n, r, 1);
  for (int i = 0; i < n + r; ++i) {
    MultiPoly d = partial_derivative(g, i);
    for (const auto& [e, c] : d.terms()) out.add_term({e, WedgeMask{1} << i}, c);
  }
  return out;
}

DiffForm boundary_multiplier(const ProblemInput& input, BoundaryPart part) {
  const int n = input.n(), r = input.r();
  const FieldSpec k = input.field();
  DiffForm out(k, n, r, 1);
  for (int j = 0; j < r; ++j) {
    MultiPoly f = input.polys()[j].extended(n + r);
    if (part != BoundaryPart::vertical) {
      MultiPoly yj = MultiPoly::variable(k, n + r, n + j);
      for (int i = 0; i < n; ++i) {
        MultiPoly d = yj * partial_derivative(f, i);
        for (const auto& [e, c] : d.terms()) out.add_term({e, WedgeMask{1} << i}, c);
      }
    }
    if (part != BoundaryPart::horizontal)
      for (const auto& [e, c] : f.terms()) out.add_term({e, WedgeMask{1} << (n + j)}, c);
  }
  return out;
}

DiffForm dF_of(const ProblemInput& input) { return boundary_multiplier(input, BoundaryPart::full); }

DiffForm boundary(const DiffForm& w, const ProblemInput& input, BoundaryPart part) {
  if (w.n() != input.n() || w.r() != input.r() || w.field() != input.field())
    throw ShapeError("form does not match the input system");
  return wedge(boundary_multiplier(input, part), w);
}

DiffForm theta(const DiffForm& w, std::span<const int> degrees) {
  const int n = w.n(), r = w.r();
  if (static_cast<int>(degrees.size()) != r) throw ShapeError("theta needs one degree per y-variable");
  if (w.degree() == 0) return DiffForm(w.field(), n, r, 0);
  DiffForm out(w.field(), n, r, w.degree() - 1);
  for (const auto& [key, c] : w.terms()) {
    WedgeMask rest = key.word;
    int position = 0;
    while (rest) {
      int b = std::countr_zero(rest);
      rest &= rest - 1;
      FormKey t{key.exps, key.word & ~(WedgeMask{1} << b)};
      t.exps[b] += 1;  // x_i for dx_i, y_j for dy_j
      Scalar v = c;
      if (b >= n) v *= -Scalar(w.field(), static_cast<long>(degrees[b - n]));
      if (position % 2) v = -v;
      out.add_term(t, v);
      ++position;
    }
  }
  return out;
}

DiffForm theta(const DiffForm& w, const ProblemInput& input) { return theta(w, input.degrees()); }

namespace {

void for_each_subset(int size, int count, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> s(count);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == count) {
      fn(s);
      return;
    }
    for (int v = start; v <= size - (count - pos); ++v) {
      s[pos] = v;
      rec(pos + 1, v + 1);
    }
  };
  if (count >= 0 && count <= size) rec(0, 0);
}

void for_each_composition(int total, int parts, const std::function<void(const std::vector<int>&)>& fn) {
  if (total < 0) return;
  if (parts == 0) {
    if (total == 0) fn({});
    return;
  }
  std::vector<int> b(parts, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == parts - 1) {
      b[pos] = left;
      fn(b);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      b[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, total);
}

}  // namespace

DiffForm xi(int k, const ProblemInput& input) {
  const int n = input.n(), r = input.r();
  if (k < 1 || k > r) throw ShapeError("xi index out of range");
  const FieldSpec K = input.field();
  std::vector<DiffForm> df;
  for (const auto& f : input.polys()) df.push_back(differential(f, n, r));
  if (2 * k > n + r) return DiffForm(K, n, r, n + r);
  DiffForm out(K, n, r, 2 * k);
  for_each_subset(r, k, [&](const std::vector<int>& s) {
    Scalar weight(K, 1);
    for (int i = 0; i < r; ++i)
      if (!std::binary_search(s.begin(), s.end(), i)) weight *= Scalar(K, static_cast<long>(input.degrees()[i]));
    if (weight.is_zero()) return;
    DiffForm term = DiffForm::one(K, n, r);
    for (int i : s) term = wedge(term, df[i]);
    for (int i : s) term = wedge(term, DiffForm::dy(K, n, r, i));
    out += term.scaled(weight);
  });
  return out;
}

// ---------------------------------------------------------------------------

BasisSlice::BasisSlice(int k, int q, int p, int n, int r, std::vector<FormKey> elements)
    : k_(k), q_(q), p_(p), n_(n), r_(r), elements_(std::move(elements)) {
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
}

std::optional<std::size_t> BasisSlice::index_of(const FormKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

BasisSlice basis(int k, int q, int p, int n, std::span<const int> degrees) {
  const int r = static_cast<int>(degrees.size());
  std::vector<FormKey> out;
  if (k < 0 || p < 0 || k > n + r) return BasisSlice(k, q, p, n, r, {});
  for (int m = std::max(0, k - n); m <= std::min(k, r); ++m) {
    const int l = k - m;
    for_each_subset(n, l, [&](const std::vector<int>& I) {
      for_each_subset(r, m, [&](const std::vector<int>& J) {
        WedgeMask word = 0;
        int jdeg = 0;
        for (int i : I) word |= WedgeMask{1} << i;
        for (int j : J) {
          word |= WedgeMask{1} << (n + j);
          jdeg += degrees[j];
        }
        for_each_composition(p - m, r, [&](const std::vector<int>& b) {
          int xdeg = q + jdeg - l;
          for (int j = 0; j < r; ++j) xdeg += b[j] * degrees[j];
          if (xdeg < 0) return;
          for (auto& a : monomials_of_degree(n, xdeg)) {
            a.insert(a.end(), b.begin(), b.end());
            out.push_back({std::move(a), word});
          }
        });
      });
    });
  }
  std::sort(out.begin(), out.end(), FormKeyLess{});
  return BasisSlice(k, q, p, n, r, std::move(out));
}

BasisSlice basis(int k, int q, int p, const ProblemInput& input) { return basis(k, q, p, input.n(), input.degrees()); }

namespace {

std::size_t binomial_size(long top, long bottom) {
  if (bottom < 0 || top < bottom) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(bottom));
  return b.get_ui();
}

}  // namespace

std::size_t slice_dimension(int k, int q, int p, int n, std::span<const int> degrees) {
  const int r = static_cast<int>(degrees.size());
  if (k < 0 || p < 0 || k > n + r) return 0;
  std::size_t total = 0;
  for (int m = std::max(0, k - n); m <= std::min(k, r); ++m) {
    const int l = k - m;
    std::size_t dx_words = binomial_size(n, l);
    for_each_subset(r, m, [&](const std::vector<int>& J) {
      int jdeg = 0;
      for (int j : J) jdeg += degrees[j];
      for_each_composition(p - m, r, [&](const std::vector<int>& b) {
        long xdeg = q + jdeg - l;
        for (int j = 0; j < r; ++j) xdeg += static_cast<long>(b[j]) * degrees[j];
        if (xdeg < 0) return;
        total += dx_words * (n == 0 ? (xdeg == 0) : binomial_size(xdeg + n - 1, n - 1));
      });
    });
  }
  return total;
}

std::vector<Scalar> coordinates(const DiffForm& w, const BasisSlice& slice, FieldSpec field) {
  std::vector<Scalar> c(slice.size(), Scalar(field));
  for (const auto& [key, v] : w.terms()) {
    auto i = slice.index_of(key);
    if (!i) throw ShapeError("form has a term outside the slice");
    c[*i] = v;
  }
  return c;
}

DiffForm from_coordinates(const std::vector<Scalar>& c, const BasisSlice& slice, FieldSpec field) {
  if (c.size() != slice.size()) throw ShapeError("coordinate vector length mismatch");
  DiffForm w(field, slice.n(), slice.r(), std::clamp(slice.k(), 0, slice.n() + slice.r()));
  for (std::size_t i = 0; i < c.size(); ++i) w.add_term(slice[i], c[i]);
  return w;
}

std::optional<DiffForm> theta_preimage(const DiffForm& eta, int k, int q, int p, const ProblemInput& input) {
  if (eta.n() != input.n() || eta.r() != input.r() || eta.field() != input.field())
    throw ShapeError("form does not match the input system");
  if (k < 1 || eta.degree() != k - 1) throw ShapeError("theta preimage degree mismatch");
  BasisSlice source = basis(k, q, p, input);
  BasisSlice target = basis(k - 1, q, p, input);
  auto rhs = coordinates(eta, target, input.field());
  SparseMatrix m = matrix_of(MapKind::theta, source, target, input);
  auto z = solve(m, rhs);
  if (!z) return std::nullopt;
  return from_coordinates(*z, source, input.field());
}

}  // namespace jring
