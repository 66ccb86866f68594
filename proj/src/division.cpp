#include "jring/division.hpp"

#include <algorithm>
#include <bit>

namespace jring {

namespace {

void check_x_form(const DiffForm& w, int n, FieldSpec field) {
  if (w.r() != 0) throw ShapeError("division works with x-only forms (r = 0)");
  if (w.n() != n || w.field() != field) throw ShapeError("form shape mismatch");
}

/// Coefficient spaces K[x]_D or (K[x]/I)_D, cached per degree.
class CoefficientSpace {
 public:
  CoefficientSpace(FieldSpec field, int n, std::vector<MultiPoly> ideal)
      : field_(field), n_(n), ideal_(std::move(ideal)) {}

  FieldSpec field() const { return field_; }
  int n() const { return n_; }

  const QuotientSlice& slice(int degree) {
    auto it = cache_.find(degree);
    if (it == cache_.end()) it = cache_.emplace(degree, quotient_slice(ideal_, n_, field_, degree)).first;
    return it->second;
  }

 private:
  FieldSpec field_;
  int n_;
  std::vector<MultiPoly> ideal_;
  std::map<int, QuotientSlice> cache_;
};

std::vector<WedgeMask> words_of_size(int n, int k) {
  std::vector<WedgeMask> out;
  if (k < 0 || k > n) return out;
  for (WedgeMask m = 0; m < (WedgeMask{1} << n); ++m)
    if (std::popcount(m) == k) out.push_back(m);
  return out;
}

/// Coordinates of k-forms of a fixed weight: word-major, then complement index.
class Layout {
 public:
  Layout(CoefficientSpace& space, int k, int weight) : space_(space), k_(k), weight_(weight) {
    const int degree = weight - k;
    for (WedgeMask w : words_of_size(space.n(), k)) {
      words_.push_back(w);
      offsets_.push_back(size_);
      if (degree >= 0) size_ += space.slice(degree).dimension();
    }
  }

  std::size_t size() const { return size_; }
  int degree() const { return weight_ - k_; }

  SparseVec coordinates(const DiffForm& w) const {
    if (w.is_zero()) return {};
    if (w.degree() != k_) throw ShapeError("form degree does not match the layout");
    const QuotientSlice& qs = space_.slice(degree());
    std::map<WedgeMask, SparseVec> per_word;
    for (const auto& [key, c] : w.terms()) {
      auto i = qs.index_of(key.exps);
      if (!i) throw ShapeError("form is not of the layout weight");
      per_word[key.word].emplace_back(*i, c);
    }
    SparseVec out;
    for (auto& [word, v] : per_word) {
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      std::size_t base = offsets_[word_index(word)];
      for (auto& [i, c] : qs.normal_form(std::move(v))) out.emplace_back(base + i, c);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  FormKey element(std::size_t index) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
    std::size_t w = static_cast<std::size_t>(it - offsets_.begin()) - 1;
    const QuotientSlice& qs = space_.slice(degree());
    return {qs.monomials()[qs.complement()[index - offsets_[w]]], words_[w]};
  }

  DiffForm form(const std::vector<Scalar>& c) const {
    DiffForm out(space_.field(), space_.n(), 0, k_);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero()) out.add_term(element(i), c[i]);
    return out;
  }

 private:
  std::size_t word_index(WedgeMask w) const {
    auto it = std::lower_bound(words_.begin(), words_.end(), w);
    if (it == words_.end() || *it != w) throw ShapeError("wedge word outside the layout");
    return static_cast<std::size_t>(it - words_.begin());
  }

  CoefficientSpace& space_;
  int k_;
  int weight_;
  std::vector<WedgeMask> words_;
  std::vector<std::size_t> offsets_;
  std::size_t size_ = 0;
};

std::vector<std::vector<int>> subsets(int size, int count) {
  std::vector<std::vector<int>> out;
  for (WedgeMask m : words_of_size(size, count)) {
    std::vector<int> s;
    for (int i = 0; i < size; ++i)
      if (m >> i & 1) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

DiffForm product_of(const std::vector<DiffForm>& multipliers, const std::vector<int>& subset, FieldSpec field, int n) {
  DiffForm out = DiffForm::one(field, n, 0);
  for (int i : subset) out = wedge(out, multipliers[i]);
  return out;
}

}  // namespace

std::optional<int> form_weight(const DiffForm& w) {
  if (w.is_zero()) return std::nullopt;
  auto b = w.bidegree({});
  if (!b) return std::nullopt;
  return b->q;
}

std::optional<DivisionSolution> wedge_division_solve(const DiffForm& omega, const std::vector<DiffForm>& multipliers,
                                                     const DivisionOptions& options) {
  const FieldSpec field = omega.field();
  const int n = omega.n();
  const int r = static_cast<int>(multipliers.size());
  check_x_form(omega, n, field);
  for (const auto& w : multipliers) {
    check_x_form(w, n, field);
    if (!w.is_zero() && !form_weight(w)) throw ShapeError("multiplier is not homogeneous");
  }
  if (r == 0) throw ShapeError("no multipliers");
  int size = 0;
  switch (options.shape) {
    case DivisionShape::saito: size = 1; break;
    case DivisionShape::full_product: size = r; break;
    case DivisionShape::generalized:
      if (options.s < 1 || options.s > r) throw ShapeError("generalized shape needs 1 <= s <= r");
      size = r - options.s + 1;
      break;
  }
  std::vector<MultiPoly> ideal;
  if (options.over == DivisionRing::quotient) ideal = options.ideal;
  CoefficientSpace space(field, n, ideal);

  DivisionSolution solution;
  solution.subsets = subsets(r, size);
  std::vector<DiffForm> products;
  for (const auto& s : solution.subsets) products.push_back(product_of(multipliers, s, field, n));

  int g_degree = 0;
  if (options.saturation) {
    if (options.saturation->nvars() != n || options.saturation->field() != field)
      throw ShapeError("saturating polynomial does not match the ring");
    auto e = options.saturation->homogeneous_degree();
    if (!e) throw ShapeError("saturating polynomial is not homogeneous");
    g_degree = *e;
  }

  auto zero_alphas = [&] {
    solution.alphas.clear();
    for (const auto& p : products) solution.alphas.emplace_back(field, n, 0, std::max(0, omega.degree() - p.degree()));
  };
  DiffForm reduced = reduce_form(omega, ideal);
  if (reduced.is_zero()) {
    zero_alphas();
    return solution;
  }
  auto weight = form_weight(omega);
  if (!weight) throw ShapeError("form is not homogeneous");
  const int k = omega.degree();
  const int m_max = options.saturation ? options.m_max : 0;

  DiffForm target = omega;
  for (int m = 0; m <= m_max; ++m) {
    if (m > 0) target = target.multiplied(*options.saturation);
    const int tw = *weight + m * g_degree;
    Layout rows(space, k, tw);
    auto rhs_sparse = rows.coordinates(target);
    if (rhs_sparse.empty()) {
      solution.m = m;
      zero_alphas();
      return solution;
    }
    SparseMatrix a(field, rows.size(), 0);
    std::vector<Layout> unknowns;
    std::vector<std::size_t> first_column;
    for (const auto& p : products) {
      first_column.push_back(a.cols());
      const int ak = k - p.degree();
      auto pw = form_weight(p);
      if (ak < 0 || !pw) {
        unknowns.emplace_back(space, std::max(ak, 0), -1);
        continue;
      }
      unknowns.emplace_back(space, ak, tw - *pw);
      const Layout& u = unknowns.back();
      for (std::size_t j = 0; j < u.size(); ++j) {
        DiffForm e = DiffForm::monomial(field, n, 0, u.element(j), Scalar(field, 1));
        a.append_column(rows.coordinates(wedge(p, e)));
      }
    }
    std::vector<Scalar> rhs(rows.size(), Scalar(field));
    for (const auto& [i, c] : rhs_sparse) rhs[i] = c;
    auto z = solve(a, rhs);
    if (!z) continue;
    solution.m = m;
    solution.alphas.clear();
    for (std::size_t s = 0; s < products.size(); ++s) {
      const Layout& u = unknowns[s];
      std::vector<Scalar> part(z->begin() + first_column[s], z->begin() + first_column[s] + u.size());
      const int ak = std::max(0, k - products[s].degree());
      solution.alphas.push_back(u.size() ? u.form(part) : DiffForm(field, n, 0, ak));
    }
    return solution;
  }
  return std::nullopt;
}

DiffForm division_combination(const std::vector<DiffForm>& multipliers, const DivisionSolution& solution) {
  if (multipliers.empty()) throw ShapeError("no multipliers");
  if (solution.subsets.size() != solution.alphas.size()) throw ShapeError("malformed division solution");
  const FieldSpec field = multipliers[0].field();
  const int n = multipliers[0].n();
  std::optional<DiffForm> total;
  for (std::size_t s = 0; s < solution.subsets.size(); ++s) {
    DiffForm term = wedge(product_of(multipliers, solution.subsets[s], field, n), solution.alphas[s]);
    if (!total) total = term;
    else if (term.degree() == total->degree()) *total += term;
  }
  return total ? *total : DiffForm(field, n, 0, 0);
}

DiffForm reduce_form(const DiffForm& w, const std::vector<MultiPoly>& ideal) {
  check_x_form(w, w.n(), w.field());
  if (ideal.empty()) return w;
  CoefficientSpace space(w.field(), w.n(), ideal);
  std::map<std::pair<WedgeMask, int>, SparseVec> groups;
  for (const auto& [key, c] : w.terms()) {
    int degree = total_degree(key.exps);
    const QuotientSlice& qs = space.slice(degree);
    groups[{key.word, degree}].emplace_back(*qs.index_of(key.exps), c);
  }
  DiffForm out(w.field(), w.n(), 0, w.degree());
  for (auto& [where, v] : groups) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const QuotientSlice& qs = space.slice(where.second);
    for (const auto& [i, c] : qs.normal_form(std::move(v)))
      out.add_term({qs.monomials()[qs.complement()[i]], where.first}, c);
  }
  return out;
}

std::vector<DiffForm> wedge_annihilator(const std::vector<DiffForm>& multipliers, int k, int weight,
                                        const std::vector<MultiPoly>& ideal) {
  if (multipliers.empty()) throw ShapeError("no multipliers");
  const FieldSpec field = multipliers[0].field();
  const int n = multipliers[0].n();
  for (const auto& w : multipliers) check_x_form(w, n, field);
  if (k < 0 || k > n) return {};
  CoefficientSpace space(field, n, ideal);
  Layout source(space, k, weight);
  std::vector<Layout> targets;
  std::vector<const DiffForm*> active;
  std::size_t rows = 0;
  for (const auto& w : multipliers) {
    auto mw = form_weight(w);
    if (!mw) continue;
    if (!w.is_zero() && w.degree() + k > n) continue;
    targets.emplace_back(space, k + w.degree(), weight + *mw);
    active.push_back(&w);
    rows += targets.back().size();
  }
  SparseMatrix a(field, rows, 0);
  for (std::size_t j = 0; j < source.size(); ++j) {
    DiffForm e = DiffForm::monomial(field, n, 0, source.element(j), Scalar(field, 1));
    SparseVec column;
    std::size_t offset = 0;
    for (std::size_t t = 0; t < active.size(); ++t) {
      for (auto& [i, c] : targets[t].coordinates(wedge(*active[t], e))) column.emplace_back(offset + i, c);
      offset += targets[t].size();
    }
    a.append_column(column);
  }
  std::vector<DiffForm> out;
  for (const auto& v : kernel_basis(a)) out.push_back(source.form(v));
  return out;
}

}  // namespace jring
