#include "jring/quotient.hpp"

#include <algorithm>
#include <limits>

namespace jring {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::vector<SparseVec> multiples(const std::vector<MultiPoly>& gens, int nvars, FieldSpec field, int degree,
                                 const std::unordered_map<Exponents, std::size_t, ExponentsHash>& index) {
  std::vector<SparseVec> out;
  for (const auto& g : gens) {
    if (g.nvars() != nvars || g.field() != field) throw ShapeError("generator does not match the ring");
    if (g.is_zero()) continue;
    auto e = g.homogeneous_degree();
    if (!e) throw Error("generator is not homogeneous");
    for (const auto& m : monomials_of_degree(nvars, degree - *e)) {
      SparseVec v;
      for (const auto& [exps, c] : g.terms()) {
        Exponents prod = m;
        for (int i = 0; i < nvars; ++i) prod[i] += exps[i];
        v.emplace_back(index.at(prod), c);
      }
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::unordered_map<Exponents, std::size_t, ExponentsHash> index_monomials(const std::vector<Exponents>& ms) {
  std::unordered_map<Exponents, std::size_t, ExponentsHash> index;
  index.reserve(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) index.emplace(ms[i], i);
  return index;
}

}  // namespace

QuotientSlice::QuotientSlice(FieldSpec, int nvars, int degree, std::vector<Exponents> monomials, Echelon image)
    : nvars_(nvars), degree_(degree), monomials_(std::move(monomials)), image_(std::move(image)) {
  index_ = index_monomials(monomials_);
  complement_slot_.assign(monomials_.size(), kNone);
  for (std::size_t i = 0; i < monomials_.size(); ++i)
    if (!image_.has_pivot(i)) {
      complement_slot_[i] = complement_.size();
      complement_.push_back(i);
    }
}

std::optional<std::size_t> QuotientSlice::index_of(const Exponents& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SparseVec QuotientSlice::normal_form(SparseVec v) const {
  SparseVec reduced = image_.reduce(std::move(v));
  for (auto& [i, c] : reduced) {
    if (complement_slot_[i] == kNone) throw ArithmeticError("normal form left a pivot position");
    i = complement_slot_[i];
  }
  return reduced;
}

SparseVec QuotientSlice::normal_form(const MultiPoly& h) const {
  if (h.nvars() != nvars_) throw ShapeError("polynomial does not match the ring");
  SparseVec v;
  for (const auto& [e, c] : h.terms()) {
    auto i = index_of(e);
    if (!i) throw ShapeError("polynomial is not of the slice degree");
    v.emplace_back(*i, c);
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return normal_form(std::move(v));
}

QuotientSlice quotient_slice(const std::vector<MultiPoly>& gens, int nvars, FieldSpec field, int degree) {
  auto ms = monomials_of_degree(nvars, degree);
  auto index = index_monomials(ms);
  Echelon image(field);
  for (auto& v : multiples(gens, nvars, field, degree, index)) image.insert(std::move(v));
  return QuotientSlice(field, nvars, degree, std::move(ms), std::move(image));
}

std::size_t quotient_dimension(const std::vector<MultiPoly>& gens, int nvars, FieldSpec field, int degree) {
  auto ms = monomials_of_degree(nvars, degree);
  if (ms.empty()) return 0;
  auto rows = multiples(gens, nvars, field, degree, index_monomials(ms));
  SparseMatrix m(field, rows.size(), ms.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) m.add(r, c, v);
  return ms.size() - rank(m);
}

}  // namespace jring
