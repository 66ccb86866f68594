#include "jring/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>

namespace jring {

SparseMatrix::SparseMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols) {}

void SparseMatrix::add(std::size_t row, std::size_t col, const Scalar& v) {
  if (row >= rows_ || col >= cols_) throw ShapeError("matrix index out of range");
  if (v.field() != field_) throw ShapeError("matrix entry field mismatch");
  if (v.is_zero()) return;
  auto [it, inserted] = data_.try_emplace({col, row}, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) data_.erase(it);
  }
}

Scalar SparseMatrix::at(std::size_t row, std::size_t col) const {
  auto it = data_.find({col, row});
  return it == data_.end() ? Scalar(field_) : it->second;
}

std::size_t SparseMatrix::append_column(const SparseVec& column) {
  std::size_t c = cols_++;
  for (const auto& [r, v] : column) add(r, c, v);
  return c;
}

std::vector<SparseMatrix::Entry> SparseMatrix::entries() const {
  std::vector<Entry> out;
  out.reserve(data_.size());
  for (const auto& [key, v] : data_) out.push_back({key.second, key.first, v});
  return out;
}

std::vector<SparseVec> SparseMatrix::row_vectors() const {
  std::vector<SparseVec> out(rows_);
  for (const auto& [key, v] : data_) out[key.second].emplace_back(key.first, v);
  return out;  // column-major traversal leaves each row sorted
}

std::vector<SparseVec> SparseMatrix::column_vectors() const {
  std::vector<SparseVec> out(cols_);
  for (const auto& [key, v] : data_) out[key.first].emplace_back(key.second, v);
  return out;
}

SparseMatrix SparseMatrix::transposed() const {
  SparseMatrix t(field_, cols_, rows_);
  for (const auto& [key, v] : data_) t.data_.emplace(std::pair{key.second, key.first}, v);
  return t;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.field_ != b.field_ || a.cols_ != b.rows_) throw ShapeError("matrix product shape mismatch");
  SparseMatrix c(a.field_, a.rows_, b.cols_);
  auto acols = a.column_vectors();
  for (const auto& [key, v] : b.data_)
    for (const auto& [r, w] : acols[key.second]) c.add(r, key.first, w * v);
  return c;
}

std::vector<Scalar> multiply(const SparseMatrix& a, const std::vector<Scalar>& x) {
  if (x.size() != a.cols()) throw ShapeError("vector length mismatch");
  std::vector<Scalar> y(a.rows(), Scalar(a.field()));
  for (const auto& e : a.entries()) y[e.row] += e.value * x[e.col];
  return y;
}

// ---------------------------------------------------------------------------
// Sparse rank engine

namespace {

template <class V>
struct WorkVec {
  std::vector<std::uint32_t> idx;
  std::vector<V> val;
  bool alive = true;
};

// Removes singleton vectors and singleton positions until none remain.
// Each removal drops the rank by exactly one and causes no fill.
template <class V>
std::size_t peel_singletons(std::vector<WorkVec<V>>& vecs, std::size_t npos, std::vector<std::uint32_t>& count) {
  std::vector<std::vector<std::uint32_t>> incidence(npos);
  count.assign(npos, 0);
  for (std::uint32_t v = 0; v < vecs.size(); ++v)
    for (auto i : vecs[v].idx) {
      incidence[i].push_back(v);
      ++count[i];
    }
  std::vector<char> pos_alive(npos, 1);
  std::vector<std::uint32_t> vec_queue, pos_queue;
  for (std::uint32_t v = 0; v < vecs.size(); ++v) {
    if (vecs[v].idx.empty()) vecs[v].alive = false;
    else if (vecs[v].idx.size() == 1) vec_queue.push_back(v);
  }
  for (std::uint32_t i = 0; i < npos; ++i)
    if (count[i] == 1) pos_queue.push_back(i);

  std::size_t rank = 0;
  while (!vec_queue.empty() || !pos_queue.empty()) {
    if (!vec_queue.empty()) {
      std::uint32_t v = vec_queue.back();
      vec_queue.pop_back();
      auto& w = vecs[v];
      if (!w.alive || w.idx.size() != 1) continue;
      std::uint32_t c = w.idx[0];
      ++rank;
      w.alive = false;
      pos_alive[c] = 0;
      count[c] = 0;
      for (auto u : incidence[c]) {
        auto& x = vecs[u];
        if (!x.alive) continue;
        auto it = std::lower_bound(x.idx.begin(), x.idx.end(), c);
        if (it == x.idx.end() || *it != c) continue;
        auto off = it - x.idx.begin();
        x.idx.erase(it);
        x.val.erase(x.val.begin() + off);
        if (x.idx.empty()) x.alive = false;
        else if (x.idx.size() == 1) vec_queue.push_back(u);
      }
    } else {
      std::uint32_t c = pos_queue.back();
      pos_queue.pop_back();
      if (!pos_alive[c] || count[c] != 1) continue;
      std::uint32_t owner = 0;
      bool found = false;
      for (auto u : incidence[c])
        if (vecs[u].alive && std::binary_search(vecs[u].idx.begin(), vecs[u].idx.end(), c)) {
          owner = u;
          found = true;
          break;
        }
      if (!found) continue;
      ++rank;
      auto& w = vecs[owner];
      w.alive = false;
      pos_alive[c] = 0;
      for (auto q : w.idx) {
        if (count[q] > 0) --count[q];
        if (pos_alive[q] && count[q] == 1) pos_queue.push_back(q);
      }
    }
  }
  return rank;
}

// Compacts the surviving vectors: positions relabelled by ascending
// occurrence count, vectors sorted by ascending length.
template <class V>
std::size_t compact(std::vector<WorkVec<V>>& vecs, std::size_t npos, const std::vector<std::uint32_t>& count) {
  std::vector<std::uint32_t> used;
  for (std::uint32_t i = 0; i < npos; ++i)
    if (count[i] > 0) used.push_back(i);
  std::stable_sort(used.begin(), used.end(), [&](auto a, auto b) { return count[a] < count[b]; });
  std::vector<std::uint32_t> relabel(npos, 0);
  for (std::uint32_t k = 0; k < used.size(); ++k) relabel[used[k]] = k;

  std::vector<WorkVec<V>> kept;
  for (auto& w : vecs) {
    if (!w.alive) continue;
    std::vector<std::pair<std::uint32_t, V>> tmp;
    tmp.reserve(w.idx.size());
    for (std::size_t j = 0; j < w.idx.size(); ++j) tmp.emplace_back(relabel[w.idx[j]], std::move(w.val[j]));
    std::sort(tmp.begin(), tmp.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    WorkVec<V> n;
    for (auto& [i, v] : tmp) {
      n.idx.push_back(i);
      n.val.push_back(std::move(v));
    }
    kept.push_back(std::move(n));
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.idx.size() < b.idx.size(); });
  vecs = std::move(kept);
  return used.size();
}

// Swaps the roles of vectors and positions; elimination wastes work on
// every vector that reduces to zero, so it should run over the shorter side.
template <class V>
std::size_t transpose_if_taller(std::vector<WorkVec<V>>& vecs, std::size_t npos) {
  if (vecs.size() <= npos) return npos;
  std::vector<WorkVec<V>> t(npos);
  for (std::uint32_t v = 0; v < vecs.size(); ++v)
    for (std::size_t j = 0; j < vecs[v].idx.size(); ++j) {
      t[vecs[v].idx[j]].idx.push_back(v);
      t[vecs[v].idx[j]].val.push_back(std::move(vecs[v].val[j]));
    }
  std::size_t n = vecs.size();
  std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.idx.size() < b.idx.size(); });
  vecs = std::move(t);
  return n;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::size_t eliminate_mod(std::vector<WorkVec<std::uint32_t>>& vecs, std::size_t npos, std::uint32_t p) {
  struct Row {
    std::vector<std::uint32_t> idx;
    std::vector<std::uint32_t> val;
  };
  std::vector<Row> pivots;
  std::vector<std::int32_t> pivot_at(npos, -1);
  std::vector<std::uint64_t> acc(npos, 0);
  std::vector<char> touched(npos, 0);
  // min-heap of touched positions
  std::vector<std::uint32_t> heap;
  auto touch = [&](std::uint32_t t) {
    if (touched[t]) return;
    touched[t] = 1;
    heap.push_back(t);
    std::push_heap(heap.begin(), heap.end(), std::greater<>());
  };
  for (auto& w : vecs) {
    if (pivots.size() == npos) break;
    for (std::size_t j = 0; j < w.idx.size(); ++j) {
      acc[w.idx[j]] = w.val[j];
      touch(w.idx[j]);
    }
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), std::greater<>());
      std::uint32_t c = heap.back();
      heap.pop_back();
      touched[c] = 0;
      std::uint64_t a = acc[c];
      if (a == 0) continue;
      if (pivot_at[c] >= 0) {
        const Row& piv = pivots[pivot_at[c]];
        std::uint64_t factor = p - a;
        acc[c] = 0;
        for (std::size_t j = 1; j < piv.idx.size(); ++j) {
          auto t = piv.idx[j];
          acc[t] = (acc[t] + factor * piv.val[j]) % p;
          touch(t);
        }
        continue;
      }
      Row row;
      std::uint64_t inv = inv_mod(static_cast<std::uint32_t>(a), p);
      row.idx.push_back(c);
      row.val.push_back(1);
      acc[c] = 0;
      std::sort(heap.begin(), heap.end());
      for (auto t : heap) {
        touched[t] = 0;
        if (acc[t] == 0) continue;
        row.idx.push_back(t);
        row.val.push_back(static_cast<std::uint32_t>(acc[t] * inv % p));
        acc[t] = 0;
      }
      heap.clear();
      pivot_at[c] = static_cast<std::int32_t>(pivots.size());
      pivots.push_back(std::move(row));
    }
  }
  return pivots.size();
}

void make_primitive(std::map<std::uint32_t, mpz_class>& row) {
  mpz_class g = 0;
  for (const auto& [i, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& [i, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

std::size_t eliminate_integer(std::vector<WorkVec<mpz_class>>& vecs, std::size_t npos) {
  using Row = std::vector<std::pair<std::uint32_t, mpz_class>>;
  std::vector<Row> pivots;
  std::vector<std::int32_t> pivot_at(npos, -1);
  for (auto& w : vecs) {
    if (pivots.size() == npos) break;
    std::map<std::uint32_t, mpz_class> acc;
    for (std::size_t j = 0; j < w.idx.size(); ++j) acc.emplace(w.idx[j], std::move(w.val[j]));
    make_primitive(acc);
    while (!acc.empty()) {
      auto [c, a] = *acc.begin();
      if (pivot_at[c] < 0) {
        make_primitive(acc);
        Row row(acc.begin(), acc.end());
        pivot_at[c] = static_cast<std::int32_t>(pivots.size());
        pivots.push_back(std::move(row));
        break;
      }
      // acc <- (lead/g)·acc − (a/g)·pivot, which clears position c
      const Row& piv = pivots[pivot_at[c]];
      mpz_class g = gcd(a, piv.front().second);
      mpz_class scale_acc = piv.front().second / g;
      mpz_class scale_piv = a / g;
      if (scale_acc != 1)
        for (auto& [i, v] : acc) v *= scale_acc;
      for (const auto& [i, v] : piv) {
        auto it = acc.try_emplace(i, 0).first;
        it->second -= scale_piv * v;
        if (it->second == 0) acc.erase(it);
      }
      make_primitive(acc);
    }
  }
  return pivots.size();
}

}  // namespace

std::size_t rank(const SparseMatrix& m) {
  if (m.is_zero()) return 0;
  // Work on the longer dimension as the set of vectors.
  bool by_columns = m.cols() >= m.rows();
  auto source = by_columns ? m.column_vectors() : m.row_vectors();
  std::size_t npos = by_columns ? m.rows() : m.cols();

  if (!m.field().is_rationals()) {
    std::vector<WorkVec<std::uint32_t>> vecs(source.size());
    for (std::size_t v = 0; v < source.size(); ++v)
      for (const auto& [i, s] : source[v]) {
        vecs[v].idx.push_back(static_cast<std::uint32_t>(i));
        vecs[v].val.push_back(s.residue());
      }
    std::vector<std::uint32_t> count;
    std::size_t r = peel_singletons(vecs, npos, count);
    std::size_t left = compact(vecs, npos, count);
    left = transpose_if_taller(vecs, left);
    return r + eliminate_mod(vecs, left, m.field().modulus());
  }

  // Over Q each vector is scaled to a primitive integer vector first.
  std::vector<WorkVec<mpz_class>> vecs(source.size());
  for (std::size_t v = 0; v < source.size(); ++v) {
    mpz_class l = 1;
    for (const auto& [i, s] : source[v]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.rational().get_den_mpz_t());
    for (const auto& [i, s] : source[v]) {
      vecs[v].idx.push_back(static_cast<std::uint32_t>(i));
      vecs[v].val.push_back(mpz_class(s.rational().get_num() * (l / s.rational().get_den())));
    }
  }
  std::vector<std::uint32_t> count;
  std::size_t r = peel_singletons(vecs, npos, count);
  std::size_t left = compact(vecs, npos, count);
  left = transpose_if_taller(vecs, left);
  return r + eliminate_integer(vecs, left);
}

std::size_t dense_rank(const SparseMatrix& m) {
  std::vector<std::vector<Scalar>> a(m.rows(), std::vector<Scalar>(m.cols(), Scalar(m.field())));
  for (const auto& e : m.entries()) a[e.row][e.col] = e.value;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && a[piv][c].is_zero()) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[r]);
    Scalar inv = a[r][c].inverse();
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (a[i][c].is_zero()) continue;
      Scalar f = a[i][c] * inv;
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Echelon form, solve, kernel

namespace {

// v − c·w, both sorted.
SparseVec axpy(const SparseVec& v, const Scalar& c, const SparseVec& w) {
  SparseVec out;
  out.reserve(v.size() + w.size());
  std::size_t i = 0, j = 0;
  while (i < v.size() || j < w.size()) {
    if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
      out.push_back(v[i++]);
    } else if (i == v.size() || w[j].first < v[i].first) {
      out.emplace_back(w[j].first, -(c * w[j].second));
      ++j;
    } else {
      Scalar s = v[i].second - c * w[j].second;
      if (!s.is_zero()) out.emplace_back(v[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

SparseVec Echelon::reduce(SparseVec v) const {
  std::size_t k = 0;
  while (k < v.size()) {
    auto it = pivots_.find(v[k].first);
    if (it == pivots_.end()) {
      ++k;
      continue;
    }
    Scalar c = v[k].second;
    v = axpy(v, c, it->second);
  }
  return v;
}

bool Echelon::insert(SparseVec v) {
  // only the leading entry has to avoid existing pivots
  while (!v.empty()) {
    auto it = pivots_.find(v.front().first);
    if (it == pivots_.end()) break;
    Scalar c = v.front().second;
    v = axpy(v, c, it->second);
  }
  if (v.empty()) return false;
  Scalar inv = v.front().second.inverse();
  for (auto& [i, s] : v) s *= inv;
  std::size_t lead = v.front().first;
  pivots_.emplace(lead, std::move(v));
  return true;
}

std::optional<std::vector<Scalar>> solve(const SparseMatrix& a, const std::vector<Scalar>& b) {
  if (b.size() != a.rows()) throw ShapeError("right-hand side length mismatch");
  const std::size_t n = a.cols();
  Echelon ech(a.field());
  auto rows = a.row_vectors();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SparseVec row = std::move(rows[i]);
    if (!b[i].is_zero()) row.emplace_back(n, b[i]);
    ech.insert(std::move(row));
  }
  if (ech.has_pivot(n)) return std::nullopt;
  std::vector<Scalar> z(n, Scalar(a.field()));
  const auto& piv = ech.pivots();
  for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
    Scalar value(a.field());
    for (std::size_t j = 1; j < it->second.size(); ++j) {
      const auto& [col, c] = it->second[j];
      if (col == n)
        value += c;
      else
        value -= c * z[col];
    }
    z[it->first] = value;
  }
  return z;
}

std::vector<std::vector<Scalar>> kernel_basis(const SparseMatrix& a) {
  Echelon ech(a.field());
  for (auto& row : a.row_vectors()) ech.insert(std::move(row));
  std::vector<std::vector<Scalar>> basis;
  const auto& piv = ech.pivots();
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (ech.has_pivot(f)) continue;
    std::vector<Scalar> z(a.cols(), Scalar(a.field()));
    z[f] = Scalar(a.field(), 1);
    for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
      if (it->first > f) continue;
      Scalar value(a.field());
      for (std::size_t j = 1; j < it->second.size(); ++j) value -= it->second[j].second * z[it->second[j].first];
      z[it->first] = value;
    }
    basis.push_back(std::move(z));
  }
  return basis;
}

}  // namespace jring
