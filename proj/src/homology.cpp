#include "jring/homology.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace jring {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  std::size_t width = threads > 0 ? static_cast<std::size_t>(threads) : std::max(1u, std::thread::hardware_concurrency());
  width = std::min(width, count);
  if (width <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < width; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> g(failure_lock);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

SparseMatrix matrix_of(const std::function<DiffForm(const DiffForm&)>& op, const BasisSlice& source,
                       const BasisSlice& target, FieldSpec field) {
  SparseMatrix m(field, target.size(), source.size());
  for (std::size_t j = 0; j < source.size(); ++j) {
    DiffForm image = op(DiffForm::monomial(field, source.n(), source.r(), source[j], Scalar(field, 1)));
    for (const auto& [key, c] : image.terms()) {
      auto i = target.index_of(key);
      if (!i) throw ShapeError("image leaves the target slice");
      m.add(*i, j, c);
    }
  }
  return m;
}

namespace {

struct OneFormTerm {
  Exponents exps;
  int bit;
  Scalar coeff;
};

std::vector<OneFormTerm> one_form_terms(const DiffForm& w) {
  std::vector<OneFormTerm> out;
  for (const auto& [key, c] : w.terms()) out.push_back({key.exps, std::countr_zero(key.word), c});
  return out;
}

void check_slices(const BasisSlice& s, const BasisSlice& t, int dk, int dp, const ProblemInput& input) {
  if (s.n() != input.n() || s.r() != input.r() || t.n() != input.n() || t.r() != input.r())
    throw ShapeError("slice does not match the input system");
  if (t.k() != s.k() + dk || t.q() != s.q() || t.p() != s.p() + dp)
    throw ShapeError("target slice has the wrong bidegree for this map");
}

}  // namespace

SparseMatrix matrix_of(MapKind kind, const BasisSlice& source, const BasisSlice& target, const ProblemInput& input) {
  const FieldSpec field = input.field();
  const int n = input.n(), r = input.r(), nv = n + r;
  SparseMatrix m(field, target.size(), source.size());
  if (kind == MapKind::theta) {
    check_slices(source, target, -1, 0, input);
    std::vector<Scalar> dy_weight;
    for (int d : input.degrees()) dy_weight.push_back(-Scalar(field, static_cast<long>(d)));
    const Scalar one(field, 1);
    for (std::size_t j = 0; j < source.size(); ++j) {
      const FormKey& key = source[j];
      WedgeMask rest = key.word;
      int position = 0;
      FormKey t;
      while (rest) {
        int b = std::countr_zero(rest);
        rest &= rest - 1;
        t.exps = key.exps;
        t.exps[b] += 1;
        t.word = key.word & ~(WedgeMask{1} << b);
        Scalar v = b >= n ? dy_weight[b - n] : one;
        if (position++ % 2) v = -v;
        if (v.is_zero()) continue;
        auto i = target.index_of(t);
        if (!i) throw ShapeError("image leaves the target slice");
        m.add(*i, j, v);
      }
    }
    return m;
  }
  check_slices(source, target, 1, 1, input);
  BoundaryPart part = kind == MapKind::boundary_full ? BoundaryPart::full
                      : kind == MapKind::boundary_h  ? BoundaryPart::horizontal
                                                     : BoundaryPart::vertical;
  auto terms = one_form_terms(boundary_multiplier(input, part));
  FormKey t{Exponents(nv), 0};
  for (std::size_t j = 0; j < source.size(); ++j) {
    const FormKey& key = source[j];
    for (const auto& term : terms) {
      WedgeMask bit = WedgeMask{1} << term.bit;
      if (key.word & bit) continue;
      for (int v = 0; v < nv; ++v) t.exps[v] = key.exps[v] + term.exps[v];
      t.word = key.word | bit;
      auto i = target.index_of(t);
      if (!i) throw ShapeError("image leaves the target slice");
      bool odd = std::popcount(key.word & (bit - 1)) % 2;
      m.add(*i, j, odd ? -term.coeff : term.coeff);
    }
  }
  return m;
}

SparseMatrix boundary_matrix(const ProblemInput& input, int k, int q, int p) {
  BasisSlice s = basis(k, q, p, input);
  BasisSlice t = basis(k + 1, q, p + 1, input);
  return matrix_of(MapKind::boundary_full, s, t, input);
}

std::size_t boundary_rank(const ProblemInput& input, int k, int q, int p) {
  if (k < 0 || p < 0 || k + 1 > input.n() + input.r()) return 0;
  if (slice_dimension(k, q, p, input.n(), input.degrees()) == 0 ||
      slice_dimension(k + 1, q, p + 1, input.n(), input.degrees()) == 0)
    return 0;
  return rank(boundary_matrix(input, k, q, p));
}

std::size_t cohomology_dim(const ProblemInput& input, int k, int q, int p) {
  std::size_t dim = slice_dimension(k, q, p, input.n(), input.degrees());
  if (dim == 0) return 0;
  std::size_t out = boundary_rank(input, k, q, p);
  std::size_t in = boundary_rank(input, k - 1, q, p - 1);
  if (out + in > dim) throw ArithmeticError("boundary ranks exceed slice dimension");
  return dim - out - in;
}

std::size_t CohomologyReport::at(int k, int q, int p) const {
  auto it = dims.find({k, q, p});
  if (it == dims.end()) throw Error("slice not in report");
  return it->second;
}

CohomologyReport compute_cohomology(const ProblemInput& input, const std::vector<SliceKey>& slices, int threads) {
  std::map<SliceKey, std::size_t> rank_slot;  // keyed by the map's source slice
  std::vector<SliceKey> maps;
  auto need = [&](SliceKey s) {
    if (s.k < 0 || s.p < 0 || s.k + 1 > input.n() + input.r()) return;
    if (rank_slot.emplace(s, maps.size()).second) maps.push_back(s);
  };
  for (const auto& s : slices) {
    need(s);
    need({s.k - 1, s.q, s.p - 1});
  }
  std::vector<std::size_t> ranks(maps.size());
  std::vector<double> secs(maps.size());
  parallel_for(maps.size(), threads, [&](std::size_t i) {
    auto start = std::chrono::steady_clock::now();
    ranks[i] = boundary_rank(input, maps[i].k, maps[i].q, maps[i].p);
    secs[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });
  CohomologyReport report;
  report.input_hash = input.hash();
  report.field = input.field();
  auto lookup = [&](SliceKey s, double& t) -> std::size_t {
    auto it = rank_slot.find(s);
    if (it == rank_slot.end()) return 0;
    t += secs[it->second];
    return ranks[it->second];
  };
  for (const auto& s : slices) {
    double t = 0;
    std::size_t dim = slice_dimension(s.k, s.q, s.p, input.n(), input.degrees());
    std::size_t out = lookup(s, t), in = lookup({s.k - 1, s.q, s.p - 1}, t);
    if (out + in > dim) throw ArithmeticError("boundary ranks exceed slice dimension");
    report.dims[s] = dim - out - in;
    report.seconds[s] = t;
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

struct KoszulData {
  int nvars;
  FieldSpec field;
  std::vector<int> degrees;
};

KoszulData koszul_data(const std::vector<MultiPoly>& gens) {
  if (gens.empty()) throw ShapeError("Koszul complex needs at least one generator");
  if (gens.size() > 30) throw ShapeError("too many Koszul generators");
  KoszulData d{gens[0].nvars(), gens[0].field(), {}};
  for (const auto& g : gens) {
    if (g.nvars() != d.nvars || g.field() != d.field) throw ShapeError("Koszul generators differ in shape");
    auto deg = g.homogeneous_degree();
    if (g.is_zero())
      deg = 0;  // the zero map; any degree is consistent, take 0
    if (!deg) throw Error("Koszul generator is not homogeneous");
    d.degrees.push_back(*deg);
  }
  return d;
}

std::vector<std::uint32_t> subsets_of_size(int size, int k) {
  std::vector<std::uint32_t> out;
  if (k < 0 || k > size) return out;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << size); ++s)
    if (std::popcount(s) == k) out.push_back(s);
  return out;
}

int subset_degree(std::uint32_t s, const std::vector<int>& degrees) {
  int t = 0;
  for (std::size_t j = 0; j < degrees.size(); ++j)
    if (s >> j & 1) t += degrees[j];
  return t;
}

struct KoszulBasis {
  std::vector<std::uint32_t> subsets;
  std::vector<std::size_t> offsets;
  std::vector<std::vector<Exponents>> monomials;
  std::vector<std::unordered_map<Exponents, std::size_t, ExponentsHash>> index;
  std::size_t size = 0;
};

KoszulBasis koszul_basis(const KoszulData& d, int k, int i) {
  KoszulBasis b;
  for (auto s : subsets_of_size(static_cast<int>(d.degrees.size()), k)) {
    b.subsets.push_back(s);
    b.offsets.push_back(b.size);
    auto ms = monomials_of_degree(d.nvars, i + subset_degree(s, d.degrees));
    std::unordered_map<Exponents, std::size_t, ExponentsHash> idx;
    for (std::size_t m = 0; m < ms.size(); ++m) idx.emplace(ms[m], m);
    b.size += ms.size();
    b.monomials.push_back(std::move(ms));
    b.index.push_back(std::move(idx));
  }
  return b;
}

}  // namespace

std::size_t koszul_chain_dim(const std::vector<MultiPoly>& gens, int k, int i) {
  KoszulData d = koszul_data(gens);
  std::size_t total = 0;
  for (auto s : subsets_of_size(static_cast<int>(d.degrees.size()), k))
    total += monomials_of_degree(d.nvars, i + subset_degree(s, d.degrees)).size();
  return total;
}

SparseMatrix koszul_matrix(const std::vector<MultiPoly>& gens, int k, int i) {
  KoszulData d = koszul_data(gens);
  KoszulBasis src = koszul_basis(d, k, i), dst = koszul_basis(d, k + 1, i);
  SparseMatrix m(d.field, dst.size, src.size);
  std::map<std::uint32_t, std::size_t> dst_pos;
  for (std::size_t s = 0; s < dst.subsets.size(); ++s) dst_pos.emplace(dst.subsets[s], s);
  const int r = static_cast<int>(gens.size());
  for (std::size_t s = 0; s < src.subsets.size(); ++s) {
    std::uint32_t S = src.subsets[s];
    for (int j = 0; j < r; ++j) {
      if (S >> j & 1) continue;
      std::size_t t = dst_pos.at(S | (std::uint32_t{1} << j));
      bool odd = std::popcount(S & ((std::uint32_t{1} << j) - 1)) % 2;
      for (std::size_t a = 0; a < src.monomials[s].size(); ++a) {
        const Exponents& mono = src.monomials[s][a];
        for (const auto& [e, c] : gens[j].terms()) {
          Exponents prod = mono;
          for (int v = 0; v < d.nvars; ++v) prod[v] += e[v];
          std::size_t row = dst.offsets[t] + dst.index[t].at(prod);
          m.add(row, src.offsets[s] + a, odd ? -c : c);
        }
      }
    }
  }
  return m;
}

std::size_t koszul_cohomology_dim(const std::vector<MultiPoly>& gens, int k, int i) {
  std::size_t dim = koszul_chain_dim(gens, k, i);
  if (dim == 0) return 0;
  std::size_t out = rank(koszul_matrix(gens, k, i));
  std::size_t in = k > 0 ? rank(koszul_matrix(gens, k - 1, i)) : 0;
  if (out + in > dim) throw ArithmeticError("Koszul ranks exceed chain dimension");
  return dim - out - in;
}

}  // namespace jring
