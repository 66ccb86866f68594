#pragma once

#include "jring/field.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace jring {

/// Sparse vector: (index, value) pairs sorted by index, no zeros.
using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

/// Exact sparse matrix.  Entries added at the same position accumulate;
/// zeros are dropped.
class SparseMatrix {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    Scalar value;
  };

  SparseMatrix(FieldSpec field, std::size_t rows, std::size_t cols);

  FieldSpec field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const { return data_.size(); }
  bool is_zero() const { return data_.empty(); }

  void add(std::size_t row, std::size_t col, const Scalar& v);
  Scalar at(std::size_t row, std::size_t col) const;

  /// Appends a column and returns its index.
  std::size_t append_column(const SparseVec& column);

  /// Entries in column-major order.
  std::vector<Entry> entries() const;
  std::vector<SparseVec> row_vectors() const;
  std::vector<SparseVec> column_vectors() const;

  SparseMatrix transposed() const;
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::map<std::pair<std::size_t, std::size_t>, Scalar> data_;  // keyed (col, row)
};

/// Exact rank.  Singleton rows and columns are peeled first; the rest is
/// eliminated left-looking with sparsity-ordered pivots, modulo p over a
/// prime field and fraction-free (content-reduced integer rows) over Q.
std::size_t rank(const SparseMatrix& m);

/// Plain dense Gaussian elimination over the field; reference for rank().
std::size_t dense_rank(const SparseMatrix& m);

/// Incremental row echelon form over an arbitrary field.  Pivot rows are
/// normalized to leading coefficient 1; their tails are not back-reduced.
class Echelon {
 public:
  explicit Echelon(FieldSpec field) : field_(field) {}

  FieldSpec field() const { return field_; }

  /// Eliminates every pivot position from v.
  SparseVec reduce(SparseVec v) const;
  /// Adds v to the span; returns false if it was already in it.
  bool insert(SparseVec v);

  std::size_t rank() const { return pivots_.size(); }
  bool has_pivot(std::size_t position) const { return pivots_.count(position) != 0; }
  const std::map<std::size_t, SparseVec>& pivots() const { return pivots_; }

 private:
  FieldSpec field_;
  std::map<std::size_t, SparseVec> pivots_;
};

/// Some solution of a·z = b (free variables set to zero), or nullopt if
/// the system is inconsistent.
std::optional<std::vector<Scalar>> solve(const SparseMatrix& a, const std::vector<Scalar>& b);

/// Basis of {z : a·z = 0}, one vector per free column, in column order.
std::vector<std::vector<Scalar>> kernel_basis(const SparseMatrix& a);

/// a·x for a dense vector x.
std::vector<Scalar> multiply(const SparseMatrix& a, const std::vector<Scalar>& x);

}  // namespace jring
