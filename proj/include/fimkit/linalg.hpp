#pragma once

// Exact linear algebra over Q and F_p. Matrices are stored as sparse rows:
// module actions are mostly permutation-like, and dense storage of exact
// rationals does not fit in memory at the box sizes we care about.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fimkit/errors.hpp"

namespace fimkit {

using Scalar = mpq_class;

class Field {
public:
  static Field rationals() { return Field(0); }
  static Field prime(long p);
  /// "Q", "Fp:5", "F5", "GF(5)".
  static Field parse(const std::string& text);

  long characteristic() const { return p_; }
  bool is_prime() const { return p_ != 0; }
  std::string name() const;

  Scalar from_int(long v) const;
  /// Integer or fraction "a/b"; the denominator must be invertible.
  Scalar parse_scalar(const std::string& text) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
  static bool is_zero(const Scalar& a) { return sgn(a) == 0; }
  static bool is_one(const Scalar& a) { return a == 1; }

  friend bool operator==(const Field&, const Field&) = default;

private:
  explicit Field(long p) : p_(p) {}
  Scalar reduce(const mpz_class& v) const;
  long p_ = 0;
};

struct Entry {
  int index;
  Scalar value;
};

/// Sorted by index, no explicit zeros.
using SparseVec = std::vector<Entry>;

SparseVec unit_vector(int index, const Scalar& v = 1);
Scalar entry_at(const SparseVec& v, int index);
/// x + a * y
SparseVec axpy(const Field& F, const SparseVec& x, const Scalar& a, const SparseVec& y);
SparseVec scale(const Field& F, const SparseVec& x, const Scalar& a);
bool equal(const SparseVec& a, const SparseVec& b);

class Matrix {
public:
  Matrix() : field_(Field::rationals()) {}
  Matrix(Field field, int rows, int cols);

  static Matrix identity(Field field, int n);
  static Matrix from_ints(Field field, const std::vector<std::vector<long>>& dense);
  static Matrix from_dense(Field field, const std::vector<std::vector<Scalar>>& dense);
  /// Columns given as sparse vectors of length `rows`.
  static Matrix from_columns(Field field, int rows, const std::vector<SparseVec>& columns);

  const Field& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar at(int r, int c) const;
  void set(int r, int c, const Scalar& v);
  const SparseVec& row(int r) const { return data_[static_cast<std::size_t>(r)]; }
  void set_row(int r, SparseVec v) {
    data_[static_cast<std::size_t>(r)] = std::move(v);
    cache_ = std::make_shared<ColumnCache>();
  }
  SparseVec column(int c) const;
  std::vector<SparseVec> columns() const;

  SparseVec apply(const SparseVec& x) const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix transpose() const;
  /// [A | B]
  Matrix hstack(const Matrix& other) const;

  bool is_zero() const;
  bool is_identity() const;
  std::size_t nonzeros() const;
  std::vector<std::vector<Scalar>> to_dense() const;
  std::string to_string() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

private:
  struct ColumnCache {
    std::once_flag once;
    std::vector<SparseVec> columns;
  };
  const std::vector<SparseVec>& cached_columns() const;

  Field field_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SparseVec> data_;
  std::shared_ptr<ColumnCache> cache_ = std::make_shared<ColumnCache>();
};

/// Incrementally maintained reduced row echelon basis of a subspace of k^dim.
/// Pivots are leftmost entries, so the basis is the unique RREF of the span.
class Echelon {
public:
  Echelon(Field field, int dim) : field_(field), dim_(dim) {}

  /// Returns true when v was independent of the current span.
  bool insert(const SparseVec& v);
  SparseVec reduce(const SparseVec& v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  int rank() const { return static_cast<int>(rows_.size()); }
  int dim() const { return dim_; }
  bool full() const { return rank() == dim_; }
  const Field& field() const { return field_; }

  /// Basis vectors ordered by pivot column.
  std::vector<SparseVec> basis() const;
  std::vector<int> pivots() const;
  std::vector<int> non_pivots() const;
  /// Coordinates of v (assumed in the span) w.r.t. basis().
  SparseVec coordinates(const SparseVec& v) const;
  /// Coordinates of the class of v in k^dim / span, on the non-pivot basis.
  SparseVec quotient_coordinates(const SparseVec& v) const;

private:
  Field field_;
  int dim_;
  std::map<int, SparseVec> rows_;  // pivot column -> row (pivot entry 1)
  std::vector<std::vector<int>> holders_;  // column -> pivots of rows that may be nonzero there
};

int rank(const Matrix& a);
/// Columns span the null space; one column per non-pivot column of the RREF.
Matrix kernel_basis(const Matrix& a);
/// Some x with A x = b, or nullopt when inconsistent.
std::optional<SparseVec> solve(const Matrix& a, const SparseVec& b);

struct QuotientStructure {
  Matrix projection;  // q x d, full row rank, projection * S = 0
  Matrix lift;        // d x q, projection * lift = I
  int dim = 0;
};
/// Quotient of k^d by the column span of generators (d x k).
QuotientStructure quotient_structure(const Matrix& generators, int d);

}  // namespace fimkit
