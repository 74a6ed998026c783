#include "fimkit/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fimkit {

// ---------------------------------------------------------------------------
// Field

Field Field::prime(long p) {
  if (p < 2) throw Error("field characteristic must be a prime, got " + std::to_string(p));
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) throw Error(std::to_string(p) + " is not prime");
  }
  if (p > 2147483647L) throw Error("prime too large");
  return Field(p);
}

Field Field::parse(const std::string& text) {
  if (text == "Q" || text == "q" || text == "QQ") return rationals();
  std::string digits;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
  }
  const bool prefixed = text.rfind("Fp:", 0) == 0 || text.rfind("F", 0) == 0 || text.rfind("GF(", 0) == 0;
  if (!prefixed || digits.empty()) throw ParseError("unknown field \"" + text + "\" (expected Q or Fp:p)");
  return prime(std::stol(digits));
}

std::string Field::name() const { return p_ == 0 ? "Q" : "Fp:" + std::to_string(p_); }

Scalar Field::reduce(const mpz_class& v) const {
  mpz_class r = v % p_;
  if (r < 0) r += p_;
  return Scalar(r);
}

Scalar Field::from_int(long v) const {
  if (p_ == 0) return Scalar(v);
  return reduce(mpz_class(v));
}

Scalar Field::parse_scalar(const std::string& text) const {
  Scalar q;
  if (q.set_str(text, 10) != 0) throw ParseError("invalid coefficient \"" + text + "\"");
  q.canonicalize();
  if (p_ == 0) return q;
  Scalar num = reduce(q.get_num());
  Scalar den = reduce(q.get_den());
  if (is_zero(den)) throw ParseError("coefficient \"" + text + "\" has denominator divisible by p");
  return div(num, den);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (p_ == 0) return a + b;
  long s = a.get_num().get_si() + b.get_num().get_si();
  if (s >= p_) s -= p_;
  return Scalar(s);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (p_ == 0) return a - b;
  long s = a.get_num().get_si() - b.get_num().get_si();
  if (s < 0) s += p_;
  return Scalar(s);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (p_ == 0) return a * b;
  __int128 s = static_cast<__int128>(a.get_num().get_si()) * b.get_num().get_si();
  return Scalar(static_cast<long>(s % p_));
}

Scalar Field::neg(const Scalar& a) const {
  if (p_ == 0) return -a;
  long v = a.get_num().get_si();
  return Scalar(v == 0 ? 0 : p_ - v);
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) throw InternalError("division by zero");
  if (p_ == 0) return 1 / a;
  // Fermat: a^(p-2).
  __int128 base = a.get_num().get_si();
  __int128 result = 1;
  long e = p_ - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return Scalar(static_cast<long>(result));
}

// ---------------------------------------------------------------------------
// Sparse vectors

SparseVec unit_vector(int index, const Scalar& v) { return SparseVec{Entry{index, v}}; }

Scalar entry_at(const SparseVec& v, int index) {
  auto it = std::lower_bound(v.begin(), v.end(), index, [](const Entry& e, int i) { return e.index < i; });
  if (it != v.end() && it->index == index) return it->value;
  return 0;
}

SparseVec axpy(const Field& F, const SparseVec& x, const Scalar& a, const SparseVec& y) {
  if (Field::is_zero(a) || y.empty()) return x;
  SparseVec out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].index < y[j].index)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].index < x[i].index) {
      out.push_back({y[j].index, F.mul(a, y[j].value)});
      ++j;
    } else {
      Scalar s = F.add(x[i].value, F.mul(a, y[j].value));
      if (!Field::is_zero(s)) out.push_back({x[i].index, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec scale(const Field& F, const SparseVec& x, const Scalar& a) {
  if (Field::is_zero(a)) return {};
  SparseVec out;
  out.reserve(x.size());
  for (const auto& e : x) out.push_back({e.index, F.mul(a, e.value)});
  return out;
}

bool equal(const SparseVec& a, const SparseVec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].index != b[k].index || a[k].value != b[k].value) return false;
  }
  return true;
}

namespace {

// Sum of many scaled sparse vectors: gather, sort by index, merge.
class Accumulator {
public:
  explicit Accumulator(const Field& F) : F_(F) {}
  void add(const SparseVec& v, const Scalar& a) {
    if (Field::is_zero(a)) return;
    const bool unit = Field::is_one(a);
    for (const auto& e : v) terms_.push_back({e.index, unit ? e.value : F_.mul(a, e.value)});
  }
  void add_entry(int index, Scalar value) { terms_.push_back({index, std::move(value)}); }
  SparseVec take() {
    std::stable_sort(terms_.begin(), terms_.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    SparseVec out;
    for (auto& t : terms_) {
      if (!out.empty() && out.back().index == t.index) {
        out.back().value = F_.add(out.back().value, t.value);
      } else {
        if (!out.empty() && Field::is_zero(out.back().value)) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && Field::is_zero(out.back().value)) out.pop_back();
    terms_.clear();
    return out;
  }

private:
  const Field& F_;
  std::vector<Entry> terms_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(Field field, int rows, int cols)
    : field_(field), rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows)) {
  if (rows < 0 || cols < 0) throw InternalError("negative matrix dimension");
}

Matrix Matrix::identity(Field field, int n) {
  Matrix m(field, n, n);
  for (int k = 0; k < n; ++k) m.data_[static_cast<std::size_t>(k)] = unit_vector(k);
  return m;
}

Matrix Matrix::from_ints(Field field, const std::vector<std::vector<long>>& dense) {
  const int r = static_cast<int>(dense.size());
  const int c = r ? static_cast<int>(dense.front().size()) : 0;
  Matrix m(field, r, c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      m.set(i, j, field.from_int(dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    }
  }
  return m;
}

Matrix Matrix::from_dense(Field field, const std::vector<std::vector<Scalar>>& dense) {
  const int r = static_cast<int>(dense.size());
  const int c = r ? static_cast<int>(dense.front().size()) : 0;
  Matrix m(field, r, c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) m.set(i, j, dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return m;
}

Matrix Matrix::from_columns(Field field, int rows, const std::vector<SparseVec>& columns) {
  Matrix m(field, rows, static_cast<int>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& e : columns[c]) {
      if (e.index < 0 || e.index >= rows) throw InternalError("column entry out of range");
      m.data_[static_cast<std::size_t>(e.index)].push_back({static_cast<int>(c), e.value});
    }
  }
  return m;
}

Scalar Matrix::at(int r, int c) const { return entry_at(data_.at(static_cast<std::size_t>(r)), c); }

void Matrix::set(int r, int c, const Scalar& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw InternalError("matrix index out of range");
  cache_ = std::make_shared<ColumnCache>();
  auto& row = data_[static_cast<std::size_t>(r)];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, int i) { return e.index < i; });
  if (it != row.end() && it->index == c) {
    if (Field::is_zero(v)) {
      row.erase(it);
    } else {
      it->value = v;
    }
  } else if (!Field::is_zero(v)) {
    row.insert(it, Entry{c, v});
  }
}

const std::vector<SparseVec>& Matrix::cached_columns() const {
  std::call_once(cache_->once, [this] {
    cache_->columns.assign(static_cast<std::size_t>(cols_), {});
    for (int r = 0; r < rows_; ++r) {
      for (const auto& e : data_[static_cast<std::size_t>(r)]) cache_->columns[static_cast<std::size_t>(e.index)].push_back({r, e.value});
    }
  });
  return cache_->columns;
}

SparseVec Matrix::column(int c) const {
  if (c < 0 || c >= cols_) throw InternalError("matrix column out of range");
  return cached_columns()[static_cast<std::size_t>(c)];
}

std::vector<SparseVec> Matrix::columns() const { return cached_columns(); }

SparseVec Matrix::apply(const SparseVec& x) const {
  if (x.empty()) return {};
  if (x.back().index >= cols_) throw InternalError("matrix apply: vector too long");
  const auto& cols = cached_columns();
  Accumulator acc(field_);
  for (const auto& e : x) acc.add(cols[static_cast<std::size_t>(e.index)], e.value);
  return acc.take();
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) {
    throw InternalError("matrix product dimension mismatch: " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                        " * " + std::to_string(other.rows_) + "x" + std::to_string(other.cols_));
  }
  Matrix out(field_, rows_, other.cols_);
  Accumulator acc(field_);
  for (int r = 0; r < rows_; ++r) {
    const auto& row = data_[static_cast<std::size_t>(r)];
    if (row.empty()) continue;
    for (const auto& e : row) acc.add(other.data_[static_cast<std::size_t>(e.index)], e.value);
    out.data_[static_cast<std::size_t>(r)] = acc.take();
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InternalError("matrix sum dimension mismatch");
  Matrix out(field_, rows_, cols_);
  for (std::size_t r = 0; r < data_.size(); ++r) out.data_[r] = axpy(field_, data_[r], 1, other.data_[r]);
  return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InternalError("matrix difference dimension mismatch");
  Matrix out(field_, rows_, cols_);
  for (std::size_t r = 0; r < data_.size(); ++r) out.data_[r] = axpy(field_, data_[r], field_.neg(1), other.data_[r]);
  return out;
}

Matrix Matrix::transpose() const { return from_columns(field_, cols_, data_); }

Matrix Matrix::hstack(const Matrix& other) const {
  if (rows_ != other.rows_) throw InternalError("hstack row mismatch");
  Matrix out(field_, rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < data_.size(); ++r) {
    auto row = data_[r];
    for (const auto& e : other.data_[r]) row.push_back({e.index + cols_, e.value});
    out.data_[r] = std::move(row);
  }
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const SparseVec& r) { return r.empty(); });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r) {
    const auto& row = data_[static_cast<std::size_t>(r)];
    if (row.size() != 1 || row[0].index != r || !Field::is_one(row[0].value)) return false;
  }
  return true;
}

std::size_t Matrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

std::vector<std::vector<Scalar>> Matrix::to_dense() const {
  std::vector<std::vector<Scalar>> out(static_cast<std::size_t>(rows_), std::vector<Scalar>(static_cast<std::size_t>(cols_)));
  for (std::size_t r = 0; r < data_.size(); ++r) {
    for (const auto& e : data_[r]) out[r][static_cast<std::size_t>(e.index)] = e.value;
  }
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < rows_; ++r) {
    if (r) os << "; ";
    for (int c = 0; c < cols_; ++c) {
      if (c) os << ' ';
      os << at(r, c).get_str();
    }
  }
  os << "]";
  return os.str();
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t r = 0; r < a.data_.size(); ++r) {
    if (!equal(a.data_[r], b.data_[r])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Echelon

SparseVec Echelon::reduce(const SparseVec& v) const {
  if (rows_.empty() || v.empty()) return v;
  Accumulator acc(field_);
  bool touched = false;
  for (const auto& e : v) {
    auto it = rows_.find(e.index);
    if (it == rows_.end()) continue;
    if (!touched) {
      acc.add(v, 1);
      touched = true;
    }
    acc.add(it->second, field_.neg(e.value));
  }
  if (!touched) return v;
  return acc.take();
}

bool Echelon::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  const int pivot = r.front().index;
  if (pivot >= dim_) throw InternalError("vector exceeds ambient dimension");
  Scalar lead_inv = field_.inv(r.front().value);
  if (!Field::is_one(lead_inv)) r = scale(field_, r, lead_inv);
  if (holders_.empty()) holders_.resize(static_cast<std::size_t>(dim_));
  std::vector<int> touched;
  touched.swap(holders_[static_cast<std::size_t>(pivot)]);
  for (int q : touched) {
    SparseVec& row = rows_.at(q);
    Scalar c = entry_at(row, pivot);
    if (Field::is_zero(c)) continue;
    row = axpy(field_, row, field_.neg(c), r);
    for (std::size_t k = 1; k < r.size(); ++k) {
      auto& h = holders_[static_cast<std::size_t>(r[k].index)];
      if (h.empty() || h.back() != q) h.push_back(q);
    }
  }
  for (std::size_t k = 1; k < r.size(); ++k) holders_[static_cast<std::size_t>(r[k].index)].push_back(pivot);
  rows_.emplace(pivot, std::move(r));
  return true;
}

std::vector<SparseVec> Echelon::basis() const {
  std::vector<SparseVec> out;
  out.reserve(rows_.size());
  for (const auto& [p, row] : rows_) out.push_back(row);
  return out;
}

std::vector<int> Echelon::pivots() const {
  std::vector<int> out;
  for (const auto& [p, row] : rows_) out.push_back(p);
  return out;
}

std::vector<int> Echelon::non_pivots() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(dim_ - rank()));
  auto it = rows_.begin();
  for (int c = 0; c < dim_; ++c) {
    if (it != rows_.end() && it->first == c) {
      ++it;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

SparseVec Echelon::coordinates(const SparseVec& v) const {
  SparseVec out;
  int k = 0;
  auto it = rows_.begin();
  std::size_t j = 0;
  for (; it != rows_.end(); ++it, ++k) {
    while (j < v.size() && v[j].index < it->first) ++j;
    if (j < v.size() && v[j].index == it->first) out.push_back({k, v[j].value});
  }
  return out;
}

SparseVec Echelon::quotient_coordinates(const SparseVec& v) const {
  SparseVec r = reduce(v);
  if (r.empty()) return r;
  // Re-index surviving (non-pivot) columns by their rank among non-pivots.
  SparseVec out;
  out.reserve(r.size());
  auto it = rows_.begin();
  int pivots_before = 0;
  for (auto& e : r) {
    while (it != rows_.end() && it->first < e.index) {
      ++it;
      ++pivots_before;
    }
    out.push_back({e.index - pivots_before, std::move(e.value)});
  }
  return out;
}

// ---------------------------------------------------------------------------

int rank(const Matrix& a) {
  Echelon e(a.field(), a.cols());
  for (int r = 0; r < a.rows() && !e.full(); ++r) e.insert(a.row(r));
  return e.rank();
}

Matrix kernel_basis(const Matrix& a) {
  Echelon e(a.field(), a.cols());
  for (int r = 0; r < a.rows() && !e.full(); ++r) e.insert(a.row(r));
  const auto free_cols = e.non_pivots();
  std::vector<int> position(static_cast<std::size_t>(a.cols()), -1);
  for (std::size_t k = 0; k < free_cols.size(); ++k) position[static_cast<std::size_t>(free_cols[k])] = static_cast<int>(k);
  std::vector<std::vector<Entry>> cols(free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) cols[k].push_back({free_cols[k], 1});
  const auto pivots = e.pivots();
  const auto rows = e.basis();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& entry : rows[r]) {
      int k = position[static_cast<std::size_t>(entry.index)];
      if (k >= 0) cols[static_cast<std::size_t>(k)].push_back({pivots[r], a.field().neg(entry.value)});
    }
  }
  for (auto& c : cols) {
    std::sort(c.begin(), c.end(), [](const Entry& x, const Entry& y) { return x.index < y.index; });
  }
  return Matrix::from_columns(a.field(), a.cols(), cols);
}

std::optional<SparseVec> solve(const Matrix& a, const SparseVec& b) {
  if (!b.empty() && b.back().index >= a.rows()) throw InternalError("solve: right-hand side too long");
  const int n = a.cols();
  Echelon e(a.field(), n + 1);
  std::size_t j = 0;
  for (int r = 0; r < a.rows(); ++r) {
    SparseVec row = a.row(r);
    while (j < b.size() && b[j].index < r) ++j;
    if (j < b.size() && b[j].index == r) row.push_back({n, b[j].value});
    e.insert(row);
  }
  const auto pivots = e.pivots();
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  SparseVec x;
  const auto rows = e.basis();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& row = rows[k];
    if (!row.empty() && row.back().index == n) x.push_back({pivots[k], row.back().value});
  }
  return x;
}

QuotientStructure quotient_structure(const Matrix& generators, int d) {
  if (generators.rows() != d) throw InternalError("quotient_structure: generators must have d rows");
  const Field& F = generators.field();
  Echelon e(F, d);
  for (const auto& c : generators.columns()) {
    if (e.full()) break;
    e.insert(c);
  }
  const auto free_cols = e.non_pivots();
  const int q = static_cast<int>(free_cols.size());
  std::vector<SparseVec> proj_cols(static_cast<std::size_t>(d));
  for (int c = 0; c < d; ++c) proj_cols[static_cast<std::size_t>(c)] = e.quotient_coordinates(unit_vector(c));
  std::vector<SparseVec> lift_cols;
  lift_cols.reserve(free_cols.size());
  for (int c : free_cols) lift_cols.push_back(unit_vector(c));
  return {Matrix::from_columns(F, q, proj_cols), Matrix::from_columns(F, d, lift_cols), q};
}

}  // namespace fimkit
