#pragma once

// Truncated FI^m-modules: values known exactly on every object below a box
// bound, stored through the action of the generators of the category
// (adjacent transpositions s_{i,j} and the inclusions pi_{n,i}).

#include <optional>
#include <string>
#include <vector>

#include "fimkit/combinat.hpp"
#include "fimkit/linalg.hpp"

namespace fimkit {

/// The down-set {n : n <= bound}, indexed row-major (last coordinate fastest).
class Box {
public:
  Box() = default;
  explicit Box(Shape bound);

  const Shape& bound() const { return bound_; }
  int m() const { return bound_.m(); }
  int size() const { return static_cast<int>(objects_.size()); }
  bool contains(const Shape& n) const;
  int index(const Shape& n) const;  // throws BoxError
  const Shape& object(int idx) const { return objects_[static_cast<std::size_t>(idx)]; }
  const std::vector<Shape>& objects() const { return objects_; }

  friend bool operator==(const Box& a, const Box& b) { return a.bound_ == b.bound_; }

private:
  Shape bound_;
  std::vector<int> stride_;
  std::vector<Shape> objects_;
};

/// Objectwise dimensions on a box.
struct GradedDims {
  Box box;
  std::vector<int> dims;

  int at(const Shape& n) const { return dims[static_cast<std::size_t>(box.index(n))]; }
  bool is_zero() const;
  int total() const;
  /// Largest degree of an object with nonzero value, or -1.
  int top_degree() const;
  std::vector<Shape> support() const;
  /// Restriction to a smaller box.
  GradedDims restricted(const Shape& bound) const;
  friend bool operator==(const GradedDims&, const GradedDims&) = default;
};

class TruncatedModule {
public:
  struct ObjectData {
    int dim = 0;
    // trans[i][j-1]: action of s_{i,j} on the value at this object.
    std::vector<std::vector<Matrix>> trans;
    // incl[i]: X_{n,i}, present when n + o_i is in the box.
    std::vector<std::optional<Matrix>> incl;
  };

  TruncatedModule() = default;
  /// Validates matrix sizes against dims; does not check the module axioms.
  TruncatedModule(Field field, Box box, std::vector<ObjectData> objects);

  static TruncatedModule zero(Field field, const Shape& bound);

  const Field& field() const { return field_; }
  const Box& box() const { return box_; }
  int m() const { return box_.m(); }

  int dim(const Shape& n) const { return objects_[static_cast<std::size_t>(box_.index(n))].dim; }
  int dim_at(int idx) const { return objects_[static_cast<std::size_t>(idx)].dim; }
  GradedDims dims() const;
  bool is_zero() const;

  /// s_{i,j} at n; i is 0-based, j is 1-based (1 <= j < n_i).
  const Matrix& transposition(const Shape& n, int i, int j) const;
  /// X_{n,i}: V_n -> V_{n+o_i}.
  const Matrix& inclusion(const Shape& n, int i) const;
  const ObjectData& object_data(int idx) const { return objects_[static_cast<std::size_t>(idx)]; }

  /// Copies with one generator action replaced; used for fault injection.
  TruncatedModule with_inclusion(const Shape& n, int i, Matrix x) const;
  TruncatedModule with_transposition(const Shape& n, int i, int j, Matrix s) const;

  /// Same values on a smaller box.
  TruncatedModule restricted(const Shape& bound) const;

private:
  Field field_ = Field::rationals();
  Box box_;
  std::vector<ObjectData> objects_;
};

/// Objectwise linear maps between two modules on a common box.
struct ModuleMap {
  Box box;
  std::vector<Matrix> components;  // components[idx]: source_n -> target_n

  const Matrix& at(const Shape& n) const { return components[static_cast<std::size_t>(box.index(n))]; }
  ModuleMap restricted(const Shape& bound) const;
};

/// Action of a permutation of the object n.
Matrix action(const TruncatedModule& V, const MultiPermutation& sigma);
/// V(f) through the canonical factorization, staircase along direction 1 first.
Matrix evaluate(const TruncatedModule& V, const Injection& f);
/// V(f) along a staircase that visits the directions in the given order.
Matrix evaluate_along(const TruncatedModule& V, const Injection& f, const std::vector<int>& direction_order);
/// V(f) v without forming the matrix.
SparseVec apply(const TruncatedModule& V, const Injection& f, const SparseVec& v);
SparseVec apply_standard(const TruncatedModule& V, const Shape& from, const Shape& to, SparseVec v);

struct AxiomFailure {
  std::string invariant;  // coxeter | equivariance | cross-direction | same-direction | functoriality | factorization
  Shape object;
  std::string detail;
};

struct AxiomReport {
  std::vector<std::pair<std::string, bool>> checks;  // per invariant class, in fixed order
  std::optional<AxiomFailure> first_failure;
  bool ok() const { return !first_failure.has_value(); }
};

struct AxiomOptions {
  int random_injections = 200;  // functoriality / factorization-independence samples
  unsigned seed = 17;
};

AxiomReport check_module_axioms(const TruncatedModule& V, const AxiomOptions& options = {});

}  // namespace fimkit
