#pragma once

// Free modules, basic relative projectives, presented modules, sums,
// submodules and quotients.

#include <optional>
#include <string>
#include <vector>

#include "fimkit/module.hpp"

namespace fimkit {

/// M(shape) on the box; basis at t is enumerate_injections(shape, t).
TruncatedModule free_module(Field field, const Shape& shape, const Shape& bound);
/// M(shapes[0]) + M(shapes[1]) + ..., blocks in the given order.
TruncatedModule free_sum(Field field, const std::vector<Shape>& shapes, const Shape& bound);

/// A representation of S_shape given on the adjacent transpositions.
struct GroupRep {
  Field field = Field::rationals();
  Shape shape;
  int dim = 0;
  std::vector<std::vector<Matrix>> gens;  // gens[i][j-1] acts as s_{i,j}

  static GroupRep trivial(Field field, const Shape& shape);
  static GroupRep sign(Field field, const Shape& shape);
  /// Left regular representation; basis in enumerate_injections(shape, shape) order.
  static GroupRep regular(Field field, const Shape& shape);

  Matrix action(const MultiPermutation& sigma) const;
  /// Throws DimensionError when sizes or the Coxeter relations fail.
  void validate() const;
};

/// M(shape) (x)_{kS_shape} W, with basis (increasing injection, basis of W).
TruncatedModule basic_relative_projective(const GroupRep& W, const Shape& bound);

struct Term {
  int gen = 0;
  Injection injection;  // generator shape -> relation shape
  Scalar coeff;
};

struct Relation {
  Shape shape;
  std::vector<Term> terms;
};

struct Generator {
  Shape shape;
  std::string label;
};

struct Presentation {
  Field field = Field::rationals();
  int m = 0;
  std::optional<Shape> box;
  std::vector<Generator> generators;
  std::vector<Relation> relations;
};

/// Throws ShapeError/DimensionError on inconsistent data.
void validate(const Presentation& p);

/// Presentation of M(shape) (x) W: one generator per basis vector of W and
/// the relations s . e_r = sum_c W(s)_{cr} e_c for the adjacent transpositions.
Presentation tensor_presentation(const GroupRep& W);

/// Cokernel of the relation map, objectwise.
TruncatedModule from_presentation(const Presentation& p, const Shape& bound);

/// Box is the componentwise minimum of the two boxes.
TruncatedModule direct_sum(const TruncatedModule& a, const TruncatedModule& b);

/// Dimension of H_0 = V / (images of the inclusions) at every object.
GradedDims generator_profile(const TruncatedModule& V);

/// Smallest subspace of V_n containing `seeds` and stable under S_n.
Echelon symmetric_closure(const TruncatedModule& V, const Shape& n, std::vector<SparseVec> seeds);

struct SubmoduleResult {
  TruncatedModule module;
  ModuleMap embedding;  // module -> V
  std::vector<Echelon> subspaces;
  GradedDims generators;  // H_0 profile of the submodule
};

/// The subspaces must form a submodule.
SubmoduleResult submodule_from_subspaces(const TruncatedModule& V, std::vector<Echelon> subspaces);

struct QuotientResult {
  TruncatedModule module;
  ModuleMap projection;  // V -> module
  std::vector<Echelon> subspaces;
};

QuotientResult quotient_by_subspaces(const TruncatedModule& V, std::vector<Echelon> subspaces);

struct Seed {
  Shape shape;
  SparseVec vector;
};

/// Smallest boxed submodule containing the seeds.
SubmoduleResult submodule_generated(const TruncatedModule& V, const std::vector<Seed>& seeds);

/// Image and kernel of a module map, with bases from the elimination.
SubmoduleResult image_module(const TruncatedModule& target, const ModuleMap& map);
SubmoduleResult kernel_module(const TruncatedModule& source, const ModuleMap& map);
QuotientResult cokernel_module(const TruncatedModule& target, const ModuleMap& map);

}  // namespace fimkit
