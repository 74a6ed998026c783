#pragma once

// Shift, derivative, kernel and truncation functors on truncated modules.
// Every result records the box it is valid on.

#include <optional>
#include <vector>

#include "fimkit/constructors.hpp"

namespace fimkit {

struct FunctorResult {
  TruncatedModule output;
  Shape box_loss;
  ModuleMap natural;  // V restricted to the output box -> output
};

/// Sigma_i V; i is 0-based. Throws BoxError when box_i == 0.
FunctorResult shift(const TruncatedModule& V, int i);
/// Sigma_1^{a_1} ... Sigma_m^{a_m} V, with the natural map along the standard chain.
FunctorResult shift_by(const TruncatedModule& V, const Shape& amount);

struct DerivativeKernel {
  TruncatedModule kernel;      // K_i V
  TruncatedModule derivative;  // D_i V
  FunctorResult shifted;       // Sigma_i V and the natural map
  /// dim K + dim Sigma = dim V + dim D at every object of the shrunk box.
  bool exact = false;
};

DerivativeKernel derivative_and_kernel(const TruncatedModule& V, int i);

struct TotalFunctors {
  TruncatedModule kernel;      // k V = sum of K_i V
  TruncatedModule shift;       // s V = sum of Sigma_i V
  TruncatedModule derivative;  // d V = sum of D_i V
  Box box;                     // common box, bound - (1,...,1)
  bool exact = false;          // dim k + dim s = m dim V + dim d objectwise
  std::optional<Shape> first_violation;
};

TotalFunctors total_functors(const TruncatedModule& V);

struct TruncationIdeal {
  TruncatedModule truncation;  // tau_i V, values on the hyperplane n_i = 0
  TruncatedModule ideal;       // J_i V, values where n_i > 0
};

TruncationIdeal truncation_and_ideal(const TruncatedModule& V, int i);

struct Filtration {
  int direction = 0;
  std::vector<TruncatedModule> steps;  // V^0, V^1, ...
  /// First j whose natural map V^j -> Sigma V^j is injective on every checkable object.
  std::optional<int> stabilization;
  bool box_exhausted = false;
};

Filtration iterated_image_filtration(const TruncatedModule& V, int direction = 0, int max_steps = -1);

/// True when every inclusion map of V is injective.
bool is_torsion_free(const TruncatedModule& V);

}  // namespace fimkit
