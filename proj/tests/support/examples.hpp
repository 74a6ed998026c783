#pragma once

// Small modules shared by the unit tests and the acceptance run.

#include "fimkit/constructors.hpp"

namespace fimkit::testing {

/// One generator at (0,0) killed by the inclusion in direction 2: V_t = k iff t_2 = 0.
inline Presentation torsion_example_presentation(Field field = Field::rationals()) {
  Presentation p;
  p.field = field;
  p.m = 2;
  p.generators.push_back({Shape({0, 0}), "v"});
  p.relations.push_back({Shape({0, 1}), {{0, Injection::pi(Shape({0, 0}), 1), field.from_int(1)}}});
  return p;
}

inline TruncatedModule torsion_example(const Shape& bound, Field field = Field::rationals()) {
  return from_presentation(torsion_example_presentation(field), bound);
}

/// M(n) with every inclusion out of n killed: the regular kS_n concentrated at n.
inline Presentation point_presentation(const Shape& n, Field field = Field::rationals()) {
  Presentation p;
  p.field = field;
  p.m = n.m();
  p.generators.push_back({n, "v"});
  for (int i = 0; i < n.m(); ++i) p.relations.push_back({n.plus(i), {{0, Injection::pi(n, i), field.from_int(1)}}});
  return p;
}

inline TruncatedModule point_module(const Shape& n, const Shape& bound, Field field = Field::rationals()) {
  return from_presentation(point_presentation(n, field), bound);
}

}  // namespace fimkit::testing
