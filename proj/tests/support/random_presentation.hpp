#pragma once

// Seeded random presentations shared by the unit tests and the acceptance run.

#include <random>

#include "fimkit/constructors.hpp"

namespace fimkit::testing {

struct RandomPresentationOptions {
  int max_generator_part = 1;
  int max_relation_lift = 1;  // relation shape = generator shape + up to this per coordinate
  int max_generators = 2;
  int max_relations = 2;
  int max_terms = 3;
};

inline Presentation random_presentation(int m, const Field& field, std::mt19937& rng,
                                        const RandomPresentationOptions& opt = {}) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto random_shape = [&](int hi) {
    std::vector<int> p;
    for (int i = 0; i < m; ++i) p.push_back(uni(0, hi));
    return Shape(p);
  };
  Presentation p;
  p.field = field;
  p.m = m;
  const int gens = uni(1, opt.max_generators);
  for (int r = 0; r < gens; ++r) p.generators.push_back({random_shape(opt.max_generator_part), "g" + std::to_string(r + 1)});
  const int rels = uni(0, opt.max_relations);
  for (int q = 0; q < rels; ++q) {
    const int anchor = uni(0, gens - 1);
    const Shape s = p.generators[static_cast<std::size_t>(anchor)].shape + random_shape(opt.max_relation_lift);
    Relation rel{s, {}};
    const int terms = uni(1, opt.max_terms);
    for (int t = 0; t < terms; ++t) {
      const int g = uni(0, gens - 1);
      const Shape& gs = p.generators[static_cast<std::size_t>(g)].shape;
      if (!gs.leq(s)) continue;
      auto homs = enumerate_injections(gs, s);
      const Injection& f = homs[static_cast<std::size_t>(uni(0, static_cast<int>(homs.size()) - 1))];
      int c = uni(-2, 2);
      if (c == 0) c = 1;
      rel.terms.push_back({g, f, field.from_int(c)});
    }
    if (!rel.terms.empty()) p.relations.push_back(std::move(rel));
  }
  return p;
}

}  // namespace fimkit::testing
