#include "fimkit/constructors.hpp"

#include <deque>
#include <map>

#include "fimkit/parallel.hpp"

namespace fimkit {

namespace {

using ObjectData = TruncatedModule::ObjectData;

ObjectData empty_slots(const Shape& n, int dim) {
  ObjectData od;
  od.dim = dim;
  od.trans.resize(static_cast<std::size_t>(n.m()));
  od.incl.resize(static_cast<std::size_t>(n.m()));
  return od;
}

// Builds every generator matrix of a module from a column rule
// column(n, g, c) = image of basis vector c of V_n under the injection g.
template <class ColumnRule>
std::vector<ObjectData> build_actions(const Field& field, const Box& box, const std::vector<int>& dims, ColumnRule&& column) {
  std::vector<ObjectData> objs(static_cast<std::size_t>(box.size()));
  for_each_index(box.size(), [&](int k) {
    const Shape& n = box.object(k);
    ObjectData od = empty_slots(n, dims[static_cast<std::size_t>(k)]);
    for (int i = 0; i < n.m(); ++i) {
      for (int j = 1; j < n[i]; ++j) {
        const Injection g = MultiPermutation::adjacent(n, i, j).as_injection();
        std::vector<SparseVec> cols;
        for (int c = 0; c < od.dim; ++c) cols.push_back(column(n, g, c));
        od.trans[static_cast<std::size_t>(i)].push_back(Matrix::from_columns(field, od.dim, cols));
      }
      const Shape up = n.plus(i);
      if (box.contains(up)) {
        const Injection g = Injection::pi(n, i);
        std::vector<SparseVec> cols;
        for (int c = 0; c < od.dim; ++c) cols.push_back(column(n, g, c));
        od.incl[static_cast<std::size_t>(i)] = Matrix::from_columns(field, dims[static_cast<std::size_t>(box.index(up))], cols);
      }
    }
    objs[static_cast<std::size_t>(k)] = std::move(od);
  });
  return objs;
}

Matrix block_diag(const Field& field, const std::vector<const Matrix*>& parts) {
  int rows = 0, cols = 0;
  for (const auto* p : parts) {
    rows += p->rows();
    cols += p->cols();
  }
  std::vector<SparseVec> out;
  out.reserve(static_cast<std::size_t>(cols));
  int roff = 0;
  for (const auto* p : parts) {
    for (auto col : p->columns()) {
      for (auto& e : col) e.index += roff;
      out.push_back(std::move(col));
    }
    roff += p->rows();
  }
  return Matrix::from_columns(field, rows, out);
}

// Direct sum of modules that share a box.
TruncatedModule block_sum(const Field& field, const Box& box, const std::vector<TruncatedModule>& parts) {
  std::vector<ObjectData> objs(static_cast<std::size_t>(box.size()));
  for_each_index(box.size(), [&](int k) {
    const Shape& n = box.object(k);
    ObjectData od = empty_slots(n, 0);
    for (const auto& p : parts) od.dim += p.dim_at(k);
    for (int i = 0; i < n.m(); ++i) {
      for (int j = 1; j < n[i]; ++j) {
        std::vector<const Matrix*> blocks;
        for (const auto& p : parts) blocks.push_back(&p.transposition(n, i, j));
        od.trans[static_cast<std::size_t>(i)].push_back(block_diag(field, blocks));
      }
      if (box.contains(n.plus(i))) {
        std::vector<const Matrix*> blocks;
        for (const auto& p : parts) blocks.push_back(&p.inclusion(n, i));
        od.incl[static_cast<std::size_t>(i)] = block_diag(field, blocks);
      }
    }
    objs[static_cast<std::size_t>(k)] = std::move(od);
  });
  return TruncatedModule(field, box, std::move(objs));
}

// Position of each image set inside a component, and the permutation tau with f = inc o tau.
std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>> split_increasing(const Injection& f) {
  std::vector<std::vector<int>> images, tau;
  for (int i = 0; i < f.m(); ++i) {
    std::vector<int> img = f.component(i);
    std::sort(img.begin(), img.end());
    std::vector<int> t;
    for (int x : f.component(i)) t.push_back(static_cast<int>(std::lower_bound(img.begin(), img.end(), x) - img.begin()) + 1);
    images.push_back(std::move(img));
    tau.push_back(std::move(t));
  }
  return {images, tau};
}

bool is_increasing(const Injection& f) {
  for (int i = 0; i < f.m(); ++i) {
    const auto& c = f.component(i);
    if (!std::is_sorted(c.begin(), c.end())) return false;
  }
  return true;
}

void check_coxeter(const Shape& n, const std::vector<std::vector<Matrix>>& gens, int dim, const Field& field) {
  const Matrix id = Matrix::identity(field, dim);
  auto fail = [&](const std::string& what) { throw DimensionError("representation of S_" + n.to_string() + ": " + what); };
  if (static_cast<int>(gens.size()) != n.m()) fail("wrong number of factors");
  for (int i = 0; i < n.m(); ++i) {
    const auto& g = gens[static_cast<std::size_t>(i)];
    if (static_cast<int>(g.size()) != std::max(0, n[i] - 1)) fail("wrong number of generators");
    for (const auto& s : g) {
      if (s.rows() != dim || s.cols() != dim) fail("generator has wrong size");
    }
  }
  for (int i = 0; i < n.m(); ++i) {
    const auto& g = gens[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (!(g[j] * g[j] == id)) fail("s_" + std::to_string(j + 1) + " does not square to the identity");
      if (j + 1 < g.size() && !(g[j] * g[j + 1] * g[j] == g[j + 1] * g[j] * g[j + 1])) fail("braid relation fails");
      for (std::size_t k = j + 2; k < g.size(); ++k) {
        if (!(g[j] * g[k] == g[k] * g[j])) fail("distant generators do not commute");
      }
      for (int i2 = i + 1; i2 < n.m(); ++i2) {
        for (const auto& u : gens[static_cast<std::size_t>(i2)]) {
          if (!(g[j] * u == u * g[j])) fail("generators of different factors do not commute");
        }
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

TruncatedModule free_module(Field field, const Shape& shape, const Shape& bound) {
  if (!shape.leq(bound)) throw BoxError("generator shape " + shape.to_string() + " is not inside box " + bound.to_string());
  Box box(bound);
  std::vector<int> dims;
  for (const auto& n : box.objects()) dims.push_back(shape.leq(n) ? static_cast<int>(injection_count(shape, n)) : 0);
  std::vector<std::vector<Injection>> bases(static_cast<std::size_t>(box.size()));
  for_each_index(box.size(), [&](int k) {
    const Shape& n = box.object(k);
    if (shape.leq(n)) bases[static_cast<std::size_t>(k)] = enumerate_injections(shape, n);
  });
  auto objs = build_actions(field, box, dims, [&](const Shape& n, const Injection& g, int c) {
    const Injection& h = bases[static_cast<std::size_t>(box.index(n))][static_cast<std::size_t>(c)];
    return unit_vector(static_cast<int>(injection_index(compose(g, h))));
  });
  return TruncatedModule(field, std::move(box), std::move(objs));
}

TruncatedModule free_sum(Field field, const std::vector<Shape>& shapes, const Shape& bound) {
  if (shapes.size() == 1) return free_module(field, shapes.front(), bound);
  std::vector<TruncatedModule> parts;
  for (const auto& s : shapes) parts.push_back(free_module(field, s, bound));
  if (parts.empty()) return TruncatedModule::zero(field, bound);
  return block_sum(field, Box(bound), parts);
}

// ---------------------------------------------------------------------------
// Group representations

GroupRep GroupRep::trivial(Field field, const Shape& shape) {
  GroupRep w{field, shape, 1, {}};
  for (int i = 0; i < shape.m(); ++i) w.gens.emplace_back(static_cast<std::size_t>(std::max(0, shape[i] - 1)), Matrix::identity(field, 1));
  return w;
}

GroupRep GroupRep::sign(Field field, const Shape& shape) {
  GroupRep w{field, shape, 1, {}};
  Matrix neg(field, 1, 1);
  neg.set(0, 0, field.from_int(-1));
  for (int i = 0; i < shape.m(); ++i) w.gens.emplace_back(static_cast<std::size_t>(std::max(0, shape[i] - 1)), neg);
  return w;
}

GroupRep GroupRep::regular(Field field, const Shape& shape) {
  const auto perms = enumerate_injections(shape, shape);
  GroupRep w{field, shape, static_cast<int>(perms.size()), {}};
  for (int i = 0; i < shape.m(); ++i) {
    std::vector<Matrix> gi;
    for (int j = 1; j < shape[i]; ++j) {
      const Injection s = MultiPermutation::adjacent(shape, i, j).as_injection();
      std::vector<SparseVec> cols;
      for (const auto& p : perms) cols.push_back(unit_vector(static_cast<int>(injection_index(compose(s, p)))));
      gi.push_back(Matrix::from_columns(field, w.dim, cols));
    }
    w.gens.push_back(std::move(gi));
  }
  return w;
}

Matrix GroupRep::action(const MultiPermutation& sigma) const {
  Matrix acc = Matrix::identity(field, dim);
  for (int i = 0; i < shape.m(); ++i) {
    for (int w : permutation_word(sigma.component(i))) acc = acc * gens[static_cast<std::size_t>(i)][static_cast<std::size_t>(w - 1)];
  }
  return acc;
}

void GroupRep::validate() const { check_coxeter(shape, gens, dim, field); }

TruncatedModule basic_relative_projective(const GroupRep& W, const Shape& bound) {
  W.validate();
  const Shape& l = W.shape;
  if (!l.leq(bound)) throw BoxError("generator shape " + l.to_string() + " is not inside box " + bound.to_string());
  Box box(bound);
  // Increasing injections l -> n, in enumeration order.
  std::vector<std::map<std::vector<std::vector<int>>, int>> index(static_cast<std::size_t>(box.size()));
  std::vector<int> dims(static_cast<std::size_t>(box.size()), 0);
  for_each_index(box.size(), [&](int k) {
    const Shape& n = box.object(k);
    if (!l.leq(n)) return;
    auto& idx = index[static_cast<std::size_t>(k)];
    for (const auto& h : enumerate_injections(l, n)) {
      if (is_increasing(h)) idx.emplace(h.maps(), static_cast<int>(idx.size()));
    }
    dims[static_cast<std::size_t>(k)] = static_cast<int>(idx.size()) * W.dim;
  });
  std::vector<std::vector<std::vector<std::vector<int>>>> inc_maps(static_cast<std::size_t>(box.size()));
  for (int k = 0; k < box.size(); ++k) {
    auto& v = inc_maps[static_cast<std::size_t>(k)];
    v.resize(index[static_cast<std::size_t>(k)].size());
    for (const auto& [maps, pos] : index[static_cast<std::size_t>(k)]) v[static_cast<std::size_t>(pos)] = maps;
  }
  auto objs = build_actions(W.field, box, dims, [&](const Shape& n, const Injection& g, int c) {
    const int k = box.index(n);
    const int h_pos = c / W.dim;
    const int b = c % W.dim;
    const Injection h(n, inc_maps[static_cast<std::size_t>(k)][static_cast<std::size_t>(h_pos)]);
    const auto [images, tau] = split_increasing(compose(g, h));
    const int target = box.index(g.codomain());
    const int inc_pos = index[static_cast<std::size_t>(target)].at(images);
    SparseVec col = W.action(MultiPermutation(tau)).column(b);
    for (auto& e : col) e.index += inc_pos * W.dim;
    return col;
  });
  return TruncatedModule(W.field, std::move(box), std::move(objs));
}

// ---------------------------------------------------------------------------
// Presentations

void validate(const Presentation& p) {
  for (std::size_t r = 0; r < p.generators.size(); ++r) {
    if (p.generators[r].shape.m() != p.m) throw DimensionError("generator " + std::to_string(r) + " has the wrong arity");
  }
  for (std::size_t q = 0; q < p.relations.size(); ++q) {
    const auto& rel = p.relations[q];
    const std::string where = "relation " + std::to_string(q);
    if (rel.shape.m() != p.m) throw DimensionError(where + " has the wrong arity");
    for (const auto& t : rel.terms) {
      if (t.gen < 0 || t.gen >= static_cast<int>(p.generators.size())) throw ShapeError(where + " cites an unknown generator");
      if (t.injection.domain() != p.generators[static_cast<std::size_t>(t.gen)].shape) {
        throw ShapeError(where + ": injection " + t.injection.to_string() + " does not start at the generator shape " +
                         p.generators[static_cast<std::size_t>(t.gen)].shape.to_string());
      }
      if (t.injection.codomain() != rel.shape) throw ShapeError(where + ": injection does not end at the relation shape");
    }
  }
}

Presentation tensor_presentation(const GroupRep& W) {
  W.validate();
  Presentation p;
  p.field = W.field;
  p.m = W.shape.m();
  for (int c = 0; c < W.dim; ++c) p.generators.push_back({W.shape, "e" + std::to_string(c + 1)});
  for (int i = 0; i < W.shape.m(); ++i) {
    for (int j = 1; j < W.shape[i]; ++j) {
      const Injection s = MultiPermutation::adjacent(W.shape, i, j).as_injection();
      const Matrix& g = W.gens[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)];
      const auto cols = g.columns();
      for (int r = 0; r < W.dim; ++r) {
        Relation rel{W.shape, {}};
        rel.terms.push_back({r, s, 1});
        for (const auto& e : cols[static_cast<std::size_t>(r)]) rel.terms.push_back({e.index, Injection::identity(W.shape), W.field.neg(e.value)});
        p.relations.push_back(std::move(rel));
      }
    }
  }
  return p;
}

TruncatedModule from_presentation(const Presentation& p, const Shape& bound) {
  validate(p);
  if (bound.m() != p.m) throw DimensionError("box arity does not match the presentation");
  std::vector<Shape> shapes;
  for (const auto& g : p.generators) {
    if (!g.shape.leq(bound)) throw BoxError("generator " + g.label + " at " + g.shape.to_string() + " is not inside box " + bound.to_string());
    shapes.push_back(g.shape);
  }
  if (shapes.empty()) return TruncatedModule::zero(p.field, bound);
  const TruncatedModule F = free_sum(p.field, shapes, bound);
  const Box& box = F.box();

  // Relation vectors in F at their own shapes.
  std::vector<std::pair<Shape, SparseVec>> rels;
  for (const auto& rel : p.relations) {
    if (!box.contains(rel.shape)) continue;
    SparseVec v;
    for (const auto& t : rel.terms) {
      int offset = 0;
      for (int r = 0; r < t.gen; ++r) {
        const Shape& s = shapes[static_cast<std::size_t>(r)];
        if (s.leq(rel.shape)) offset += static_cast<int>(injection_count(s, rel.shape));
      }
      v = axpy(p.field, v, p.field.mul(1, t.coeff), unit_vector(offset + static_cast<int>(injection_index(t.injection))));
    }
    rels.emplace_back(rel.shape, std::move(v));
  }

  std::vector<Echelon> subspaces;
  for (int k = 0; k < box.size(); ++k) subspaces.emplace_back(p.field, F.dim_at(k));
  for_each_index(box.size(), [&](int k) {
    const Shape& n = box.object(k);
    std::vector<SparseVec> seeds;
    for (const auto& [s, v] : rels) {
      if (s.leq(n)) seeds.push_back(apply_standard(F, s, n, v));
    }
    subspaces[static_cast<std::size_t>(k)] = symmetric_closure(F, n, std::move(seeds));
  });
  return quotient_by_subspaces(F, std::move(subspaces)).module;
}

TruncatedModule direct_sum(const TruncatedModule& a, const TruncatedModule& b) {
  if (!(a.field() == b.field())) throw DimensionError("direct sum of modules over different fields");
  if (a.m() != b.m()) throw DimensionError("direct sum of modules with different m");
  std::vector<int> lo;
  for (int i = 0; i < a.m(); ++i) lo.push_back(std::min(a.box().bound()[i], b.box().bound()[i]));
  const Shape bound(lo);
  return block_sum(a.field(), Box(bound), {a.restricted(bound), b.restricted(bound)});
}

// ---------------------------------------------------------------------------
// Submodules and quotients

GradedDims generator_profile(const TruncatedModule& V) {
  const Box& box = V.box();
  GradedDims out{box, std::vector<int>(static_cast<std::size_t>(box.size()), 0)};
  for_each_index(box.size(), [&](int k) {
    const Shape& n = box.object(k);
    std::vector<SparseVec> images;
    for (int i = 0; i < n.m(); ++i) {
      if (n[i] == 0) continue;
      for (auto& col : V.inclusion(n.plus(i, -1), i).columns()) images.push_back(std::move(col));
    }
    out.dims[static_cast<std::size_t>(k)] = V.dim_at(k) - symmetric_closure(V, n, std::move(images)).rank();
  });
  return out;
}

Echelon symmetric_closure(const TruncatedModule& V, const Shape& n, std::vector<SparseVec> seeds) {
  Echelon E(V.field(), V.dim(n));
  std::deque<SparseVec> queue;
  for (auto& s : seeds) {
    if (E.insert(s)) queue.push_back(std::move(s));
  }
  while (!queue.empty() && !E.full()) {
    SparseVec v = std::move(queue.front());
    queue.pop_front();
    for (int i = 0; i < n.m(); ++i) {
      for (int j = 1; j < n[i]; ++j) {
        SparseVec w = V.transposition(n, i, j).apply(v);
        if (E.insert(w)) queue.push_back(std::move(w));
      }
    }
  }
  return E;
}

SubmoduleResult submodule_from_subspaces(const TruncatedModule& V, std::vector<Echelon> subspaces) {
  const Box& box = V.box();
  std::vector<std::vector<SparseVec>> bases(static_cast<std::size_t>(box.size()));
  std::vector<int> dims(static_cast<std::size_t>(box.size()));
  for (int k = 0; k < box.size(); ++k) {
    bases[static_cast<std::size_t>(k)] = subspaces[static_cast<std::size_t>(k)].basis();
    dims[static_cast<std::size_t>(k)] = subspaces[static_cast<std::size_t>(k)].rank();
  }
  auto objs = build_actions(V.field(), box, dims, [&](const Shape& n, const Injection& g, int c) {
    const int k = box.index(n);
    const SparseVec& b = bases[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
    const int t = box.index(g.codomain());
    const SparseVec img = apply(V, g, b);
    const Echelon& E = subspaces[static_cast<std::size_t>(t)];
    if (!E.reduce(img).empty()) throw InternalError("subspaces are not closed under the module action at " + n.to_string());
    return E.coordinates(img);
  });
  ModuleMap emb{box, {}};
  for (int k = 0; k < box.size(); ++k) emb.components.push_back(Matrix::from_columns(V.field(), V.dim_at(k), bases[static_cast<std::size_t>(k)]));
  TruncatedModule U(V.field(), box, std::move(objs));
  GradedDims gens = generator_profile(U);
  return {std::move(U), std::move(emb), std::move(subspaces), std::move(gens)};
}

QuotientResult quotient_by_subspaces(const TruncatedModule& V, std::vector<Echelon> subspaces) {
  const Box& box = V.box();
  std::vector<std::vector<int>> lifts(static_cast<std::size_t>(box.size()));
  std::vector<int> dims(static_cast<std::size_t>(box.size()));
  for (int k = 0; k < box.size(); ++k) {
    lifts[static_cast<std::size_t>(k)] = subspaces[static_cast<std::size_t>(k)].non_pivots();
    dims[static_cast<std::size_t>(k)] = static_cast<int>(lifts[static_cast<std::size_t>(k)].size());
  }
  auto objs = build_actions(V.field(), box, dims, [&](const Shape& n, const Injection& g, int c) {
    const int k = box.index(n);
    const SparseVec img = apply(V, g, unit_vector(lifts[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)]));
    return subspaces[static_cast<std::size_t>(box.index(g.codomain()))].quotient_coordinates(img);
  });
  ModuleMap proj{box, {}};
  for (int k = 0; k < box.size(); ++k) {
    std::vector<SparseVec> cols;
    for (int c = 0; c < V.dim_at(k); ++c) cols.push_back(subspaces[static_cast<std::size_t>(k)].quotient_coordinates(unit_vector(c)));
    proj.components.push_back(Matrix::from_columns(V.field(), dims[static_cast<std::size_t>(k)], cols));
  }
  return {TruncatedModule(V.field(), box, std::move(objs)), std::move(proj), std::move(subspaces)};
}

SubmoduleResult submodule_generated(const TruncatedModule& V, const std::vector<Seed>& seeds) {
  const Box& box = V.box();
  for (const auto& s : seeds) {
    if (!box.contains(s.shape)) throw BoxError("seed at " + s.shape.to_string() + " is outside box " + box.bound().to_string());
  }
  std::vector<Echelon> subspaces;
  for (int k = 0; k < box.size(); ++k) subspaces.emplace_back(V.field(), V.dim_at(k));
  for_each_index(box.size(), [&](int k) {
    const Shape& n = box.object(k);
    std::vector<SparseVec> vs;
    for (const auto& s : seeds) {
      if (s.shape.leq(n)) vs.push_back(apply_standard(V, s.shape, n, s.vector));
    }
    subspaces[static_cast<std::size_t>(k)] = symmetric_closure(V, n, std::move(vs));
  });
  return submodule_from_subspaces(V, std::move(subspaces));
}

namespace {
std::vector<Echelon> column_spaces(const TruncatedModule& target, const ModuleMap& map) {
  const Box& box = target.box();
  std::vector<Echelon> out;
  for (int k = 0; k < box.size(); ++k) out.emplace_back(target.field(), target.dim_at(k));
  for_each_index(box.size(), [&](int k) {
    for (const auto& col : map.components[static_cast<std::size_t>(k)].columns()) out[static_cast<std::size_t>(k)].insert(col);
  });
  return out;
}
}  // namespace

SubmoduleResult image_module(const TruncatedModule& target, const ModuleMap& map) {
  return submodule_from_subspaces(target, column_spaces(target, map));
}

SubmoduleResult kernel_module(const TruncatedModule& source, const ModuleMap& map) {
  const Box& box = source.box();
  std::vector<Echelon> out;
  for (int k = 0; k < box.size(); ++k) out.emplace_back(source.field(), source.dim_at(k));
  for_each_index(box.size(), [&](int k) {
    for (const auto& col : kernel_basis(map.components[static_cast<std::size_t>(k)]).columns()) out[static_cast<std::size_t>(k)].insert(col);
  });
  return submodule_from_subspaces(source, std::move(out));
}

QuotientResult cokernel_module(const TruncatedModule& target, const ModuleMap& map) {
  return quotient_by_subspaces(target, column_spaces(target, map));
}

}  // namespace fimkit
