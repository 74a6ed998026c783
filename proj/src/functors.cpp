#include "fimkit/functors.hpp"

#include "fimkit/parallel.hpp"

namespace fimkit {

namespace {

// iota^a(f): fixes 1..a_i in each factor and sends x to f(x - a_i) + a_i.
Injection embed_by(const Shape& a, const Injection& f) {
  std::vector<std::vector<int>> maps;
  for (int i = 0; i < f.m(); ++i) {
    std::vector<int> c;
    for (int x = 1; x <= a[i]; ++x) c.push_back(x);
    for (int y : f.component(i)) c.push_back(y + a[i]);
    maps.push_back(std::move(c));
  }
  return Injection(f.codomain() + a, std::move(maps));
}

bool all_dims_match(const Box& box, const std::vector<const TruncatedModule*>& plus, const std::vector<const TruncatedModule*>& minus,
                    std::optional<Shape>* first_violation) {
  for (const auto& n : box.objects()) {
    int sum = 0;
    for (const auto* v : plus) sum += v->dim(n);
    for (const auto* v : minus) sum -= v->dim(n);
    if (sum != 0) {
      if (first_violation) *first_violation = n;
      return false;
    }
  }
  return true;
}

}  // namespace

FunctorResult shift_by(const TruncatedModule& V, const Shape& amount) {
  const Shape& bound = V.box().bound();
  if (amount.m() != V.m()) throw DimensionError("shift amount has the wrong arity");
  for (int i = 0; i < V.m(); ++i) {
    if (amount[i] > bound[i]) {
      throw BoxError("box " + bound.to_string() + " is exhausted in direction " + std::to_string(i + 1) + " by shift " + amount.to_string());
    }
  }
  Box box(bound.minus_floor(amount));
  std::vector<TruncatedModule::ObjectData> objs(static_cast<std::size_t>(box.size()));
  ModuleMap natural{box, std::vector<Matrix>(static_cast<std::size_t>(box.size()))};
  for_each_index(box.size(), [&](int k) {
    const Shape& n = box.object(k);
    const Shape up = n + amount;
    TruncatedModule::ObjectData od;
    od.dim = V.dim(up);
    od.trans.resize(static_cast<std::size_t>(n.m()));
    od.incl.resize(static_cast<std::size_t>(n.m()));
    for (int i = 0; i < n.m(); ++i) {
      for (int j = 1; j < n[i]; ++j) od.trans[static_cast<std::size_t>(i)].push_back(V.transposition(up, i, j + amount[i]));
      if (box.contains(n.plus(i))) od.incl[static_cast<std::size_t>(i)] = evaluate(V, embed_by(amount, Injection::pi(n, i)));
    }
    objs[static_cast<std::size_t>(k)] = std::move(od);
    natural.components[static_cast<std::size_t>(k)] = evaluate(V, Injection::standard(n, up));
  });
  return {TruncatedModule(V.field(), std::move(box), std::move(objs)), amount, std::move(natural)};
}

FunctorResult shift(const TruncatedModule& V, int i) {
  if (i < 0 || i >= V.m()) throw DimensionError("shift direction out of range");
  return shift_by(V, Shape::unit(V.m(), i));
}

DerivativeKernel derivative_and_kernel(const TruncatedModule& V, int i) {
  FunctorResult sh = shift(V, i);
  const TruncatedModule base = V.restricted(sh.output.box().bound());
  DerivativeKernel out{kernel_module(base, sh.natural).module, cokernel_module(sh.output, sh.natural).module, std::move(sh), false};
  out.exact = all_dims_match(out.shifted.output.box(), {&out.kernel, &out.shifted.output}, {&base, &out.derivative}, nullptr);
  return out;
}

TotalFunctors total_functors(const TruncatedModule& V) {
  std::vector<int> ones(static_cast<std::size_t>(V.m()), 1);
  const Shape bound = V.box().bound().minus_floor(Shape(ones));
  for (int i = 0; i < V.m(); ++i) {
    if (V.box().bound()[i] == 0) throw BoxError("box is exhausted in direction " + std::to_string(i + 1));
  }
  TotalFunctors out;
  out.box = Box(bound);
  out.kernel = TruncatedModule::zero(V.field(), bound);
  out.shift = out.kernel;
  out.derivative = out.kernel;
  for (int i = 0; i < V.m(); ++i) {
    DerivativeKernel dk = derivative_and_kernel(V, i);
    out.kernel = direct_sum(out.kernel, dk.kernel.restricted(bound));
    out.shift = direct_sum(out.shift, dk.shifted.output.restricted(bound));
    out.derivative = direct_sum(out.derivative, dk.derivative.restricted(bound));
  }
  const TruncatedModule base = V.restricted(bound);
  std::vector<const TruncatedModule*> minus(static_cast<std::size_t>(V.m()), &base);
  minus.push_back(&out.derivative);
  out.exact = all_dims_match(out.box, {&out.kernel, &out.shift}, minus, &out.first_violation);
  return out;
}

TruncationIdeal truncation_and_ideal(const TruncatedModule& V, int i) {
  if (i < 0 || i >= V.m()) throw DimensionError("direction out of range");
  const Box& box = V.box();
  std::vector<Echelon> ideal;
  for (int k = 0; k < box.size(); ++k) {
    ideal.emplace_back(V.field(), V.dim_at(k));
    if (box.object(k)[i] > 0) {
      for (int c = 0; c < V.dim_at(k); ++c) ideal.back().insert(unit_vector(c));
    }
  }
  TruncationIdeal out;
  out.truncation = quotient_by_subspaces(V, ideal).module;
  out.ideal = submodule_from_subspaces(V, std::move(ideal)).module;
  return out;
}

Filtration iterated_image_filtration(const TruncatedModule& V, int direction, int max_steps) {
  if (direction < 0 || direction >= V.m()) throw DimensionError("direction out of range");
  Filtration out;
  out.direction = direction;
  out.steps.push_back(V);
  for (int j = 0; max_steps < 0 || j < max_steps; ++j) {
    const TruncatedModule& cur = out.steps.back();
    if (cur.box().bound()[direction] == 0) {
      out.box_exhausted = true;
      break;
    }
    FunctorResult sh = shift(cur, direction);
    bool injective = true;
    for (int k = 0; k < sh.output.box().size() && injective; ++k) {
      injective = rank(sh.natural.components[static_cast<std::size_t>(k)]) == cur.dim(sh.output.box().object(k));
    }
    if (injective && !out.stabilization) {
      out.stabilization = j;
      break;
    }
    out.steps.push_back(image_module(sh.output, sh.natural).module);
  }
  return out;
}

bool is_torsion_free(const TruncatedModule& V) {
  const Box& box = V.box();
  for (const auto& n : box.objects()) {
    for (int i = 0; i < V.m(); ++i) {
      if (box.contains(n.plus(i)) && rank(V.inclusion(n, i)) != V.dim(n)) return false;
    }
  }
  return true;
}

}  // namespace fimkit
