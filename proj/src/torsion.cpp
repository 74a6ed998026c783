#include <algorithm>

#include "fimkit/homology.hpp"
#include "fimkit/parallel.hpp"

namespace fimkit {

namespace {

GradedDims zeros(const Box& box) { return GradedDims{box, std::vector<int>(static_cast<std::size_t>(box.size()), 0)}; }

std::vector<Echelon> empty_subspaces(const TruncatedModule& V) {
  std::vector<Echelon> out;
  for (int k = 0; k < V.box().size(); ++k) out.emplace_back(V.field(), V.dim_at(k));
  return out;
}

std::vector<Echelon> chain_kernels(const TruncatedModule& V) {
  const Box& box = V.box();
  std::vector<Echelon> T = empty_subspaces(V);
  for_each_index(box.size(), [&](int k) {
    const Shape& n = box.object(k);
    if (n == box.bound() || V.dim_at(k) == 0) return;
    for (const auto& col : kernel_basis(evaluate(V, Injection::standard(n, box.bound()))).columns()) T[static_cast<std::size_t>(k)].insert(col);
  });
  return T;
}

// Kernel vectors of every inclusion leaving n.
std::vector<SparseVec> inclusion_kernels(const TruncatedModule& V, const Shape& n) {
  std::vector<SparseVec> out;
  for (int i = 0; i < V.m(); ++i) {
    if (!V.box().contains(n.plus(i))) continue;
    for (auto& col : kernel_basis(V.inclusion(n, i)).columns()) out.push_back(std::move(col));
  }
  return out;
}

int max_td(const std::vector<int>& td) { return td.empty() ? -1 : *std::max_element(td.begin(), td.end()); }

}  // namespace

std::vector<int> torsion_degrees(const TruncatedModule& V) {
  std::vector<int> td(static_cast<std::size_t>(V.m()), -1);
  const Box& box = V.box();
  for (const auto& n : box.objects()) {
    for (int i = 0; i < V.m(); ++i) {
      if (box.contains(n.plus(i)) && V.dim(n) > 0 && rank(V.inclusion(n, i)) < V.dim(n)) td[static_cast<std::size_t>(i)] = std::max(td[static_cast<std::size_t>(i)], n[i]);
    }
  }
  return td;
}

SubmoduleResult torsion_part(const TruncatedModule& V) { return submodule_from_subspaces(V, chain_kernels(V)); }

QuotientResult torsion_free_part(const TruncatedModule& V) { return quotient_by_subspaces(V, chain_kernels(V)); }

TorsionReport torsion_analysis(const TruncatedModule& V) {
  const Box& box = V.box();
  const int m = V.m();
  TorsionReport out;
  std::vector<int> deepest(static_cast<std::size_t>(m), -1);
  for (int i = 0; i < m; ++i) {
    Box kbox(box.bound().minus_floor(Shape::unit(m, i)));
    GradedDims g = zeros(kbox);
    for (int k = 0; k < kbox.size(); ++k) {
      const Shape& n = kbox.object(k);
      if (!box.contains(n.plus(i))) continue;
      g.dims[static_cast<std::size_t>(k)] = V.dim(n) - rank(V.inclusion(n, i));
      if (g.dims[static_cast<std::size_t>(k)] > 0) {
        for (int c = 0; c < m; ++c) deepest[static_cast<std::size_t>(c)] = std::max(deepest[static_cast<std::size_t>(c)], n[c]);
      }
    }
    out.kernels.push_back(std::move(g));
  }
  out.td = torsion_degrees(V);
  out.td_max = max_td(out.td);
  std::vector<int> margin;
  for (int c = 0; c < m; ++c) margin.push_back(box.bound()[c] - std::max(0, deepest[static_cast<std::size_t>(c)]));
  out.margin = Shape(margin);

  // Route 1: kernels of the maps to the top of the box.
  const auto T = chain_kernels(V);
  out.torsion = zeros(box);
  for (int k = 0; k < box.size(); ++k) out.torsion.dims[static_cast<std::size_t>(k)] = T[static_cast<std::size_t>(k)].rank();

  // Route 2: close up the inclusion kernels, pass to the quotient, repeat.
  std::vector<Echelon> C = empty_subspaces(V);
  for (;;) {
    QuotientResult q = quotient_by_subspaces(V, C);
    std::vector<Seed> seeds;
    for (const auto& n : box.objects()) {
      for (auto& v : inclusion_kernels(q.module, n)) seeds.push_back({n, std::move(v)});
    }
    if (seeds.empty()) break;
    ++out.rounds;
    SubmoduleResult u = submodule_generated(q.module, seeds);
    for (int k = 0; k < box.size(); ++k) {
      const auto lifts = C[static_cast<std::size_t>(k)].non_pivots();
      for (const auto& b : u.subspaces[static_cast<std::size_t>(k)].basis()) {
        SparseVec lifted;
        for (const auto& e : b) lifted.push_back({lifts[static_cast<std::size_t>(e.index)], e.value});
        C[static_cast<std::size_t>(k)].insert(lifted);
      }
    }
  }
  out.torsion_closure = zeros(box);
  for (int k = 0; k < box.size(); ++k) {
    out.torsion_closure.dims[static_cast<std::size_t>(k)] = C[static_cast<std::size_t>(k)].rank();
    if (C[static_cast<std::size_t>(k)].rank() != T[static_cast<std::size_t>(k)].rank()) out.routes_agree = false;
    for (const auto& b : C[static_cast<std::size_t>(k)].basis()) {
      if (!T[static_cast<std::size_t>(k)].contains(b)) out.routes_agree = false;
    }
  }

  for (int i = 0; i < m; ++i) {
    const int t = out.td[static_cast<std::size_t>(i)];
    if (t < 0 || box.bound()[i] == 0) {
      out.shift_drop.emplace_back();
      continue;
    }
    const int shifted = torsion_degrees(shift(V, i).output)[static_cast<std::size_t>(i)];
    out.shift_drop.emplace_back(shifted <= t - 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The complex of relative projectives

namespace {

bool fits(const Shape& amount, const Shape& bound) { return amount.leq(bound); }

NagpalComplex build_complex(const TruncatedModule& V, const Shape& a, int gd, bool test_pieces) {
  NagpalComplex out;
  out.shift = a;
  out.gd = gd;
  out.N.assign(static_cast<std::size_t>(V.m()), -1);
  TruncatedModule cur = V;
  for (;;) {
    out.pieces.push_back(cur);
    const auto T = torsion_part(cur);
    out.homology.push_back(T.module.dims());
    out.homology_td.push_back(torsion_degrees(cur));
    for (int i = 0; i < V.m(); ++i) out.N[static_cast<std::size_t>(i)] = std::max(out.N[static_cast<std::size_t>(i)], out.homology_td.back()[static_cast<std::size_t>(i)]);
    if (cur.is_zero()) {
      out.complete = true;
      break;
    }
    if (!fits(a, cur.box().bound()) || static_cast<int>(out.F.size()) > gd + 1) break;
    QuotientResult free_part = torsion_free_part(cur);
    FunctorResult sh = shift_by(free_part.module, a);
    const Box& fbox = sh.output.box();
    ModuleMap to_F{fbox, {}};
    for (const auto& n : fbox.objects()) to_F.components.push_back(sh.natural.at(n) * free_part.projection.at(n));
    out.F.push_back(sh.output);
    cur = cokernel_module(sh.output, to_F).module;
  }
  out.l = -1;
  for (int j = 0; j < static_cast<int>(out.F.size()); ++j) {
    if (!out.F[static_cast<std::size_t>(j)].is_zero()) out.l = j;
  }
  for (int j = 0; j < static_cast<int>(out.F.size()); ++j) {
    const int g = generator_profile(out.F[static_cast<std::size_t>(j)]).top_degree();
    out.gd_F.push_back(g);
    if (g > gd - j) out.gd_bound_ok = false;
    if (test_pieces) out.F_relative_projective.push_back(relative_projective_test(out.F[static_cast<std::size_t>(j)], {}, false).verdict);
  }
  out.length_ok = out.l <= gd;
  return out;
}

bool all_true(const std::vector<Verdict>& v) {
  return std::all_of(v.begin(), v.end(), [](Verdict x) { return x == Verdict::True; });
}

}  // namespace

NagpalComplex nagpal_complex(const TruncatedModule& V, std::optional<Shape> shift) {
  const int gd = generator_profile(V).top_degree();
  if (shift) return build_complex(V, *shift, gd, true);
  std::optional<NagpalComplex> fallback;
  for (int c = 0;; ++c) {
    const Shape a(std::vector<int>(static_cast<std::size_t>(V.m()), c));
    if (!fits(a, V.box().bound())) break;
    NagpalComplex cx = build_complex(V, a, gd, true);
    if (cx.complete && all_true(cx.F_relative_projective)) return cx;
    if (!fallback || (!fallback->complete && cx.complete)) fallback = std::move(cx);
  }
  return fallback ? *fallback : build_complex(V, Shape::zero(V.m()), gd, true);
}

ShiftedRelativeProjectivity shifted_relative_projectivity(const TruncatedModule& V, const Shape& n, const std::optional<std::vector<int>>& N) {
  ShiftedRelativeProjectivity out;
  if (N) {
    bool above = true;
    for (int i = 0; i < V.m(); ++i) above = above && n[i] > (*N)[static_cast<std::size_t>(i)];
    out.predicted = above;
  }
  if (!fits(n, V.box().bound())) return out;
  out.verdict = relative_projective_test(shift_by(V, n).output, {}, false).verdict;
  if (out.predicted && out.verdict != Verdict::Inconclusive) {
    const bool actual = out.verdict == Verdict::True;
    out.sufficient_ok = !*out.predicted || actual;
    out.consistent = actual == *out.predicted;
  }
  return out;
}

}  // namespace fimkit
