#include "fimkit/homology.hpp"

#include <algorithm>
#include <deque>
#include <memory>

#include "fimkit/parallel.hpp"

namespace fimkit {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True:
      return "true";
    case Verdict::False:
      return "false";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// A module we only need to act on: either V itself or a free module of the resolution.
class Ambient {
public:
  virtual ~Ambient() = default;
  virtual int dim(const Shape& n) const = 0;
  virtual SparseVec act(const Injection& f, const SparseVec& v) const = 0;
};

class ModuleAmbient final : public Ambient {
public:
  explicit ModuleAmbient(const TruncatedModule& V) : V_(V) {}
  int dim(const Shape& n) const override { return V_.dim(n); }
  SparseVec act(const Injection& f, const SparseVec& v) const override { return apply(V_, f, v); }

private:
  const TruncatedModule& V_;
};

// Direct sum of free modules acting on basis pairs (generator, injection).
class FreeSum final : public Ambient {
public:
  FreeSum(std::vector<Shape> shapes, const Box& box) : shapes_(std::move(shapes)), box_(box) {
    std::vector<Shape> distinct;
    for (const auto& s : shapes_) {
      auto it = std::find(distinct.begin(), distinct.end(), s);
      shape_id_.push_back(static_cast<int>(it - distinct.begin()));
      if (it == distinct.end()) distinct.push_back(s);
    }
    bases_.assign(distinct.size(), std::vector<std::vector<Injection>>(static_cast<std::size_t>(box_.size())));
    const int jobs = static_cast<int>(distinct.size()) * box_.size();
    for_each_index(jobs, [&](int job) {
      const int sid = job / box_.size(), k = job % box_.size();
      const Shape& s = distinct[static_cast<std::size_t>(sid)];
      if (s.leq(box_.object(k))) bases_[static_cast<std::size_t>(sid)][static_cast<std::size_t>(k)] = enumerate_injections(s, box_.object(k));
    });
    offsets_.resize(static_cast<std::size_t>(box_.size()));
    for (int k = 0; k < box_.size(); ++k) {
      auto& off = offsets_[static_cast<std::size_t>(k)];
      off.push_back(0);
      for (std::size_t g = 0; g < shapes_.size(); ++g) off.push_back(off.back() + static_cast<int>(basis(static_cast<int>(g), k).size()));
    }
  }

  int dim(const Shape& n) const override { return offsets_[static_cast<std::size_t>(box_.index(n))].back(); }
  int dim_at(int k) const { return offsets_[static_cast<std::size_t>(k)].back(); }
  int generators() const { return static_cast<int>(shapes_.size()); }
  const Shape& shape(int g) const { return shapes_[static_cast<std::size_t>(g)]; }
  int offset(int k, int g) const { return offsets_[static_cast<std::size_t>(k)][static_cast<std::size_t>(g)]; }
  const std::vector<Injection>& basis(int g, int k) const {
    return bases_[static_cast<std::size_t>(shape_id_[static_cast<std::size_t>(g)])][static_cast<std::size_t>(k)];
  }

  SparseVec act(const Injection& f, const SparseVec& v) const override {
    const int k = box_.index(f.domain());
    const int t = box_.index(f.codomain());
    const auto& off = offsets_[static_cast<std::size_t>(k)];
    SparseVec out;
    out.reserve(v.size());
    for (const auto& e : v) {
      const int g = static_cast<int>(std::upper_bound(off.begin(), off.end(), e.index) - off.begin()) - 1;
      const Injection& h = basis(g, k)[static_cast<std::size_t>(e.index - off[static_cast<std::size_t>(g)])];
      out.push_back({offset(t, g) + static_cast<int>(injection_index(compose(f, h))), e.value});
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    return out;
  }

  /// Generators whose shape is the object k: a contiguous range.
  std::pair<int, int> generators_at(int k) const {
    const Shape& n = box_.object(k);
    int lo = -1, hi = -1;
    for (int g = 0; g < generators(); ++g) {
      if (shape(g) == n) {
        if (lo < 0) lo = g;
        hi = g + 1;
      }
    }
    return lo < 0 ? std::make_pair(0, 0) : std::make_pair(lo, hi);
  }

private:
  std::vector<Shape> shapes_;
  Box box_;
  std::vector<int> shape_id_;
  std::vector<std::vector<std::vector<Injection>>> bases_;
  std::vector<std::vector<int>> offsets_;
};

std::vector<Injection> adjacent_transpositions(const Shape& n) {
  std::vector<Injection> gens;
  for (int i = 0; i < n.m(); ++i)
    for (int j = 1; j < n[i]; ++j) gens.push_back(MultiPermutation::adjacent(n, i, j).as_injection());
  return gens;
}

// Adds the S_n-orbits of the seeds to E.
void close_up(const Ambient& A, const Shape& n, Echelon& E, std::vector<SparseVec> seeds) {
  std::deque<SparseVec> queue;
  for (auto& s : seeds) {
    if (E.insert(s)) queue.push_back(std::move(s));
  }
  const std::vector<Injection> gens = adjacent_transpositions(n);
  while (!queue.empty() && !E.full()) {
    SparseVec v = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      SparseVec w = A.act(g, v);
      if (E.insert(w)) queue.push_back(std::move(w));
    }
  }
}

Echelon full_space(const Field& field, int d) {
  Echelon E(field, d);
  for (int c = 0; c < d; ++c) E.insert(unit_vector(c));
  return E;
}

Shape lowest_support(const GradedDims& g) {
  std::optional<Shape> best;
  for (const auto& n : g.support()) {
    if (!best || n.degree() < best->degree()) best = n;
  }
  return *best;
}

}  // namespace

// ---------------------------------------------------------------------------
// Homology

HomologyResult homology(const TruncatedModule& V0, int s_max, std::optional<Shape> bound) {
  if (s_max < 0) throw DimensionError("s_max must be non-negative");
  const TruncatedModule V = bound ? V0.restricted(*bound) : V0;
  const Box& box = V.box();
  const Field& field = V.field();
  const int K = box.size();

  ModuleAmbient base(V);
  const Ambient* ambient = &base;
  std::unique_ptr<FreeSum> prev;
  std::vector<Echelon> Z;
  for (int k = 0; k < K; ++k) Z.push_back(full_space(field, V.dim_at(k)));

  HomologyResult out;
  out.box = box;
  // bar_rank[s][k]: rank of the differential H_0(P_s) -> H_0(P_{s-1}) at object k.
  std::vector<std::vector<int>> bar_rank(static_cast<std::size_t>(s_max + 2), std::vector<int>(static_cast<std::size_t>(K), 0));
  std::vector<std::vector<int>> gen_count(static_cast<std::size_t>(s_max + 2));

  for (int s = 0; s <= s_max + 1; ++s) {
    // Lifts of a basis of H_0(Z_s), object by object.
    std::vector<std::vector<SparseVec>> gens(static_cast<std::size_t>(K));
    for_each_index(K, [&](int k) {
      const Shape& n = box.object(k);
      std::vector<SparseVec> lower;
      for (int i = 0; i < n.m(); ++i) {
        if (n[i] == 0) continue;
        const Shape below = n.plus(i, -1);
        const Injection pi = Injection::pi(below, i);
        for (const auto& b : Z[static_cast<std::size_t>(box.index(below))].basis()) lower.push_back(ambient->act(pi, b));
      }
      Echelon L(field, ambient->dim(n));
      close_up(*ambient, n, L, std::move(lower));
      for (const auto& b : Z[static_cast<std::size_t>(k)].basis()) {
        if (L.full()) break;
        if (L.contains(b)) continue;
        gens[static_cast<std::size_t>(k)].push_back(b);
        close_up(*ambient, n, L, {b});
      }
    });
    std::vector<Shape> shapes;
    std::vector<const SparseVec*> lifts;
    auto& counts = gen_count[static_cast<std::size_t>(s)];
    for (int k = 0; k < K; ++k) {
      counts.push_back(static_cast<int>(gens[static_cast<std::size_t>(k)].size()));
      for (const auto& g : gens[static_cast<std::size_t>(k)]) {
        shapes.push_back(box.object(k));
        lifts.push_back(&g);
      }
    }
    out.resolution_generators.push_back(static_cast<int>(shapes.size()));
    auto P = std::make_unique<FreeSum>(shapes, box);

    const bool need_kernel = s <= s_max;
    std::vector<Echelon> nextZ;
    if (need_kernel) {
      for (int k = 0; k < K; ++k) nextZ.emplace_back(field, P->dim_at(k));
    }
    for_each_index(K, [&](int k) {
      const Shape& n = box.object(k);
      if (need_kernel) {
        std::vector<SparseVec> cols;
        cols.reserve(static_cast<std::size_t>(P->dim_at(k)));
        for (int g = 0; g < P->generators(); ++g) {
          for (const auto& f : P->basis(g, k)) cols.push_back(ambient->act(f, *lifts[static_cast<std::size_t>(g)]));
        }
        const Matrix d = Matrix::from_columns(field, ambient->dim(n), cols);
        for (const auto& col : kernel_basis(d).columns()) nextZ[static_cast<std::size_t>(k)].insert(col);
      }
      if (s >= 1) {
        const auto [glo, ghi] = P->generators_at(k);
        const auto [plo, phi] = prev->generators_at(k);
        if (glo == ghi || plo == phi) return;
        const int row_lo = prev->offset(k, plo), row_hi = prev->offset(k, phi);
        std::vector<SparseVec> cols;
        for (int g = glo; g < ghi; ++g) {
          for (const auto& f : P->basis(g, k)) {
            SparseVec img = ambient->act(f, *lifts[static_cast<std::size_t>(g)]);
            SparseVec cut;
            for (auto& e : img) {
              if (e.index >= row_lo && e.index < row_hi) cut.push_back({e.index - row_lo, std::move(e.value)});
            }
            cols.push_back(std::move(cut));
          }
        }
        bar_rank[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)] = rank(Matrix::from_columns(field, row_hi - row_lo, cols));
      }
    });
    if (need_kernel) Z = std::move(nextZ);
    prev = std::move(P);
    ambient = prev.get();
  }

  for (int s = 0; s <= s_max; ++s) {
    GradedDims h{box, std::vector<int>(static_cast<std::size_t>(K), 0)};
    for (int k = 0; k < K; ++k) {
      std::int64_t group = 1;
      for (int x : box.object(k).parts()) group *= factorial(x);
      const std::int64_t chains = gen_count[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)] * group;
      h.dims[static_cast<std::size_t>(k)] = static_cast<int>(chains - bar_rank[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)] -
                                                              bar_rank[static_cast<std::size_t>(s + 1)][static_cast<std::size_t>(k)]);
    }
    out.hd.push_back(h.top_degree());
    out.H.push_back(std::move(h));
  }
  out.gd = out.hd[0];
  return out;
}

bool touches_boundary(const GradedDims& dims) {
  const Shape& b = dims.box.bound();
  for (const auto& n : dims.support()) {
    for (int i = 0; i < n.m(); ++i) {
      if (n[i] >= b[i]) return true;
    }
  }
  return false;
}

RelativeProjectivity relative_projective_test(const TruncatedModule& V0, std::optional<Shape> bound, bool check_h2) {
  const TruncatedModule V = bound ? V0.restricted(*bound) : V0;
  RelativeProjectivity out;
  out.h0 = generator_profile(V);
  GradedDims zero{V.box(), std::vector<int>(static_cast<std::size_t>(V.box().size()), 0)};
  out.h1 = zero;
  out.h2 = zero;
  if (out.h0.is_zero()) {
    out.verdict = Verdict::True;
    out.reason = "zero module";
    return out;
  }
  if (touches_boundary(out.h0)) {
    out.verdict = Verdict::Inconclusive;
    out.reason = "H_0 support touches the box boundary";
    return out;
  }
  const HomologyResult h1 = homology(V, 1);
  out.h1 = h1.H[1];
  if (out.h1.is_zero()) {
    out.verdict = Verdict::True;
    if (!check_h2) {
      out.reason = "H_1 = 0 on the box";
      return out;
    }
    out.h2 = homology(V, 2).H[2];
    out.h2_consistent = out.h2.is_zero();
    out.reason = out.h2_consistent ? "H_1 = 0 and H_2 = 0 on the box" : "H_1 = 0 but H_2 != 0";
  } else {
    out.verdict = Verdict::False;
    out.witness = lowest_support(out.h1);
    out.reason = "H_1 != 0 at " + out.witness->to_string();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Projective dimension over a field

GroupRep top_representation(const TruncatedModule& V, const Shape& n) {
  std::vector<SparseVec> images;
  for (int i = 0; i < n.m(); ++i) {
    if (n[i] == 0) continue;
    for (auto& col : V.inclusion(n.plus(i, -1), i).columns()) images.push_back(std::move(col));
  }
  const Echelon L = symmetric_closure(V, n, std::move(images));
  const auto lifts = L.non_pivots();
  GroupRep W{V.field(), n, static_cast<int>(lifts.size()), {}};
  for (int i = 0; i < n.m(); ++i) {
    std::vector<Matrix> gi;
    for (int j = 1; j < n[i]; ++j) {
      const Matrix& s = V.transposition(n, i, j);
      std::vector<SparseVec> cols;
      for (int c : lifts) cols.push_back(L.quotient_coordinates(s.apply(unit_vector(c))));
      gi.push_back(Matrix::from_columns(V.field(), W.dim, cols));
    }
    W.gens.push_back(std::move(gi));
  }
  return W;
}

bool is_projective_representation(const GroupRep& W) {
  const Field& F = W.field;
  const int d = W.dim;
  if (d == 0) return true;
  const auto elems = enumerate_injections(W.shape, W.shape);
  const int G = static_cast<int>(elems.size());
  // Unknown S: (G d) x d, entry ((g,b),c) at index ((g*d + b)*d + c).
  auto var = [d](int g, int b, int c) { return (g * d + b) * d + c; };
  std::vector<SparseVec> rows;
  std::vector<Scalar> rhs;
  std::vector<Matrix> act;
  for (const auto& g : elems) act.push_back(W.action(MultiPermutation(g.maps())));
  // mu S = I, with mu(g (x) e_b) = W(g) e_b.
  for (int a = 0; a < d; ++a) {
    for (int c = 0; c < d; ++c) {
      SparseVec row;
      for (int g = 0; g < G; ++g) {
        for (const auto& e : act[static_cast<std::size_t>(g)].row(a)) row.push_back({var(g, e.index, c), e.value});
      }
      std::sort(row.begin(), row.end(), [](const Entry& x, const Entry& y) { return x.index < y.index; });
      rows.push_back(std::move(row));
      rhs.push_back(a == c ? 1 : 0);
    }
  }
  // Equivariance for each adjacent transposition t: S_{(t h, b), c} = sum_e S_{(h,b),e} W(t)_{e,c}.
  for (int i = 0; i < W.shape.m(); ++i) {
    for (int j = 1; j < W.shape[i]; ++j) {
      const Injection t = MultiPermutation::adjacent(W.shape, i, j).as_injection();
      const auto wt_cols = W.gens[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)].columns();
      for (int h = 0; h < G; ++h) {
        const int th = static_cast<int>(injection_index(compose(t, elems[static_cast<std::size_t>(h)])));
        for (int b = 0; b < d; ++b) {
          for (int c = 0; c < d; ++c) {
            SparseVec row{{var(th, b, c), 1}};
            for (const auto& e : wt_cols[static_cast<std::size_t>(c)]) row = axpy(F, row, F.neg(e.value), unit_vector(var(h, b, e.index)));
            rows.push_back(std::move(row));
            rhs.push_back(0);
          }
        }
      }
    }
  }
  Matrix A(F, static_cast<int>(rows.size()), G * d * d);
  for (std::size_t r = 0; r < rows.size(); ++r) A.set_row(static_cast<int>(r), std::move(rows[r]));
  SparseVec b;
  for (std::size_t r = 0; r < rhs.size(); ++r) {
    if (!Field::is_zero(rhs[r])) b.push_back({static_cast<int>(r), rhs[r]});
  }
  return solve(A, b).has_value();
}

ProjectiveDimension projective_dim_classifier(const TruncatedModule& V) {
  ProjectiveDimension out;
  const RelativeProjectivity rp = relative_projective_test(V);
  if (rp.verdict != Verdict::True) {
    out.finite = rp.verdict;
    out.reason = rp.verdict == Verdict::False ? "not relative projective (" + rp.reason + ")" : rp.reason;
    return out;
  }
  if (!V.field().is_prime()) {
    out.finite = Verdict::True;
    out.reason = "relative projective over a field of characteristic 0";
    return out;
  }
  for (const auto& n : rp.h0.support()) {
    if (!is_projective_representation(top_representation(V, n))) out.non_projective_tops.push_back(n);
  }
  if (out.non_projective_tops.empty()) {
    out.finite = Verdict::True;
    out.reason = "relative projective with projective tops";
  } else {
    out.finite = Verdict::False;
    out.reason = "H_0 at " + out.non_projective_tops.front().to_string() + " is not projective over " + V.field().name() + "S_n";
  }
  return out;
}

}  // namespace fimkit
