#include "fimkit/module.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace fimkit {

// ---------------------------------------------------------------------------
// Box

Box::Box(Shape bound) : bound_(std::move(bound)), objects_(shapes_below(bound_)) {
  stride_.assign(static_cast<std::size_t>(bound_.m()), 1);
  for (int i = bound_.m() - 2; i >= 0; --i) {
    stride_[static_cast<std::size_t>(i)] = stride_[static_cast<std::size_t>(i) + 1] * (bound_[i + 1] + 1);
  }
}

bool Box::contains(const Shape& n) const { return n.m() == bound_.m() && n.leq(bound_); }

int Box::index(const Shape& n) const {
  if (!contains(n)) throw BoxError("object " + n.to_string() + " outside box " + bound_.to_string());
  int idx = 0;
  for (int i = 0; i < n.m(); ++i) idx += n[i] * stride_[static_cast<std::size_t>(i)];
  return idx;
}

// ---------------------------------------------------------------------------
// GradedDims

bool GradedDims::is_zero() const {
  return std::all_of(dims.begin(), dims.end(), [](int d) { return d == 0; });
}

int GradedDims::total() const { return std::accumulate(dims.begin(), dims.end(), 0); }

int GradedDims::top_degree() const {
  int top = -1;
  for (int k = 0; k < box.size(); ++k) {
    if (dims[static_cast<std::size_t>(k)] != 0) top = std::max(top, box.object(k).degree());
  }
  return top;
}

std::vector<Shape> GradedDims::support() const {
  std::vector<Shape> out;
  for (int k = 0; k < box.size(); ++k) {
    if (dims[static_cast<std::size_t>(k)] != 0) out.push_back(box.object(k));
  }
  return out;
}

GradedDims GradedDims::restricted(const Shape& bound) const {
  GradedDims out{Box(bound), {}};
  for (const auto& n : out.box.objects()) out.dims.push_back(at(n));
  return out;
}

// ---------------------------------------------------------------------------
// TruncatedModule

TruncatedModule::TruncatedModule(Field field, Box box, std::vector<ObjectData> objects)
    : field_(field), box_(std::move(box)), objects_(std::move(objects)) {
  if (static_cast<int>(objects_.size()) != box_.size()) throw InternalError("object table does not match box");
  for (int k = 0; k < box_.size(); ++k) {
    const Shape& n = box_.object(k);
    auto& od = objects_[static_cast<std::size_t>(k)];
    if (static_cast<int>(od.trans.size()) != m() || static_cast<int>(od.incl.size()) != m()) {
      throw InternalError("generator table has wrong arity at " + n.to_string());
    }
    for (int i = 0; i < m(); ++i) {
      const auto& ts = od.trans[static_cast<std::size_t>(i)];
      if (static_cast<int>(ts.size()) != std::max(0, n[i] - 1)) {
        throw InternalError("wrong number of transpositions at " + n.to_string());
      }
      for (const auto& s : ts) {
        if (s.rows() != od.dim || s.cols() != od.dim) throw InternalError("transposition size mismatch at " + n.to_string());
      }
      const Shape up = n.plus(i);
      const auto& x = od.incl[static_cast<std::size_t>(i)];
      if (box_.contains(up)) {
        if (!x) throw InternalError("missing inclusion at " + n.to_string());
        const int target = objects_[static_cast<std::size_t>(box_.index(up))].dim;
        if (x->rows() != target || x->cols() != od.dim) {
          throw InternalError("inclusion size mismatch at " + n.to_string() + " direction " + std::to_string(i + 1));
        }
      } else if (x) {
        throw InternalError("inclusion leaves the box at " + n.to_string());
      }
    }
  }
}

TruncatedModule TruncatedModule::zero(Field field, const Shape& bound) {
  Box box(bound);
  std::vector<ObjectData> objs(static_cast<std::size_t>(box.size()));
  for (int k = 0; k < box.size(); ++k) {
    const Shape& n = box.object(k);
    auto& od = objs[static_cast<std::size_t>(k)];
    od.trans.resize(static_cast<std::size_t>(n.m()));
    od.incl.resize(static_cast<std::size_t>(n.m()));
    for (int i = 0; i < n.m(); ++i) {
      for (int j = 1; j < n[i]; ++j) od.trans[static_cast<std::size_t>(i)].emplace_back(field, 0, 0);
      if (box.contains(n.plus(i))) od.incl[static_cast<std::size_t>(i)] = Matrix(field, 0, 0);
    }
  }
  return TruncatedModule(field, std::move(box), std::move(objs));
}

GradedDims TruncatedModule::dims() const {
  GradedDims g{box_, {}};
  g.dims.reserve(objects_.size());
  for (const auto& od : objects_) g.dims.push_back(od.dim);
  return g;
}

bool TruncatedModule::is_zero() const {
  return std::all_of(objects_.begin(), objects_.end(), [](const ObjectData& od) { return od.dim == 0; });
}

const Matrix& TruncatedModule::transposition(const Shape& n, int i, int j) const {
  const auto& od = objects_[static_cast<std::size_t>(box_.index(n))];
  if (i < 0 || i >= m() || j < 1 || j >= n[i]) throw ShapeError("no transposition s_{" + std::to_string(i + 1) + "," + std::to_string(j) + "} at " + n.to_string());
  return od.trans[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)];
}

const Matrix& TruncatedModule::inclusion(const Shape& n, int i) const {
  const auto& od = objects_[static_cast<std::size_t>(box_.index(n))];
  if (i < 0 || i >= m()) throw DimensionError("direction out of range");
  const auto& x = od.incl[static_cast<std::size_t>(i)];
  if (!x) throw BoxError("inclusion from " + n.to_string() + " in direction " + std::to_string(i + 1) + " leaves box " + box_.bound().to_string());
  return *x;
}

TruncatedModule TruncatedModule::with_inclusion(const Shape& n, int i, Matrix x) const {
  auto objs = objects_;
  auto& slot = objs[static_cast<std::size_t>(box_.index(n))].incl.at(static_cast<std::size_t>(i));
  if (!slot) throw BoxError("no inclusion to replace");
  slot = std::move(x);
  return TruncatedModule(field_, box_, std::move(objs));
}

TruncatedModule TruncatedModule::with_transposition(const Shape& n, int i, int j, Matrix s) const {
  auto objs = objects_;
  objs[static_cast<std::size_t>(box_.index(n))].trans.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j - 1)) = std::move(s);
  return TruncatedModule(field_, box_, std::move(objs));
}

TruncatedModule TruncatedModule::restricted(const Shape& bound) const {
  if (!bound.leq(box_.bound())) throw BoxError("restriction to " + bound.to_string() + " is not inside " + box_.bound().to_string());
  Box box(bound);
  std::vector<ObjectData> objs;
  objs.reserve(static_cast<std::size_t>(box.size()));
  for (const auto& n : box.objects()) {
    ObjectData od = objects_[static_cast<std::size_t>(box_.index(n))];
    for (int i = 0; i < m(); ++i) {
      if (!box.contains(n.plus(i))) od.incl[static_cast<std::size_t>(i)].reset();
    }
    objs.push_back(std::move(od));
  }
  return TruncatedModule(field_, std::move(box), std::move(objs));
}

ModuleMap ModuleMap::restricted(const Shape& bound) const {
  ModuleMap out{Box(bound), {}};
  for (const auto& n : out.box.objects()) out.components.push_back(at(n));
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

Matrix action(const TruncatedModule& V, const MultiPermutation& sigma) {
  const Shape& n = sigma.shape();
  std::optional<Matrix> acc;
  for (int i = 0; i < n.m(); ++i) {
    for (int w : permutation_word(sigma.component(i))) {
      const Matrix& s = V.transposition(n, i, w);
      acc = acc ? (*acc) * s : s;
    }
  }
  return acc ? *acc : Matrix::identity(V.field(), V.dim(n));
}

Matrix evaluate_along(const TruncatedModule& V, const Injection& f, const std::vector<int>& direction_order) {
  if (!V.box().contains(f.codomain())) {
    throw BoxError("injection codomain " + f.codomain().to_string() + " outside box " + V.box().bound().to_string());
  }
  const auto fac = canonical_factorization(f);
  std::optional<Matrix> chain;
  Shape cur = f.domain();
  for (int dir : direction_order) {
    for (int k = 0; k < fac.steps[dir]; ++k) {
      const Matrix& x = V.inclusion(cur, dir);
      chain = chain ? x * (*chain) : x;
      cur = cur.plus(dir);
    }
  }
  Matrix rho = chain ? *chain : Matrix::identity(V.field(), V.dim(f.domain()));
  if (fac.sigma.is_identity()) return rho;
  return action(V, fac.sigma) * rho;
}

Matrix evaluate(const TruncatedModule& V, const Injection& f) {
  std::vector<int> order(static_cast<std::size_t>(f.m()));
  std::iota(order.begin(), order.end(), 0);
  return evaluate_along(V, f, order);
}

SparseVec apply_standard(const TruncatedModule& V, const Shape& from, const Shape& to, SparseVec v) {
  Shape cur = from;
  for (int dir = 0; dir < from.m(); ++dir) {
    for (int k = from[dir]; k < to[dir]; ++k) {
      v = V.inclusion(cur, dir).apply(v);
      cur = cur.plus(dir);
    }
  }
  return v;
}

SparseVec apply(const TruncatedModule& V, const Injection& f, const SparseVec& v) {
  const auto fac = canonical_factorization(f);
  SparseVec out = apply_standard(V, f.domain(), f.codomain(), v);
  const Shape& t = f.codomain();
  for (int i = 0; i < t.m(); ++i) {
    auto word = permutation_word(fac.sigma.component(i));
    for (auto it = word.rbegin(); it != word.rend(); ++it) out = V.transposition(t, i, *it).apply(out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Axioms

namespace {

class AxiomChecker {
public:
  AxiomChecker(const TruncatedModule& V, AxiomReport& report) : V_(V), report_(report) {}

  void begin(const std::string& name) {
    name_ = name;
    ok_ = true;
  }
  void end() { report_.checks.emplace_back(name_, ok_); }

  void expect(bool cond, const Shape& where, const std::string& detail) {
    if (cond) return;
    ok_ = false;
    if (!report_.first_failure) report_.first_failure = AxiomFailure{name_, where, detail};
  }

private:
  const TruncatedModule& V_;
  AxiomReport& report_;
  std::string name_;
  bool ok_ = true;
};

Injection random_injection(const Shape& from, const Shape& to, std::mt19937& rng) {
  std::vector<std::vector<int>> maps;
  for (int i = 0; i < from.m(); ++i) {
    std::vector<int> pool(static_cast<std::size_t>(to[i]));
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(static_cast<std::size_t>(from[i]));
    maps.push_back(std::move(pool));
  }
  return Injection(to, std::move(maps));
}

Shape random_between(const Shape& lo, const Shape& hi, std::mt19937& rng) {
  std::vector<int> p;
  for (int i = 0; i < lo.m(); ++i) p.push_back(std::uniform_int_distribution<int>(lo[i], hi[i])(rng));
  return Shape(std::move(p));
}

std::string sij(int i, int j) { return "s_{" + std::to_string(i + 1) + "," + std::to_string(j) + "}"; }

}  // namespace

AxiomReport check_module_axioms(const TruncatedModule& V, const AxiomOptions& options) {
  AxiomReport report;
  AxiomChecker chk(V, report);
  const Box& box = V.box();
  const int m = V.m();

  chk.begin("coxeter");
  for (const auto& n : box.objects()) {
    const Matrix id = Matrix::identity(V.field(), V.dim(n));
    for (int i = 0; i < m; ++i) {
      for (int j = 1; j < n[i]; ++j) {
        const Matrix& s = V.transposition(n, i, j);
        chk.expect(s * s == id, n, sij(i, j) + " does not square to the identity");
        if (j + 1 < n[i]) {
          const Matrix& t = V.transposition(n, i, j + 1);
          chk.expect(s * t * s == t * s * t, n, "braid relation fails for " + sij(i, j));
        }
        for (int k = j + 2; k < n[i]; ++k) {
          const Matrix& u = V.transposition(n, i, k);
          chk.expect(s * u == u * s, n, sij(i, j) + " and " + sij(i, k) + " do not commute");
        }
        for (int i2 = i + 1; i2 < m; ++i2) {
          for (int k = 1; k < n[i2]; ++k) {
            const Matrix& u = V.transposition(n, i2, k);
            chk.expect(s * u == u * s, n, sij(i, j) + " and " + sij(i2, k) + " do not commute");
          }
        }
      }
    }
  }
  chk.end();

  chk.begin("equivariance");
  for (const auto& n : box.objects()) {
    for (int i = 0; i < m; ++i) {
      const Shape up = n.plus(i);
      if (!box.contains(up)) continue;
      const Matrix& x = V.inclusion(n, i);
      for (int i2 = 0; i2 < m; ++i2) {
        for (int j = 1; j < n[i2]; ++j) {
          const int j_up = (i2 == i) ? j + 1 : j;
          chk.expect(x * V.transposition(n, i2, j) == V.transposition(up, i2, j_up) * x, n,
                     "X_" + std::to_string(i + 1) + " is not equivariant for " + sij(i2, j));
        }
      }
    }
  }
  chk.end();

  chk.begin("cross-direction");
  for (const auto& n : box.objects()) {
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        const Shape top = n.plus(i).plus(j);
        if (!box.contains(top)) continue;
        chk.expect(V.inclusion(n.plus(i), j) * V.inclusion(n, i) == V.inclusion(n.plus(j), i) * V.inclusion(n, j), n,
                   "square of directions " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " does not commute");
      }
    }
  }
  chk.end();

  chk.begin("same-direction");
  for (const auto& n : box.objects()) {
    for (int i = 0; i < m; ++i) {
      const Shape top = n.plus(i, 2);
      if (!box.contains(top)) continue;
      const Matrix xx = V.inclusion(n.plus(i), i) * V.inclusion(n, i);
      chk.expect(V.transposition(top, i, 1) * xx == xx, n,
                 "double inclusion in direction " + std::to_string(i + 1) + " is not fixed by " + sij(i, 1));
    }
  }
  chk.end();

  std::mt19937 rng(options.seed);
  const Shape zero = Shape::zero(m);
  chk.begin("functoriality");
  for (int k = 0; k < options.random_injections; ++k) {
    const Shape c = random_between(zero, box.bound(), rng);
    const Shape b = random_between(zero, c, rng);
    const Shape a = random_between(zero, b, rng);
    const Injection f = random_injection(a, b, rng);
    const Injection g = random_injection(b, c, rng);
    chk.expect(evaluate(V, compose(g, f)) == evaluate(V, g) * evaluate(V, f), a,
               "V(g o f) != V(g) V(f) for f=" + f.to_string() + " g=" + g.to_string());
  }
  chk.end();

  chk.begin("factorization-independence");
  std::vector<int> forward(static_cast<std::size_t>(m));
  std::iota(forward.begin(), forward.end(), 0);
  std::vector<int> backward(forward.rbegin(), forward.rend());
  for (int k = 0; k < options.random_injections; ++k) {
    const Shape b = random_between(zero, box.bound(), rng);
    const Shape a = random_between(zero, b, rng);
    const Injection f = random_injection(a, b, rng);
    chk.expect(evaluate_along(V, f, forward) == evaluate_along(V, f, backward), a,
               "staircase paths disagree for f=" + f.to_string());
  }
  chk.end();

  return report;
}

}  // namespace fimkit
