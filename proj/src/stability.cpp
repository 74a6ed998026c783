#include "fimkit/stability.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "fimkit/parallel.hpp"

namespace fimkit {

// ---------------------------------------------------------------------------
// Characters

namespace {

std::vector<int> beta_set(const std::vector<int>& parts) {
  const int len = static_cast<int>(parts.size());
  std::vector<int> beta;
  for (int i = 0; i < len; ++i) beta.push_back(parts[static_cast<std::size_t>(i)] + (len - 1 - i));
  return beta;
}

std::vector<int> from_beta(std::vector<int> beta) {
  std::sort(beta.rbegin(), beta.rend());
  const int len = static_cast<int>(beta.size());
  std::vector<int> parts;
  for (int i = 0; i < len; ++i) {
    const int p = beta[static_cast<std::size_t>(i)] - (len - 1 - i);
    if (p > 0) parts.push_back(p);
  }
  return parts;
}

struct CharacterCache {
  std::shared_mutex mutex;
  std::map<std::pair<std::vector<int>, std::vector<int>>, long> values;
  std::map<int, CharacterTable> tables;
};

CharacterCache& cache() {
  static CharacterCache c;
  return c;
}

long murnaghan_nakayama(const std::vector<int>& lambda, const std::vector<int>& mu) {
  if (mu.empty()) return 1;
  const auto key = std::make_pair(lambda, mu);
  {
    std::shared_lock lock(cache().mutex);
    auto it = cache().values.find(key);
    if (it != cache().values.end()) return it->second;
  }
  const int r = mu.front();
  const std::vector<int> rest(mu.begin() + 1, mu.end());
  const std::vector<int> beta = beta_set(lambda);
  long total = 0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const int b = beta[i] - r;
    if (b < 0 || std::find(beta.begin(), beta.end(), b) != beta.end()) continue;
    int between = 0;
    for (int x : beta) between += (x > b && x < beta[i]) ? 1 : 0;
    auto moved = beta;
    moved[i] = b;
    const long sub = murnaghan_nakayama(from_beta(moved), rest);
    total += (between % 2 == 0) ? sub : -sub;
  }
  std::unique_lock lock(cache().mutex);
  cache().values.emplace(key, total);
  return total;
}

std::vector<ConjugacyClass> classes_of(int k) {
  if (k == 0) return {ConjugacyClass{Partition{}, 1}};
  return conjugacy_data(k);
}

}  // namespace

long irreducible_character(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) throw DimensionError("character needs |lambda| = |mu|");
  return murnaghan_nakayama(lambda.parts(), mu.parts());
}

long hook_length_dimension(const Partition& lambda) {
  std::int64_t hooks = 1;
  std::vector<int> cols(static_cast<std::size_t>(lambda.first()), 0);
  for (int i = 0; i < lambda.length(); ++i)
    for (int j = 0; j < lambda[i]; ++j) ++cols[static_cast<std::size_t>(j)];
  for (int i = 0; i < lambda.length(); ++i)
    for (int j = 0; j < lambda[i]; ++j) hooks *= (lambda[i] - j - 1) + (cols[static_cast<std::size_t>(j)] - i - 1) + 1;
  return static_cast<long>(factorial(lambda.size()) / hooks);
}

const CharacterTable& character_table(int k) {
  {
    std::shared_lock lock(cache().mutex);
    auto it = cache().tables.find(k);
    if (it != cache().tables.end()) return it->second;
  }
  CharacterTable t;
  t.k = k;
  t.irreducibles = k == 0 ? std::vector<Partition>{Partition{}} : partitions_of(k);
  t.classes = classes_of(k);
  for (const auto& lambda : t.irreducibles) {
    std::vector<long> row;
    for (const auto& c : t.classes) row.push_back(irreducible_character(lambda, c.cycle_type));
    t.values.push_back(std::move(row));
  }
  std::unique_lock lock(cache().mutex);
  return cache().tables.emplace(k, std::move(t)).first->second;
}

long irreducible_dimension(const MultiPartition& lambda) {
  long d = 1;
  for (const auto& p : lambda) d *= hook_length_dimension(p);
  return d;
}

// ---------------------------------------------------------------------------
// Decomposition

Multiplicities decompose(const TruncatedModule& V, const Shape& n) {
  if (V.field().is_prime()) throw UnsupportedError("decomposition into irreducibles needs characteristic 0");
  std::vector<const CharacterTable*> tables;
  for (int i = 0; i < n.m(); ++i) tables.push_back(&character_table(n[i]));

  // Multi-classes in mixed radix over the component tables.
  std::int64_t group = 1, classes = 1;
  for (int i = 0; i < n.m(); ++i) {
    group *= factorial(n[i]);
    classes *= static_cast<std::int64_t>(tables[static_cast<std::size_t>(i)]->classes.size());
  }
  auto digits = [&](std::int64_t c) {
    std::vector<int> d(static_cast<std::size_t>(n.m()));
    for (int i = n.m() - 1; i >= 0; --i) {
      const auto sz = static_cast<std::int64_t>(tables[static_cast<std::size_t>(i)]->classes.size());
      d[static_cast<std::size_t>(i)] = static_cast<int>(c % sz);
      c /= sz;
    }
    return d;
  };
  std::vector<Scalar> weighted(static_cast<std::size_t>(classes));
  for_each_index(static_cast<int>(classes), [&](int c) {
    const auto d = digits(c);
    std::vector<std::vector<int>> perms;
    std::int64_t size = 1;
    for (int i = 0; i < n.m(); ++i) {
      const auto& cl = tables[static_cast<std::size_t>(i)]->classes[static_cast<std::size_t>(d[static_cast<std::size_t>(i)])];
      perms.push_back(class_representative(cl.cycle_type));
      size *= cl.size;
    }
    const Matrix A = action(V, MultiPermutation(std::move(perms)));
    Scalar trace = 0;
    for (int r = 0; r < A.rows(); ++r) trace += entry_at(A.row(r), r);
    weighted[static_cast<std::size_t>(c)] = trace * Scalar(static_cast<long>(size));
  });

  Multiplicities out;
  for (const auto& lambda : multipartitions_of(n)) {
    std::vector<int> rows;
    for (int i = 0; i < n.m(); ++i) {
      const auto& irr = tables[static_cast<std::size_t>(i)]->irreducibles;
      rows.push_back(static_cast<int>(std::find(irr.begin(), irr.end(), lambda[static_cast<std::size_t>(i)]) - irr.begin()));
    }
    Scalar sum = 0;
    for (std::int64_t c = 0; c < classes; ++c) {
      const auto d = digits(c);
      long chi = 1;
      for (int i = 0; i < n.m(); ++i)
        chi *= tables[static_cast<std::size_t>(i)]->values[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])][static_cast<std::size_t>(d[static_cast<std::size_t>(i)])];
      sum += weighted[static_cast<std::size_t>(c)] * chi;
    }
    sum /= Scalar(static_cast<long>(group));
    if (sum.get_den() != 1 || sgn(sum) < 0) throw InternalError("multiplicity of " + to_string(lambda) + " at " + n.to_string() + " is " + sum.get_str());
    if (sgn(sum) > 0) out.emplace(lambda, static_cast<int>(sum.get_num().get_si()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Representation stability

namespace {

std::map<MultiPartition, int> by_tail(const Multiplicities& mult) {
  std::map<MultiPartition, int> out;
  for (const auto& [lambda, c] : mult) {
    MultiPartition tail;
    for (const auto& p : lambda) tail.push_back(p.tail());
    out[tail] += c;
  }
  return out;
}

bool at_least(const Shape& n, const std::vector<int>& lower) {
  for (int i = 0; i < n.m(); ++i)
    if (n[i] < lower[static_cast<std::size_t>(i)]) return false;
  return true;
}

int min_part(const Shape& n) {
  int c = n[0];
  for (int i = 1; i < n.m(); ++i) c = std::min(c, n[i]);
  return c;
}

}  // namespace

StabilityReport stability_report(const TruncatedModule& V, std::optional<std::vector<int>> N) {
  if (V.field().is_prime()) throw UnsupportedError("representation stability needs characteristic 0");
  const Box& box = V.box();
  const int m = V.m();
  StabilityReport out;
  out.gd = generator_profile(V).top_degree();
  out.N = N ? *N : nagpal_complex(V).N;
  for (int i = 0; i < m; ++i) out.threshold.push_back(std::max({2 * out.gd, out.N[static_cast<std::size_t>(i)] + 1, 0}));

  std::vector<std::map<MultiPartition, int>> tails(static_cast<std::size_t>(box.size()));
  for_each_index(box.size(), [&](int k) { tails[static_cast<std::size_t>(k)] = by_tail(decompose(V, box.object(k))); });

  // ok[k]: every check leaving object k holds; checkable[k]: some check exists.
  std::vector<char> inj(static_cast<std::size_t>(box.size()), 1), gen(inj), mult(inj), checkable(static_cast<std::size_t>(box.size()), 0);
  for_each_index(box.size(), [&](int k) {
    const Shape& n = box.object(k);
    for (int i = 0; i < m; ++i) {
      const Shape t = n.plus(i);
      if (!box.contains(t)) continue;
      checkable[static_cast<std::size_t>(k)] = 1;
      const Matrix& X = V.inclusion(n, i);
      if (rank(X) != V.dim(n)) inj[static_cast<std::size_t>(k)] = 0;
      if (symmetric_closure(V, t, X.columns()).rank() != V.dim(t)) gen[static_cast<std::size_t>(k)] = 0;
      if (tails[static_cast<std::size_t>(k)] != tails[static_cast<std::size_t>(box.index(t))]) mult[static_cast<std::size_t>(k)] = 0;
    }
  });

  bool any = false;
  for (int k = 0; k < box.size(); ++k) {
    const Shape& n = box.object(k);
    if (!checkable[static_cast<std::size_t>(k)] || !at_least(n, out.threshold)) continue;
    any = true;
    if (!inj[static_cast<std::size_t>(k)] && !out.injectivity_failure) out.injectivity_failure = n;
    if (!gen[static_cast<std::size_t>(k)] && !out.generation_failure) out.generation_failure = n;
    if (!mult[static_cast<std::size_t>(k)] && !out.multiplicity_failure) out.multiplicity_failure = n;
  }

  int top = 0;
  for (int i = 0; i < m; ++i) top = std::max(top, box.bound()[i]);
  for (int c = top; c >= 0; --c) {
    bool region_has_checks = false, region_ok = true;
    for (int k = 0; k < box.size(); ++k) {
      if (!checkable[static_cast<std::size_t>(k)] || min_part(box.object(k)) < c) continue;
      region_has_checks = true;
      region_ok = region_ok && inj[static_cast<std::size_t>(k)] && gen[static_cast<std::size_t>(k)] && mult[static_cast<std::size_t>(k)];
    }
    if (!region_has_checks) continue;
    if (!region_ok) break;
    out.empirical_onset = c;
  }

  const auto& stable = tails[static_cast<std::size_t>(box.index(box.bound()))];
  for (const auto& [tail, c] : stable) {
    int onset = min_part(box.bound());
    for (int c0 = onset; c0 >= 0; --c0) {
      bool same = true;
      for (int k = 0; k < box.size() && same; ++k) {
        if (min_part(box.object(k)) < c0) continue;
        const auto& tk = tails[static_cast<std::size_t>(k)];
        auto it = tk.find(tail);
        same = (it == tk.end() ? 0 : it->second) == c;
      }
      if (!same) break;
      onset = c0;
    }
    out.families.push_back({tail, c, onset});
  }

  if (!any) {
    out.verdict = Verdict::Inconclusive;
    out.reason = "box " + box.bound().to_string() + " has no checkable object above the threshold";
  } else if (out.injectivity_failure || out.generation_failure || out.multiplicity_failure) {
    out.verdict = Verdict::False;
    const Shape& at = out.injectivity_failure ? *out.injectivity_failure : out.generation_failure ? *out.generation_failure : *out.multiplicity_failure;
    out.reason = "stability fails at " + at.to_string() + " above the threshold";
  } else {
    out.verdict = Verdict::True;
    out.reason = "injective, generating and multiplicity-stable above the threshold";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials and Hilbert fits

int Polynomial::degree() const { return static_cast<int>(coeffs.size()) - 1; }

Scalar Polynomial::operator()(const Scalar& x) const {
  Scalar v = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
  return v;
}

Scalar Polynomial::leading() const { return coeffs.empty() ? Scalar(0) : coeffs.back(); }

std::string Polynomial::to_string() const {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    const Scalar& c = coeffs[static_cast<std::size_t>(d)];
    if (sgn(c) == 0) continue;
    const Scalar a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = a == 1;
    if (!unit || d == 0) os << a.get_str();
    if (d > 0) os << (unit ? "" : "*") << "x" << (d > 1 ? "^" + std::to_string(d) : "");
  }
  return os.str();
}

Polynomial Polynomial::interpolate(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
  if (xs.size() != ys.size()) throw DimensionError("interpolation needs as many values as nodes");
  // Newton divided differences, then expansion into monomials.
  std::vector<Scalar> dd = ys;
  const std::size_t n = xs.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  Polynomial p;
  std::vector<Scalar> basis{1};
  for (std::size_t k = 0; k < n; ++k) {
    if (p.coeffs.size() < basis.size()) p.coeffs.resize(basis.size(), 0);
    for (std::size_t j = 0; j < basis.size(); ++j) p.coeffs[j] += dd[k] * basis[j];
    std::vector<Scalar> next(basis.size() + 1, 0);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      next[j + 1] += basis[j];
      next[j] -= xs[k] * basis[j];
    }
    basis = std::move(next);
  }
  while (!p.coeffs.empty() && sgn(p.coeffs.back()) == 0) p.coeffs.pop_back();
  return p;
}

HilbertFit hilbert_fit(const TruncatedModule& V, std::optional<std::vector<int>> N) {
  const Box& box = V.box();
  const int m = V.m();
  HilbertFit out;
  out.gd = generator_profile(V).top_degree();
  const std::vector<int> thresholds = N ? *N : nagpal_complex(V).N;
  const int points = std::max(out.gd, 0) + 1;
  std::vector<int> start;
  for (int i = 0; i < m; ++i) start.push_back(std::max({out.gd, thresholds[static_cast<std::size_t>(i)] + 1, 0}));
  out.start = Shape(start);
  out.P.assign(static_cast<std::size_t>(m), Polynomial{});
  for (int i = 0; i < m; ++i) {
    if (start[static_cast<std::size_t>(i)] + points - 1 > box.bound()[i]) {
      out.reason = "box " + box.bound().to_string() + " is too small for " + std::to_string(points) + " grid points from " + out.start.to_string();
      return out;
    }
  }
  const Box region(box.bound());
  std::vector<Shape> stable;
  for (const auto& n : region.objects())
    if (out.start.leq(n)) stable.push_back(n);

  for (const auto& n : stable) {
    if (V.dim(n) != 0) {
      out.base = n;
      break;
    }
  }
  if (out.base) {
    const Shape& b = *out.base;
    const Scalar at_base(V.dim(b));
    for (int i = 0; i < m; ++i) {
      std::vector<Scalar> xs, ys;
      for (int x = start[static_cast<std::size_t>(i)]; x < start[static_cast<std::size_t>(i)] + points; ++x) {
        std::vector<int> p = b.parts();
        p[static_cast<std::size_t>(i)] = x;
        xs.emplace_back(x);
        ys.push_back(i == 0 ? Scalar(V.dim(Shape(p))) : Scalar(V.dim(Shape(p))) / at_base);
      }
      out.P[static_cast<std::size_t>(i)] = Polynomial::interpolate(xs, ys);
      if (out.P[static_cast<std::size_t>(i)].degree() > out.gd) out.degrees_ok = false;
    }
  }
  for (const auto& n : stable) {
    Scalar prod = 1;
    for (int i = 0; i < m; ++i) prod *= out.P[static_cast<std::size_t>(i)](Scalar(n[i]));
    if (prod != V.dim(n)) {
      out.residual_zero = false;
      out.first_mismatch = n;
      break;
    }
  }
  if (out.residual_zero && out.degrees_ok) {
    out.verdict = Verdict::True;
    out.reason = "dim V_n factors as a product on the stable region";
  } else {
    out.verdict = Verdict::False;
    out.reason = !out.residual_zero ? "dimension table does not factor at " + out.first_mismatch->to_string() : "a factor has degree above gd";
  }
  return out;
}

}  // namespace fimkit
