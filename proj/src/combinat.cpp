#include "fimkit/combinat.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace fimkit {

namespace {

void require_same_m(const Shape& a, const Shape& b) {
  if (a.m() != b.m()) {
    throw DimensionError("shapes " + a.to_string() + " and " + b.to_string() + " have different m");
  }
}

// Minimal tokenizer shared by the shape / injection / partition parsers.
class Cursor {
public:
  explicit Cursor(std::string_view s) : s_(s) {}
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  int integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start])))) {
      fail("expected integer");
    }
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }
  bool at_end() {
    skip_ws();
    return pos_ == s_.size();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at column " + std::to_string(pos_ + 1) + " in \"" + std::string(s_) + "\"");
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::vector<int> parse_int_list(Cursor& c, char open, char close) {
  std::vector<int> out;
  c.expect(open);
  if (c.eat(close)) return out;
  do {
    out.push_back(c.integer());
  } while (c.eat(','));
  c.expect(close);
  return out;
}

std::string join(const std::vector<int>& v, char open, char close) {
  std::string s(1, open);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(v[k]);
  }
  s += close;
  return s;
}

bool is_permutation_of(const std::vector<int>& p) {
  std::vector<char> seen(p.size() + 1, 0);
  for (int x : p) {
    if (x < 1 || x > static_cast<int>(p.size()) || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = 1;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Shape

Shape::Shape(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int x : parts_) {
    if (x < 0) throw ShapeError("negative entry in shape " + to_string());
  }
}

Shape Shape::unit(int m, int i) {
  std::vector<int> p(static_cast<std::size_t>(m), 0);
  p.at(static_cast<std::size_t>(i)) = 1;
  return Shape(std::move(p));
}

int Shape::degree() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

bool Shape::leq(const Shape& other) const {
  require_same_m(*this, other);
  for (int i = 0; i < m(); ++i) {
    if ((*this)[i] > other[i]) return false;
  }
  return true;
}

Shape Shape::plus(int i, int k) const {
  if (i < 0 || i >= m()) throw DimensionError("direction index out of range");
  std::vector<int> p = parts_;
  p[static_cast<std::size_t>(i)] += k;
  return Shape(std::move(p));
}

Shape Shape::operator+(const Shape& o) const {
  require_same_m(*this, o);
  std::vector<int> p = parts_;
  for (int i = 0; i < m(); ++i) p[static_cast<std::size_t>(i)] += o[i];
  return Shape(std::move(p));
}

Shape Shape::minus_floor(const Shape& o) const {
  require_same_m(*this, o);
  std::vector<int> p = parts_;
  for (int i = 0; i < m(); ++i) p[static_cast<std::size_t>(i)] = std::max(0, p[static_cast<std::size_t>(i)] - o[i]);
  return Shape(std::move(p));
}

Shape Shape::scaled(int k) const {
  std::vector<int> p = parts_;
  for (int& x : p) x *= k;
  return Shape(std::move(p));
}

std::string Shape::to_string() const { return join(parts_, '(', ')'); }

Shape Shape::parse(std::string_view text) {
  Cursor c(text);
  auto parts = parse_int_list(c, '(', ')');
  if (!c.at_end()) c.fail("trailing characters");
  if (parts.empty()) c.fail("shape needs at least one entry");
  for (int x : parts) {
    if (x < 0) c.fail("negative shape entry");
  }
  return Shape(std::move(parts));
}

std::vector<Shape> shapes_below(const Shape& bound) {
  std::vector<Shape> out;
  std::vector<int> cur(static_cast<std::size_t>(bound.m()), 0);
  while (true) {
    out.emplace_back(cur);
    int i = bound.m() - 1;
    while (i >= 0) {
      auto& c = cur[static_cast<std::size_t>(i)];
      if (c < bound[i]) {
        ++c;
        break;
      }
      c = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Injection

Injection::Injection(Shape codomain, std::vector<std::vector<int>> maps)
    : codomain_(std::move(codomain)), maps_(std::move(maps)) {
  if (static_cast<int>(maps_.size()) != codomain_.m()) {
    throw DimensionError("injection has " + std::to_string(maps_.size()) + " components, codomain has m=" +
                         std::to_string(codomain_.m()));
  }
  std::vector<int> dom;
  dom.reserve(maps_.size());
  for (int i = 0; i < codomain_.m(); ++i) {
    const auto& f = maps_[static_cast<std::size_t>(i)];
    std::vector<char> seen(static_cast<std::size_t>(codomain_[i]) + 1, 0);
    for (int x : f) {
      if (x < 1 || x > codomain_[i]) {
        throw ShapeError("image " + std::to_string(x) + " outside [" + std::to_string(codomain_[i]) + "]");
      }
      if (seen[static_cast<std::size_t>(x)]) throw ShapeError("component " + std::to_string(i + 1) + " is not injective");
      seen[static_cast<std::size_t>(x)] = 1;
    }
    dom.push_back(static_cast<int>(f.size()));
  }
  domain_ = Shape(std::move(dom));
}

Injection Injection::identity(const Shape& n) {
  std::vector<std::vector<int>> maps;
  for (int i = 0; i < n.m(); ++i) {
    std::vector<int> c(static_cast<std::size_t>(n[i]));
    std::iota(c.begin(), c.end(), 1);
    maps.push_back(std::move(c));
  }
  return Injection(n, std::move(maps));
}

Injection Injection::pi(const Shape& n, int i) { return standard(n, n.plus(i)); }

Injection Injection::standard(const Shape& from, const Shape& to) {
  if (!from.leq(to)) throw ShapeError("no morphism " + from.to_string() + " -> " + to.to_string());
  std::vector<std::vector<int>> maps;
  for (int i = 0; i < from.m(); ++i) {
    std::vector<int> c(static_cast<std::size_t>(from[i]));
    std::iota(c.begin(), c.end(), 1 + to[i] - from[i]);
    maps.push_back(std::move(c));
  }
  return Injection(to, std::move(maps));
}

std::string Injection::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (i) s += ',';
    s += join(maps_[i], '[', ']');
  }
  s += ']';
  return s;
}

Injection Injection::parse(std::string_view text, const Shape& codomain) {
  Cursor c(text);
  std::vector<std::vector<int>> maps;
  c.expect('[');
  if (!c.eat(']')) {
    do {
      maps.push_back(parse_int_list(c, '[', ']'));
    } while (c.eat(','));
    c.expect(']');
  }
  if (!c.at_end()) c.fail("trailing characters");
  try {
    return Injection(codomain, std::move(maps));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid injection \"") + std::string(text) + "\": " + e.what());
  }
}

Injection compose(const Injection& g, const Injection& f) {
  if (f.codomain() != g.domain()) {
    throw ShapeError("cannot compose: codomain " + f.codomain().to_string() + " != domain " + g.domain().to_string());
  }
  std::vector<std::vector<int>> maps(static_cast<std::size_t>(f.m()));
  for (int i = 0; i < f.m(); ++i) {
    const auto& fi = f.component(i);
    const auto& gi = g.component(i);
    auto& out = maps[static_cast<std::size_t>(i)];
    out.reserve(fi.size());
    for (int x : fi) out.push_back(gi[static_cast<std::size_t>(x - 1)]);
  }
  return Injection(g.codomain(), std::move(maps));
}

Injection self_embed(int i, const Injection& f) {
  if (i < 0 || i >= f.m()) throw DimensionError("self_embed direction out of range");
  auto maps = f.maps();
  auto& c = maps[static_cast<std::size_t>(i)];
  std::vector<int> lifted;
  lifted.reserve(c.size() + 1);
  lifted.push_back(1);
  for (int x : c) lifted.push_back(x + 1);
  c = std::move(lifted);
  return Injection(f.codomain().plus(i), std::move(maps));
}

std::int64_t falling_factorial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int j = 0; j < k; ++j) r *= (n - j);
  return r;
}

std::int64_t factorial(int n) { return falling_factorial(n, n); }

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  return falling_factorial(n, k) / factorial(k);
}

std::int64_t injection_count(const Shape& from, const Shape& to) {
  require_same_m(from, to);
  std::int64_t c = 1;
  for (int i = 0; i < from.m(); ++i) c *= falling_factorial(to[i], from[i]);
  return c;
}

namespace {

void component_injections(int n, int t, std::vector<int>& cur, std::vector<char>& used,
                          std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int x = 1; x <= t; ++x) {
    if (used[static_cast<std::size_t>(x)]) continue;
    used[static_cast<std::size_t>(x)] = 1;
    cur.push_back(x);
    component_injections(n, t, cur, used, out);
    cur.pop_back();
    used[static_cast<std::size_t>(x)] = 0;
  }
}

std::int64_t component_rank(const std::vector<int>& images, int t) {
  const int k = static_cast<int>(images.size());
  std::vector<char> used(static_cast<std::size_t>(t) + 1, 0);
  std::int64_t rank = 0;
  for (int j = 0; j < k; ++j) {
    int a = images[static_cast<std::size_t>(j)];
    int smaller_unused = 0;
    for (int x = 1; x < a; ++x) smaller_unused += used[static_cast<std::size_t>(x)] ? 0 : 1;
    rank += smaller_unused * falling_factorial(t - j - 1, k - j - 1);
    used[static_cast<std::size_t>(a)] = 1;
  }
  return rank;
}

}  // namespace

std::vector<Injection> enumerate_injections(const Shape& from, const Shape& to) {
  require_same_m(from, to);
  if (!from.leq(to)) return {};
  std::vector<std::vector<std::vector<int>>> per(static_cast<std::size_t>(from.m()));
  for (int i = 0; i < from.m(); ++i) {
    std::vector<int> cur;
    std::vector<char> used(static_cast<std::size_t>(to[i]) + 1, 0);
    component_injections(from[i], to[i], cur, used, per[static_cast<std::size_t>(i)]);
  }
  std::vector<Injection> out;
  out.reserve(static_cast<std::size_t>(injection_count(from, to)));
  std::vector<std::size_t> digit(per.size(), 0);
  while (true) {
    std::vector<std::vector<int>> maps;
    maps.reserve(per.size());
    for (std::size_t i = 0; i < per.size(); ++i) maps.push_back(per[i][digit[i]]);
    out.emplace_back(to, std::move(maps));
    int i = static_cast<int>(per.size()) - 1;
    while (i >= 0) {
      auto ui = static_cast<std::size_t>(i);
      if (++digit[ui] < per[ui].size()) break;
      digit[ui] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

std::int64_t injection_index(const Injection& f) {
  std::int64_t idx = 0;
  for (int i = 0; i < f.m(); ++i) {
    idx = idx * falling_factorial(f.codomain()[i], f.domain()[i]) + component_rank(f.component(i), f.codomain()[i]);
  }
  return idx;
}

// ---------------------------------------------------------------------------
// Permutations

MultiPermutation::MultiPermutation(std::vector<std::vector<int>> perms) : perms_(std::move(perms)) {
  std::vector<int> sizes;
  for (const auto& p : perms_) {
    if (!is_permutation_of(p)) throw ShapeError("component is not a permutation: " + join(p, '[', ']'));
    sizes.push_back(static_cast<int>(p.size()));
  }
  shape_ = Shape(std::move(sizes));
}

MultiPermutation MultiPermutation::identity(const Shape& n) { return MultiPermutation(Injection::identity(n).maps()); }

MultiPermutation MultiPermutation::adjacent(const Shape& n, int i, int j) {
  auto maps = Injection::identity(n).maps();
  auto& c = maps.at(static_cast<std::size_t>(i));
  if (j < 1 || j >= static_cast<int>(c.size())) throw ShapeError("adjacent transposition index out of range");
  std::swap(c[static_cast<std::size_t>(j - 1)], c[static_cast<std::size_t>(j)]);
  return MultiPermutation(std::move(maps));
}

bool MultiPermutation::is_identity() const {
  for (const auto& p : perms_) {
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k] != static_cast<int>(k) + 1) return false;
    }
  }
  return true;
}

Factorization canonical_factorization(const Injection& f) {
  const Shape& n = f.domain();
  const Shape& t = f.codomain();
  std::vector<std::vector<int>> sigma(static_cast<std::size_t>(f.m()));
  std::vector<int> steps(static_cast<std::size_t>(f.m()));
  for (int i = 0; i < f.m(); ++i) {
    const int k = t[i] - n[i];
    steps[static_cast<std::size_t>(i)] = k;
    const auto& fi = f.component(i);
    std::vector<char> hit(static_cast<std::size_t>(t[i]) + 1, 0);
    for (int x : fi) hit[static_cast<std::size_t>(x)] = 1;
    auto& s = sigma[static_cast<std::size_t>(i)];
    s.reserve(static_cast<std::size_t>(t[i]));
    for (int y = 1; y <= t[i]; ++y) {
      if (!hit[static_cast<std::size_t>(y)]) s.push_back(y);
    }
    for (int x : fi) s.push_back(x);
  }
  return {MultiPermutation(std::move(sigma)), Shape(std::move(steps))};
}

std::vector<int> compose_permutations(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) out[k] = a[static_cast<std::size_t>(b[k] - 1)];
  return out;
}

std::vector<int> inverse_permutation(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) inv[static_cast<std::size_t>(p[k] - 1)] = static_cast<int>(k) + 1;
  return inv;
}

std::vector<int> permutation_word(const std::vector<int>& p) {
  // Right-multiplying by s_j swaps positions j, j+1 of the one-line notation;
  // bubble sort p down to the identity and read the swaps backwards.
  std::vector<int> q = p;
  std::vector<int> swaps;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j + 1 < q.size(); ++j) {
      if (q[j] > q[j + 1]) {
        std::swap(q[j], q[j + 1]);
        swaps.push_back(static_cast<int>(j) + 1);
        changed = true;
      }
    }
  }
  std::reverse(swaps.begin(), swaps.end());
  return swaps;
}

// ---------------------------------------------------------------------------
// Partitions

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (parts_[k] <= 0) throw ShapeError("partition parts must be positive");
    if (k && parts_[k] > parts_[k - 1]) throw ShapeError("partition parts must be weakly decreasing");
  }
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition Partition::tail() const {
  if (parts_.empty()) return {};
  return Partition(std::vector<int>(parts_.begin() + 1, parts_.end()));
}

std::string Partition::to_string() const { return join(parts_, '(', ')'); }

Partition Partition::parse(std::string_view text) {
  Cursor c(text);
  auto parts = parse_int_list(c, '(', ')');
  if (!c.at_end()) c.fail("trailing characters");
  try {
    return Partition(std::move(parts));
  } catch (const Error& e) {
    c.fail(e.what());
  }
}

std::string to_string(const MultiPartition& lambda) {
  std::string s;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (i) s += '|';
    s += lambda[i].to_string();
  }
  return s;
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int k) {
  std::vector<Partition> out;
  if (k < 0) return out;
  std::vector<int> cur;
  partitions_rec(k, k, cur, out);
  return out;
}

std::vector<MultiPartition> multipartitions_of(const Shape& n) {
  std::vector<MultiPartition> out{MultiPartition{}};
  for (int i = 0; i < n.m(); ++i) {
    std::vector<MultiPartition> next;
    for (const auto& prefix : out) {
      for (const auto& p : partitions_of(n[i])) {
        auto mp = prefix;
        mp.push_back(p);
        next.push_back(std::move(mp));
      }
    }
    out = std::move(next);
  }
  return out;
}

Partition padded_partition(const Partition& lambda, int t) {
  if (t < lambda.size() + lambda.first()) {
    throw PaddingRangeError("cannot pad " + lambda.to_string() + " to " + std::to_string(t) + ": need t >= " +
                            std::to_string(lambda.size() + lambda.first()));
  }
  std::vector<int> parts;
  parts.push_back(t - lambda.size());
  parts.insert(parts.end(), lambda.parts().begin(), lambda.parts().end());
  return Partition(std::move(parts));
}

MultiPartition padded_multipartition(const MultiPartition& lambda, const Shape& t) {
  if (static_cast<int>(lambda.size()) != t.m()) throw DimensionError("multipartition arity mismatch");
  MultiPartition out;
  for (int i = 0; i < t.m(); ++i) out.push_back(padded_partition(lambda[static_cast<std::size_t>(i)], t[i]));
  return out;
}

std::vector<ConjugacyClass> conjugacy_data(int k) {
  if (k < 1) throw ShapeError("conjugacy_data needs k >= 1");
  std::vector<ConjugacyClass> out;
  const std::int64_t total = factorial(k);
  for (auto& mu : partitions_of(k)) {
    std::int64_t centralizer = 1;
    std::vector<int> mult(static_cast<std::size_t>(k) + 1, 0);
    for (int part : mu.parts()) ++mult[static_cast<std::size_t>(part)];
    for (int j = 1; j <= k; ++j) {
      for (int r = 0; r < mult[static_cast<std::size_t>(j)]; ++r) centralizer *= j;
      centralizer *= factorial(mult[static_cast<std::size_t>(j)]);
    }
    out.push_back({std::move(mu), total / centralizer});
  }
  return out;
}

std::vector<int> class_representative(const Partition& cycle_type) {
  std::vector<int> p(static_cast<std::size_t>(cycle_type.size()));
  int start = 1;
  for (int len : cycle_type.parts()) {
    for (int r = 0; r < len; ++r) {
      int x = start + r;
      int y = start + (r + 1) % len;
      p[static_cast<std::size_t>(x - 1)] = y;
    }
    start += len;
  }
  return p;
}

}  // namespace fimkit
