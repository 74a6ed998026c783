// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic throughout.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "fimkit/functors.hpp"
#include "fimkit/homology.hpp"
#include "fimkit/io.hpp"
#include "fimkit/stability.hpp"
#include "support/examples.hpp"
#include "support/random_presentation.hpp"
#include "support/tor_oracle.hpp"

namespace fs = std::filesystem;
using namespace fimkit;

namespace {

const Field Q = Field::rationals();
constexpr unsigned kFuzzSeed = 2024;
constexpr int kFuzzPerM = 50;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (examples_.size() < 8) examples_.push_back(what);
    }
  }
  int checks() const { return checks_; }
  int failures() const { return failures_; }
  Outcome outcome(const std::string& label) const {
    std::ostringstream os;
    os << label << ": " << (checks_ - failures_) << "/" << checks_;
    for (const auto& e : examples_) os << "; " << e;
    return {failures_ == 0 && checks_ > 0, os.str()};
  }

private:
  int checks_ = 0;
  int failures_ = 0;
  std::vector<std::string> examples_;
};

Outcome combine(std::vector<Outcome> parts) {
  Outcome out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    out.pass = out.pass && parts[k].pass;
    out.detail += (k ? " | " : "") + parts[k].detail;
  }
  return out;
}

// Closed-form |C(n, t)|.
long injection_total(const Shape& n, const Shape& t) {
  long c = 1;
  for (int i = 0; i < n.m(); ++i) {
    if (n[i] > t[i]) return 0;
    for (int x = t[i] - n[i] + 1; x <= t[i]; ++x) c *= x;
  }
  return c;
}

std::vector<Shape> shapes_up_to(int m, int k) { return Box(Shape(std::vector<int>(static_cast<std::size_t>(m), k))).objects(); }

Shape uniform(int m, int k) { return Shape(std::vector<int>(static_cast<std::size_t>(m), k)); }

struct Fixture {
  std::string name;
  PresentationFile file;
};

std::vector<Fixture> fixtures() {
  std::vector<Fixture> out;
  for (const auto& entry : fs::directory_iterator(FIMKIT_FIXTURES)) {
    if (entry.path().extension() != ".fim") continue;
    out.push_back({entry.path().stem().string(), read_presentation(entry.path().string())});
  }
  std::sort(out.begin(), out.end(), [](const Fixture& a, const Fixture& b) { return a.name < b.name; });
  return out;
}

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

struct FuzzModule {
  std::string name;
  TruncatedModule module;
};

std::vector<FuzzModule> fuzz_corpus() {
  std::mt19937 rng(kFuzzSeed);
  std::vector<FuzzModule> out;
  for (int m = 1; m <= 2; ++m) {
    for (int k = 0; k < kFuzzPerM; ++k) {
      const Presentation p = fimkit::testing::random_presentation(m, Q, rng);
      out.push_back({"fuzz m=" + std::to_string(m) + " #" + std::to_string(k), from_presentation(p, uniform(m, 4))});
    }
  }
  return out;
}

const std::vector<FuzzModule>& corpus() {
  static const std::vector<FuzzModule> c = fuzz_corpus();
  return c;
}

// ---------------------------------------------------------------------------

Outcome shift_decomposition() {
  Tally tally;
  const std::map<int, Shape> boxes{{1, Shape({5})}, {2, Shape({5, 5})}, {3, Shape({5, 5, 5})}};
  for (const auto& [m, box] : boxes) {
    for (const Shape& n : shapes_up_to(m, 2)) {
      const TruncatedModule M = free_module(Q, n, box);
      for (int i = 0; i < m; ++i) {
        const FunctorResult S = shift(M, i);
        const Shape lower = n.minus_floor(Shape::unit(m, i));
        for (const Shape& t : S.output.box().objects()) {
          const long expected = injection_total(n, t) + (n[i] > 0 ? n[i] * injection_total(lower, t) : 0);
          tally.check(S.output.dim(t) == expected, "Sigma_" + std::to_string(i + 1) + " M" + n.to_string() + " at " + t.to_string());
        }
      }
    }
  }
  return tally.outcome("objects");
}

Outcome four_term_exactness() {
  Tally tally;
  for (const auto& [name, V] : corpus()) {
    const TotalFunctors tf = total_functors(V);
    bool ok = true;
    for (const Shape& t : tf.box.objects())
      ok = ok && tf.kernel.dim(t) + tf.shift.dim(t) == V.m() * V.dim(t) + tf.derivative.dim(t);
    tally.check(ok, name);
  }
  return tally.outcome("presentations");
}

std::vector<GroupRep> small_representations(const Shape& n) {
  std::vector<GroupRep> out{GroupRep::trivial(Q, n)};
  bool has_sign = false;
  for (int i = 0; i < n.m(); ++i) has_sign = has_sign || n[i] >= 2;
  if (has_sign) out.push_back(GroupRep::sign(Q, n));
  if (injection_total(n, n) == 2) out.push_back(GroupRep::regular(Q, n));
  return out;
}

Outcome relative_projectivity() {
  Tally basic, torsion, h2;
  for (const auto& [name, file] : fixtures()) {
    if (starts_with(name, "corrupted")) continue;
    const TruncatedModule V = build_module(file);
    const bool is_basic = starts_with(name, "free_") || starts_with(name, "sign_") || starts_with(name, "trivial_") ||
                          starts_with(name, "fi_free_") || starts_with(name, "fi_sign_") || starts_with(name, "fi_trivial_");
    const RelativeProjectivity rp = relative_projective_test(V);
    if (is_basic) basic.check(rp.verdict == Verdict::True, name + " " + to_string(rp.verdict));
    if (torsion_analysis(V).td_max >= 0) {
      bool located = rp.verdict == Verdict::False && rp.witness.has_value();
      if (located) {
        const HomologyResult h = homology(V, 1);
        located = h.H[1].at(*rp.witness) != 0;
        for (const Shape& t : h.box.objects())
          if (t.lt(*rp.witness) && h.H[1].at(t) != 0) located = false;
      }
      torsion.check(located, name);
    }
  }
  for (const Shape& n : shapes_up_to(2, 2)) {
    for (const GroupRep& W : small_representations(n)) {
      const RelativeProjectivity rp = relative_projective_test(basic_relative_projective(W, Shape({5, 5})));
      basic.check(rp.verdict == Verdict::True, "M" + n.to_string() + " (x) W");
    }
  }
  for (const auto& [name, V] : corpus()) {
    const HomologyResult h = homology(V, 2);
    if (h.H[1].is_zero()) h2.check(h.H[2].is_zero(), name);
  }
  return combine({basic.outcome("basic relative projective"), torsion.outcome("torsion located"), h2.outcome("H_1 = 0 => H_2 = 0")});
}

Outcome torsion_example() {
  Tally tally;
  const TruncatedModule V = build_module(read_presentation(std::string(FIMKIT_FIXTURES) + "/torsion_example.fim"));
  for (const Shape& t : V.box().objects()) tally.check(V.dim(t) == (t[1] == 0 ? 1 : 0), "dim V at " + t.to_string());
  const std::vector<int> td = torsion_degrees(V);
  tally.check(td == std::vector<int>{-1, 0}, "td");
  const TruncatedModule S2 = shift(V, 1).output;
  tally.check(S2.dims().total() == 0, "Sigma_2 V = 0");
  const FunctorResult S1 = shift(V, 0);
  bool iso = true;
  for (const Shape& t : S1.output.box().objects())
    iso = iso && S1.output.dim(t) == V.dim(t) && rank(S1.natural.at(t)) == V.dim(t);
  tally.check(iso, "V -> Sigma_1 V is an isomorphism");
  tally.check(shift_by(V, Shape({1, 1})).output.dims().total() == 0, "Sigma_1 Sigma_2 V = 0");
  return tally.outcome("checks");
}

Outcome nagpal_complexes() {
  Tally bounds, sufficient, sharp;
  int count = 0;
  for (const auto& [name, file] : fixtures()) {
    if (starts_with(name, "fi_") || starts_with(name, "corrupted")) continue;
    ++count;
    const TruncatedModule V = build_module(file);
    const int gd = generator_profile(V).top_degree();
    const NagpalComplex cx = nagpal_complex(V);
    bool ok = cx.complete && static_cast<int>(cx.F.size()) - 1 <= gd;
    for (std::size_t j = 0; j < cx.F.size(); ++j) ok = ok && generator_profile(cx.F[j]).top_degree() <= gd - static_cast<int>(j);
    bounds.check(ok, name);

    std::vector<int> threshold;
    for (int N : cx.N) threshold.push_back(std::max(N + 1, 0));
    const Verdict at = relative_projective_test(shift_by(V, Shape(threshold)).output).verdict;
    sufficient.check(at == Verdict::True, name + " at " + Shape(threshold).to_string() + " " + to_string(at));
    for (int i = 0; i < V.m(); ++i) {
      if (cx.N[static_cast<std::size_t>(i)] < 0) continue;
      std::vector<int> below = threshold;
      below[static_cast<std::size_t>(i)] = cx.N[static_cast<std::size_t>(i)];
      const Verdict v = relative_projective_test(shift_by(V, Shape(below)).output).verdict;
      sharp.check(v == Verdict::False, name + " at " + Shape(below).to_string() + " " + to_string(v));
    }
  }
  Outcome out = combine({bounds.outcome("gd/length bounds"), sufficient.outcome("N+1 relative projective"), sharp.outcome("N_i not relative projective")});
  if (count != 20) out = {false, std::to_string(count) + " fixtures instead of 20 | " + out.detail};
  return out;
}

Outcome torsion_shift_bound() {
  Tally tally;
  for (const auto& [name, V] : corpus()) {
    const TorsionReport t = torsion_analysis(V);
    for (int i = 0; i < V.m(); ++i) {
      for (int extra = 1; extra <= 2; ++extra) {
        const int n = std::max(t.td[static_cast<std::size_t>(i)] + extra, 0);
        if (n + 1 > V.box().bound()[i]) continue;
        const TruncatedModule W = shift_by(V, Shape::unit(V.m(), i).scaled(n)).output;
        tally.check(derivative_and_kernel(W, i).kernel.dims().total() == 0, name + " K_" + std::to_string(i + 1) + " after " + std::to_string(n));
      }
    }
  }
  return tally.outcome("shifted kernels");
}

// Every character of S_n, trivial plus the last character, and the regular representation when it has dimension 2.
std::vector<GroupRep> representations_up_to_dim_two(const Shape& n) {
  std::vector<int> movable;
  for (int i = 0; i < n.m(); ++i)
    if (n[i] >= 2) movable.push_back(i);
  std::vector<std::vector<int>> characters;  // sign choice per component
  for (int mask = 0; mask < (1 << movable.size()); ++mask) {
    std::vector<int> eps(static_cast<std::size_t>(n.m()), 1);
    for (std::size_t b = 0; b < movable.size(); ++b)
      if (mask & (1 << b)) eps[static_cast<std::size_t>(movable[b])] = -1;
    characters.push_back(eps);
  }
  auto rep = [&](const std::vector<std::vector<int>>& summands) {
    GroupRep W;
    W.field = Q;
    W.shape = n;
    W.dim = static_cast<int>(summands.size());
    W.gens.resize(static_cast<std::size_t>(n.m()));
    for (int i = 0; i < n.m(); ++i) {
      for (int j = 1; j < n[i]; ++j) {
        std::vector<std::vector<long>> diag(summands.size(), std::vector<long>(summands.size(), 0));
        for (std::size_t s = 0; s < summands.size(); ++s) diag[s][s] = summands[s][static_cast<std::size_t>(i)];
        W.gens[static_cast<std::size_t>(i)].push_back(Matrix::from_ints(Q, diag));
      }
    }
    W.validate();
    return W;
  };
  std::vector<GroupRep> out;
  for (const auto& chi : characters) out.push_back(rep({chi}));
  out.push_back(rep({characters.front(), characters.back()}));
  if (injection_total(n, n) == 2) out.push_back(GroupRep::regular(Q, n));
  return out;
}

Scalar falling(const Scalar& x, int k) {
  Scalar out = 1;
  for (int j = 0; j < k; ++j) out *= x - j;
  return out;
}

Outcome hilbert_products() {
  Tally tally;
  for (const Shape& n : shapes_up_to(2, 2)) {
    const int gd = n.degree();
    const Shape box = uniform(2, std::max(2 * gd, 1));
    for (const GroupRep& W : representations_up_to_dim_two(n)) {
      const std::string label = "M" + n.to_string() + " (x) W, dim W = " + std::to_string(W.dim);
      const TruncatedModule V = basic_relative_projective(W, box);
      const HilbertFit f = hilbert_fit(V);
      bool ok = f.verdict == Verdict::True && f.residual_zero && f.degrees_ok;
      Scalar lead = 1, factorial = 1;
      for (int i = 0; i < 2 && ok; ++i) {
        const Polynomial& P = f.P[static_cast<std::size_t>(i)];
        ok = P.degree() <= gd && P.degree() == n[i];
        lead *= P.leading();
        for (int x = 1; x <= n[i]; ++x) factorial *= x;
        for (int x = 0; x <= 12 && ok; ++x) ok = P(Scalar(x)) == P.leading() * falling(Scalar(x), n[i]);
      }
      ok = ok && lead == Scalar(W.dim) / factorial;
      for (const Shape& t : V.box().objects()) {
        if (!ok || !f.start.leq(t)) continue;
        ok = f.P[0](Scalar(t[0])) * f.P[1](Scalar(t[1])) == Scalar(W.dim * injection_total(n, t)) / factorial && V.dim(t) == W.dim * injection_total(n, t) / factorial;
      }
      tally.check(ok, label + " " + f.reason);
    }
  }
  return tally.outcome("modules");
}

using Tails = std::map<std::vector<std::vector<int>>, int>;

Tails tails_at(const TruncatedModule& V, const Shape& n) {
  Tails out;
  for (const auto& [lambda, c] : decompose(V, n)) {
    std::vector<std::vector<int>> tail;
    for (const Partition& part : lambda) tail.emplace_back(part.parts().begin() + std::min<std::ptrdiff_t>(1, part.length()), part.parts().end());
    out[tail] += c;
  }
  return out;
}

Outcome representation_stability() {
  Tally tally;
  const GroupRep sign2 = GroupRep::sign(Q, Shape({2}));
  const std::vector<std::pair<std::string, TruncatedModule>> modules{
      {"M(1,0)", free_module(Q, Shape({1, 0}), Shape({7, 7}))},
      {"M(1,1)", free_module(Q, Shape({1, 1}), Shape({7, 7}))},
      {"M(2) (x) sign", basic_relative_projective(sign2, Shape({7}))}};
  for (const auto& [name, V] : modules) {
    const StabilityReport s = stability_report(V);
    tally.check(s.verdict == Verdict::True, name + " verdict " + to_string(s.verdict) + " " + s.reason);
    const int gd = generator_profile(V).top_degree();
    const Shape start = uniform(V.m(), 2 * gd);
    const GradedDims h0 = generator_profile(V);
    std::optional<Tails> reference;
    for (const Shape& n : V.box().objects()) {
      if (!start.leq(n)) continue;
      const Tails t = tails_at(V, n);
      if (!reference) reference = t;
      tally.check(t == *reference, name + " multiplicities at " + n.to_string());
      tally.check(h0.at(n) == 0, name + " generation at " + n.to_string());
      for (int i = 0; i < V.m(); ++i) {
        const Shape up = n.plus(i);
        if (!V.box().contains(up)) continue;
        tally.check(rank(evaluate(V, Injection::standard(n, up))) == V.dim(n), name + " injectivity at " + n.to_string());
      }
    }
  }
  return tally.outcome("checks");
}

Outcome homology_oracle() {
  Tally tally;
  int count = 0;
  for (const auto& [name, file] : fixtures()) {
    if (!starts_with(name, "fi_")) continue;
    ++count;
    const TruncatedModule V = build_module(file, Shape({4}));
    const HomologyResult h = homology(V, 3);
    for (const Shape& n : h.box.objects()) {
      const std::vector<int> tor = fimkit::testing::brute_force_tor(V, n, 3);
      for (int s = 0; s <= 3; ++s)
        tally.check(tor[static_cast<std::size_t>(s)] == h.H[static_cast<std::size_t>(s)].at(n), name + " H_" + std::to_string(s) + " at " + n.to_string());
    }
  }
  Outcome out = tally.outcome("fixtures " + std::to_string(count) + ", values");
  out.pass = out.pass && count >= 10;
  return out;
}

Outcome noetherian_desk_check() {
  Tally tally;
  std::mt19937 rng(kFuzzSeed + 1);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const Shape big({6, 6}), small({5, 5});
  for (const Field& F : {Q, Field::prime(2)}) {
    const TruncatedModule V = free_module(F, Shape({1, 1}), big);
    const TruncatedModule Vs = V.restricted(small);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Seed> seeds;
      const int k = uni(1, 3);
      for (int s = 0; s < k; ++s) {
        const Shape n({uni(1, 4), uni(1, 4)});
        const int d = V.dim(n);
        const int a = uni(0, d - 1), b = uni(0, d - 1);
        auto coefficient = [&] {
          Scalar c = F.from_int(uni(1, 3));
          return Field::is_zero(c) ? F.from_int(1) : c;
        };
        SparseVec v = unit_vector(a, coefficient());
        if (b != a) v = axpy(F, v, F.neg(coefficient()), unit_vector(b));
        seeds.push_back({n, v});
      }
      const SubmoduleResult U = submodule_generated(V, seeds);
      const SubmoduleResult Us = submodule_generated(Vs, seeds);
      const GradedDims h0 = generator_profile(U.module);
      bool ok = true;
      for (const Shape& n : h0.support()) ok = ok && n[0] < big[0] && n[1] < big[1];
      ok = ok && generator_profile(Us.module).dims == h0.restricted(small).dims;
      ok = ok && Us.module.dims().dims == U.module.dims().restricted(small).dims;
      tally.check(ok, F.name() + " trial " + std::to_string(trial));
    }
  }
  return tally.outcome("submodules");
}

std::string run_cli(const std::string& args, int& status) {
  const std::string command = std::string(FIMKIT_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return "";
  }
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  status = pclose(pipe);
  return out;
}

Outcome determinism() {
  Tally tally;
  for (const auto& entry : fs::directory_iterator(FIMKIT_FIXTURES)) {
    const std::string args = "analyze --input " + entry.path().string();
    int s1 = 0, s2 = 0;
    const std::string a = run_cli(args, s1);
    const std::string b = run_cli(args, s2);
    tally.check(!a.empty() && a == b && s1 == s2, entry.path().filename().string());
  }
  return tally.outcome("fixtures");
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int a = 1; a < argc; ++a) only.push_back(std::atoi(argv[a]));
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"shift decomposition", shift_decomposition},
      {"four-term exactness", four_term_exactness},
      {"relative projectivity iff H_1 = 0", relative_projectivity},
      {"torsion example", torsion_example},
      {"Nagpal complex", nagpal_complexes},
      {"torsion shift bound", torsion_shift_bound},
      {"Hilbert product fit", hilbert_products},
      {"representation stability", representation_stability},
      {"homology oracle equivalence", homology_oracle},
      {"Noetherian desk check", noetherian_desk_check},
      {"determinism", determinism},
  };
  int failed = 0;
  int ran = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (!only.empty() && std::find(only.begin(), only.end(), static_cast<int>(k + 1)) == only.end()) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("criterion %2zu %s  %-36s %s (%.1fs)\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(), o.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
