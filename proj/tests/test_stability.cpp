#include <gtest/gtest.h>

#include <numeric>

#include "fimkit/stability.hpp"
#include "support/examples.hpp"
#include "support/random_presentation.hpp"

using namespace fimkit;
using fimkit::testing::point_module;

namespace {

const Field Q = Field::rationals();

// Standard Young tableaux, by removing the corner holding the largest entry.
long count_tableaux(std::vector<int> parts) {
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  if (parts.empty()) return 1;
  long total = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i + 1 < parts.size() && parts[i + 1] == parts[i]) continue;
    auto smaller = parts;
    --smaller[i];
    total += count_tableaux(smaller);
  }
  return total;
}

Polynomial poly(std::vector<long> c) {
  Polynomial p;
  for (long x : c) p.coeffs.emplace_back(x);
  return p;
}

}  // namespace

TEST(Characters, KnownValues) {
  for (int k = 1; k <= 6; ++k)
    for (const auto& mu : partitions_of(k)) EXPECT_EQ(irreducible_character(Partition({k}), mu), 1);
  EXPECT_EQ(irreducible_character(Partition({2, 1}), Partition({1, 1, 1})), 2);
  EXPECT_EQ(irreducible_character(Partition({2, 1}), Partition({3})), -1);
  EXPECT_EQ(irreducible_character(Partition({2, 1}), Partition({2, 1})), 0);
  EXPECT_EQ(irreducible_character(Partition({2, 2}), Partition({2, 2})), 2);
  EXPECT_EQ(irreducible_character(Partition({2, 2}), Partition({3, 1})), -1);
  EXPECT_EQ(irreducible_character(Partition({3, 1}), Partition({2, 1, 1})), 1);
  EXPECT_EQ(irreducible_character(Partition({1, 1, 1, 1}), Partition({2, 1, 1})), -1);
  EXPECT_THROW(irreducible_character(Partition({2}), Partition({1})), DimensionError);
}

TEST(Characters, DimensionsMatchTableauxCount) {
  for (int k = 1; k <= 7; ++k) {
    for (const auto& lambda : partitions_of(k)) {
      const long tableaux = count_tableaux(lambda.parts());
      EXPECT_EQ(hook_length_dimension(lambda), tableaux) << lambda.to_string();
      EXPECT_EQ(irreducible_character(lambda, Partition(std::vector<int>(static_cast<std::size_t>(k), 1))), tableaux);
    }
  }
}

TEST(Characters, Orthogonality) {
  for (int k = 1; k <= 6; ++k) {
    const auto& t = character_table(k);
    const long order = static_cast<long>(factorial(k));
    for (std::size_t a = 0; a < t.irreducibles.size(); ++a) {
      for (std::size_t b = 0; b < t.irreducibles.size(); ++b) {
        long inner = 0;
        for (std::size_t c = 0; c < t.classes.size(); ++c) inner += static_cast<long>(t.classes[c].size) * t.values[a][c] * t.values[b][c];
        EXPECT_EQ(inner, a == b ? order : 0) << "k=" << k;
      }
    }
    // Column orthogonality: sum over irreducibles of chi(c)^2 = |centralizer|.
    for (std::size_t c = 0; c < t.classes.size(); ++c) {
      long sum = 0;
      for (std::size_t a = 0; a < t.irreducibles.size(); ++a) sum += t.values[a][c] * t.values[a][c];
      EXPECT_EQ(sum, order / static_cast<long>(t.classes[c].size));
    }
  }
}

TEST(Decompose, PermutationCharacter) {
  const auto V = free_module(Q, Shape({1}), Shape({5}));
  for (int n = 2; n <= 5; ++n) {
    const Multiplicities expected{{{Partition({n})}, 1}, {{Partition({n - 1, 1})}, 1}};
    EXPECT_EQ(decompose(V, Shape({n})), expected);
  }
}

TEST(Decompose, TrivialModule) {
  const auto V = free_module(Q, Shape({0, 0}), Shape({3, 3}));
  const Multiplicities expected{{{Partition({2}), Partition({3})}, 1}};
  EXPECT_EQ(decompose(V, Shape({2, 3})), expected);
  const Multiplicities origin{{{Partition{}, Partition{}}, 1}};
  EXPECT_EQ(decompose(V, Shape({0, 0})), origin);
}

TEST(Decompose, MultiplicitiesAccountForDimension) {
  std::vector<TruncatedModule> corpus{free_module(Q, Shape({1, 1}), Shape({3, 3})),
                                      basic_relative_projective(GroupRep::regular(Q, Shape({2, 1})), Shape({3, 2})),
                                      basic_relative_projective(GroupRep::sign(Q, Shape({2})), Shape({5}))};
  std::mt19937 rng(53);
  for (int r = 0; r < 3; ++r) corpus.push_back(from_presentation(fimkit::testing::random_presentation(2, Q, rng), Shape({3, 3})));
  for (const auto& V : corpus) {
    for (const auto& n : V.box().objects()) {
      long total = 0;
      for (const auto& [lambda, c] : decompose(V, n)) total += c * irreducible_dimension(lambda);
      EXPECT_EQ(total, V.dim(n)) << n.to_string();
    }
  }
}

TEST(Decompose, RejectsPositiveCharacteristic) {
  EXPECT_THROW(decompose(free_module(Field::prime(2), Shape({1}), Shape({3})), Shape({2})), UnsupportedError);
}

TEST(Stability, FreeModuleFamilies) {
  const auto r = stability_report(free_module(Q, Shape({1, 0}), Shape({4, 4})));
  EXPECT_EQ(r.verdict, Verdict::True) << r.reason;
  EXPECT_EQ(r.threshold, (std::vector<int>{2, 2}));
  ASSERT_EQ(r.families.size(), 2u);
  EXPECT_EQ(r.families[0].tail, (MultiPartition{Partition{}, Partition{}}));
  EXPECT_EQ(r.families[0].multiplicity, 1);
  EXPECT_EQ(r.families[1].tail, (MultiPartition{Partition({1}), Partition{}}));
  EXPECT_EQ(r.families[1].multiplicity, 1);
  ASSERT_TRUE(r.empirical_onset.has_value());
  EXPECT_LE(*r.empirical_onset, 2);
}

TEST(Stability, RelativeProjectiveAboveTwiceGd) {
  const auto r = stability_report(basic_relative_projective(GroupRep::sign(Q, Shape({2})), Shape({7})));
  EXPECT_EQ(r.gd, 2);
  EXPECT_EQ(r.verdict, Verdict::True) << r.reason;
  EXPECT_FALSE(r.injectivity_failure.has_value());
}

TEST(Stability, TorsionBreaksInjectivityOnlyAtItsSupport) {
  const auto V = point_module(Shape({1, 1}), Shape({5, 5}));
  const auto r = stability_report(V);
  EXPECT_EQ(r.verdict, Verdict::True) << r.reason;
  ASSERT_TRUE(r.empirical_onset.has_value());
  EXPECT_EQ(*r.empirical_onset, 2);
}

TEST(Stability, SmallBoxIsInconclusive) {
  const auto r = stability_report(free_module(Q, Shape({1, 1}), Shape({3, 3})));
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
}

TEST(Polynomials, InterpolationAndPrinting) {
  const std::vector<Scalar> xs{0, 1, 2, 3};
  std::vector<Scalar> ys;
  for (const auto& x : xs) ys.push_back(x * (x - 1) / 2);
  const Polynomial p = Polynomial::interpolate(xs, ys);
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.to_string(), "1/2*x^2 - 1/2*x");
  EXPECT_EQ(p(Scalar(10)), 45);
  EXPECT_EQ(Polynomial::interpolate({1, 2}, {3, 3}).to_string(), "3");
  EXPECT_EQ(Polynomial{}.to_string(), "0");
}

TEST(HilbertFit, ProductOfLines) {
  const auto f = hilbert_fit(free_module(Q, Shape({1, 1}), Shape({5, 5})));
  EXPECT_EQ(f.verdict, Verdict::True) << f.reason;
  EXPECT_EQ(f.start, Shape({2, 2}));
  // Only the product is canonical: x * y, split as 2x * y/2 by the gauge.
  EXPECT_EQ(f.P[0], poly({0, 2}));
  Polynomial half;
  half.coeffs = {0, Scalar(1, 2)};
  EXPECT_EQ(f.P[1], half);
}

TEST(HilbertFit, BasicRelativeProjectiveLeadingData) {
  const GroupRep W = GroupRep::regular(Q, Shape({2, 1}));
  const auto f = hilbert_fit(basic_relative_projective(W, Shape({6, 6})));
  ASSERT_EQ(f.verdict, Verdict::True) << f.reason;
  EXPECT_EQ(f.P[0].degree(), 2);
  EXPECT_EQ(f.P[1].degree(), 1);
  EXPECT_EQ(f.P[0].leading() * f.P[1].leading(), Scalar(W.dim) / 2);
  // A second axis line gives the same factor up to a scalar.
  const auto V = basic_relative_projective(W, Shape({6, 6}));
  std::vector<Scalar> xs, ys;
  for (int x = 3; x <= 6; ++x) {
    xs.emplace_back(x);
    ys.emplace_back(V.dim(Shape({x, 6})));
  }
  const Polynomial other = Polynomial::interpolate(xs, ys);
  const Scalar ratio = other.leading() / f.P[0].leading();
  for (std::size_t c = 0; c < other.coeffs.size(); ++c) EXPECT_EQ(other.coeffs[c], ratio * f.P[0].coeffs[c]);
}

TEST(HilbertFit, ZeroModule) {
  const auto f = hilbert_fit(TruncatedModule::zero(Q, Shape({2, 2})));
  EXPECT_EQ(f.verdict, Verdict::True);
  for (const auto& p : f.P) EXPECT_EQ(p.to_string(), "0");
}

TEST(HilbertFit, SumOfTwoDirectionsDoesNotFactor) {
  const Shape box({5, 5});
  const auto f = hilbert_fit(direct_sum(free_module(Q, Shape({1, 0}), box), free_module(Q, Shape({0, 1}), box)));
  EXPECT_EQ(f.verdict, Verdict::False);
  EXPECT_FALSE(f.residual_zero);
  ASSERT_TRUE(f.first_mismatch.has_value());
}

TEST(HilbertFit, RunsInPositiveCharacteristic) {
  const auto f = hilbert_fit(free_module(Field::prime(3), Shape({1}), Shape({4})));
  EXPECT_EQ(f.verdict, Verdict::True);
  EXPECT_EQ(f.P[0], poly({0, 1}));
}
