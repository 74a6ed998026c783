#include <gtest/gtest.h>

#include "fimkit/functors.hpp"
#include "support/examples.hpp"
#include "support/random_presentation.hpp"

using namespace fimkit;
using fimkit::testing::torsion_example;

namespace {

const Field Q = Field::rationals();

void expect_identical(const TruncatedModule& a, const TruncatedModule& b) {
  ASSERT_EQ(a.box(), b.box());
  for (int k = 0; k < a.box().size(); ++k) {
    EXPECT_EQ(a.object_data(k).dim, b.object_data(k).dim);
    EXPECT_EQ(a.object_data(k).trans, b.object_data(k).trans);
    EXPECT_EQ(a.object_data(k).incl, b.object_data(k).incl);
  }
}

}  // namespace

TEST(Shift, FreeModuleDecomposition) {
  auto V = free_module(Q, Shape({1, 1}), Shape({4, 4}));
  auto S = shift(V, 0);
  EXPECT_EQ(S.output.box().bound(), Shape({3, 4}));
  EXPECT_EQ(S.box_loss, Shape({1, 0}));
  auto A = free_module(Q, Shape({1, 1}), Shape({3, 4}));
  auto B = free_module(Q, Shape({0, 1}), Shape({3, 4}));
  EXPECT_EQ(S.output.dim(Shape({1, 1})), 2);
  for (const auto& n : S.output.box().objects()) EXPECT_EQ(S.output.dim(n), A.dim(n) + B.dim(n));
  EXPECT_TRUE(check_module_axioms(S.output).ok());
}

TEST(Shift, ZeroAndExhaustedBox) {
  EXPECT_TRUE(shift(TruncatedModule::zero(Q, Shape({2, 2})), 1).output.is_zero());
  EXPECT_THROW(shift(free_module(Q, Shape({0, 0}), Shape({2, 0})), 1), BoxError);
}

TEST(Shift, DirectionsCommuteExactly) {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 6; ++trial) {
    auto V = from_presentation(fimkit::testing::random_presentation(2, Q, rng), Shape({4, 4}));
    expect_identical(shift(shift(V, 0).output, 1).output, shift(shift(V, 1).output, 0).output);
    expect_identical(shift(shift(V, 0).output, 1).output, shift_by(V, Shape({1, 1})).output);
  }
}

TEST(Shift, NaturalMapIsModuleMap) {
  auto V = basic_relative_projective(GroupRep::sign(Q, Shape({2, 1})), Shape({4, 3}));
  for (int i = 0; i < 2; ++i) {
    auto S = shift(V, i);
    const auto& box = S.output.box();
    for (const auto& n : box.objects()) {
      for (int d = 0; d < 2; ++d) {
        if (box.contains(n.plus(d))) EXPECT_EQ(S.output.inclusion(n, d) * S.natural.at(n), S.natural.at(n.plus(d)) * V.inclusion(n, d));
        for (int j = 1; j < n[d]; ++j) EXPECT_EQ(S.output.transposition(n, d, j) * S.natural.at(n), S.natural.at(n) * V.transposition(n, d, j));
      }
    }
  }
}

TEST(DerivativeKernel, FreeModule) {
  auto V = free_module(Q, Shape({1, 1}), Shape({4, 4}));
  auto dk = derivative_and_kernel(V, 0);
  EXPECT_TRUE(dk.exact);
  EXPECT_TRUE(dk.kernel.is_zero());
  auto B = free_module(Q, Shape({0, 1}), Shape({3, 4}));
  EXPECT_EQ(dk.derivative.dims(), B.dims());
  EXPECT_TRUE(check_module_axioms(dk.derivative).ok());
}

TEST(DerivativeKernel, TorsionExample) {
  auto V = torsion_example(Shape({4, 4}));
  EXPECT_TRUE(shift(V, 1).output.is_zero());
  auto S1 = shift(V, 0);
  EXPECT_EQ(S1.output.dims(), V.restricted(Shape({3, 4})).dims());
  for (const auto& M : S1.natural.components) EXPECT_EQ(rank(M), M.cols());
  auto dk2 = derivative_and_kernel(V, 1);
  EXPECT_EQ(dk2.kernel.dims(), V.restricted(Shape({4, 3})).dims());
}

TEST(DerivativeKernel, ShiftCommutesWithDerivative) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 4; ++trial) {
    auto V = from_presentation(fimkit::testing::random_presentation(2, Q, rng), Shape({4, 4}));
    // Different directions: identical modules.
    auto a = shift(derivative_and_kernel(V, 1).derivative, 0).output;
    auto b = derivative_and_kernel(shift(V, 0).output, 1).derivative;
    expect_identical(a, b);
    // Same direction: isomorphic through the swap s_{i,1}.
    auto c = shift(derivative_and_kernel(V, 0).derivative, 0).output;
    auto d = derivative_and_kernel(shift(V, 0).output, 0).derivative;
    EXPECT_EQ(c.dims(), d.dims());
    const Box inner(Shape({2, 4}));
    for (const auto& n : inner.objects()) {
      const Shape top = n.plus(0, 2);
      const Matrix x = V.inclusion(n.plus(0), 0);
      const Matrix y = evaluate(V, self_embed(0, Injection::pi(n, 0)));
      EXPECT_EQ(V.transposition(top, 0, 1) * x, y);
    }
  }
}

TEST(TotalFunctors, FourTermIdentity) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 8; ++trial) {
    const int m = 1 + trial % 2;
    auto V = from_presentation(fimkit::testing::random_presentation(m, Q, rng), m == 1 ? Shape({4}) : Shape({4, 4}));
    auto t = total_functors(V);
    EXPECT_TRUE(t.exact);
  }
}

TEST(TotalFunctors, GeneratingDegreeDropsByOne) {
  std::mt19937 rng(8);
  int checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    auto V = from_presentation(fimkit::testing::random_presentation(2, Q, rng), Shape({5, 5}));
    auto gens = generator_profile(V);
    if (gens.is_zero()) continue;
    bool interior = true;
    for (const auto& n : gens.support()) interior = interior && n[0] < 4 && n[1] < 4;
    if (!interior) continue;
    auto dV = total_functors(V).derivative;
    const int gd = gens.top_degree();
    if (gd == 0) {
      EXPECT_TRUE(generator_profile(dV).is_zero());
    } else {
      EXPECT_EQ(generator_profile(dV).top_degree(), gd - 1);
    }
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST(TotalFunctors, TorsionFreePreservedByShift) {
  auto V = basic_relative_projective(GroupRep::trivial(Q, Shape({1, 1})), Shape({4, 4}));
  ASSERT_TRUE(is_torsion_free(V));
  EXPECT_TRUE(is_torsion_free(total_functors(V).shift));
}

TEST(Truncation, FreeModuleAtOrigin) {
  auto F = free_module(Q, Shape({0, 0}), Shape({3, 3}));
  auto ti = truncation_and_ideal(F, 1);
  expect_identical(ti.truncation, torsion_example(Shape({3, 3})));
  for (const auto& n : F.box().objects()) EXPECT_EQ(ti.truncation.dim(n) + ti.ideal.dim(n), F.dim(n));
  EXPECT_TRUE(shift(ti.truncation, 1).output.is_zero());
  auto G = free_module(Q, Shape({1, 0}), Shape({3, 3}));
  EXPECT_EQ(truncation_and_ideal(G, 0).ideal.dims(), G.dims());
}

TEST(Filtration, FreeStabilizesImmediately) {
  auto f = iterated_image_filtration(free_module(Q, Shape({1, 0}), Shape({4, 2})));
  ASSERT_TRUE(f.stabilization.has_value());
  EXPECT_EQ(*f.stabilization, 0);
}

TEST(Filtration, TorsionExampleDirectionTwo) {
  auto f = iterated_image_filtration(torsion_example(Shape({3, 3})), 1);
  ASSERT_GE(f.steps.size(), 2u);
  EXPECT_TRUE(f.steps[1].is_zero());
}

TEST(Filtration, RelationInDegreeTwo) {
  Presentation p;
  p.m = 1;
  p.generators.push_back({Shape({0}), "v"});
  p.relations.push_back({Shape({2}), {{0, Injection::standard(Shape({0}), Shape({2})), 1}}});
  auto V = from_presentation(p, Shape({6}));
  EXPECT_EQ(V.dims().dims, (std::vector<int>{1, 1, 0, 0, 0, 0, 0}));
  auto f = iterated_image_filtration(V);
  ASSERT_GE(f.steps.size(), 3u);
  EXPECT_EQ(f.steps[1].dims().dims, (std::vector<int>{1, 0, 0, 0, 0, 0}));
  EXPECT_TRUE(f.steps[2].is_zero());
  ASSERT_TRUE(f.stabilization.has_value());
  EXPECT_EQ(*f.stabilization, 2);
}
