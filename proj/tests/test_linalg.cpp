#include <gtest/gtest.h>

#include <random>

#include "fimkit/linalg.hpp"

using namespace fimkit;

namespace {

// Fraction-free Bareiss elimination on an integer matrix; returns the rank.
int bareiss_rank(std::vector<std::vector<mpz_class>> a) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  mpz_class prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

std::vector<std::vector<long>> random_ints(std::mt19937& rng, int rows, int cols, int lo, int hi, double density) {
  std::uniform_int_distribution<int> val(lo, hi);
  std::bernoulli_distribution keep(density);
  std::vector<std::vector<long>> out(static_cast<std::size_t>(rows), std::vector<long>(static_cast<std::size_t>(cols), 0));
  for (auto& row : out)
    for (auto& x : row) x = keep(rng) ? val(rng) : 0;
  return out;
}

}  // namespace

TEST(Field, PrimeArithmetic) {
  Field f = Field::parse("Fp:7");
  EXPECT_EQ(f.name(), "Fp:7");
  EXPECT_EQ(f.inv(3), 5);
  EXPECT_EQ(f.from_int(-1), 6);
  EXPECT_EQ(f.parse_scalar("1/2"), 4);
  EXPECT_THROW(Field::prime(9), Error);
  EXPECT_THROW(f.parse_scalar("1/7"), Error);
  EXPECT_EQ(Field::parse("Q").parse_scalar("-3/6"), mpq_class(-1, 2));
}

TEST(Rank, MatchesBareissOracle) {
  std::mt19937 rng(5);
  const Field Q = Field::rationals();
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + trial % 7, cols = 1 + (trial * 3) % 8;
    auto ints = random_ints(rng, rows, cols, -3, 3, 0.5);
    if (trial % 4 == 0 && rows > 1) ints[static_cast<std::size_t>(rows - 1)] = ints[0];
    std::vector<std::vector<mpz_class>> z;
    for (const auto& row : ints) {
      z.emplace_back();
      for (long x : row) z.back().emplace_back(x);
    }
    EXPECT_EQ(rank(Matrix::from_ints(Q, ints)), bareiss_rank(z));
  }
}

TEST(Kernel, AnnihilatesAndHasComplementaryDimension) {
  std::mt19937 rng(9);
  for (const Field& F : {Field::rationals(), Field::prime(3)}) {
    for (int trial = 0; trial < 30; ++trial) {
      Matrix a = Matrix::from_ints(F, random_ints(rng, 4, 6, -2, 2, 0.6));
      Matrix k = kernel_basis(a);
      EXPECT_EQ(k.rows(), 6);
      EXPECT_EQ(k.cols() + rank(a), 6);
      EXPECT_TRUE((a * k).is_zero());
      EXPECT_EQ(rank(k), k.cols());
    }
  }
}

TEST(Solve, FindsSolutionsAndDetectsInconsistency) {
  const Field Q = Field::rationals();
  Matrix a = Matrix::from_ints(Q, {{1, 2}, {2, 4}});
  auto x = solve(a, {{0, 1}, {1, 2}});
  ASSERT_TRUE(x.has_value());
  EXPECT_TRUE(equal(a.apply(*x), SparseVec{{0, 1}, {1, 2}}));
  EXPECT_FALSE(solve(a, {{0, 1}}).has_value());
}

TEST(Echelon, QuotientCoordinatesKillTheSubspace) {
  const Field Q = Field::rationals();
  Echelon E(Q, 4);
  EXPECT_TRUE(E.insert({{1, 1}, {2, 1}}));
  EXPECT_FALSE(E.insert({{1, 2}, {2, 2}}));
  EXPECT_EQ(E.non_pivots(), (std::vector<int>{0, 2, 3}));
  EXPECT_TRUE(E.quotient_coordinates({{1, 1}, {2, 1}}).empty());
  EXPECT_TRUE(equal(E.quotient_coordinates({{1, 1}}), SparseVec{{1, -1}}));
  EXPECT_TRUE(equal(E.coordinates({{1, 3}, {2, 3}}), SparseVec{{0, 3}}));
}

TEST(QuotientStructure, ProjectionLiftIdentity) {
  const Field F = Field::prime(5);
  Matrix gens = Matrix::from_ints(F, {{1, 0}, {1, 1}, {0, 2}, {0, 0}});
  auto q = quotient_structure(gens, 4);
  EXPECT_EQ(q.dim, 2);
  EXPECT_TRUE((q.projection * gens).is_zero());
  EXPECT_TRUE((q.projection * q.lift).is_identity());
}

TEST(Matrix, ProductAssociatesAndTransposes) {
  std::mt19937 rng(1);
  const Field Q = Field::rationals();
  Matrix a = Matrix::from_ints(Q, random_ints(rng, 3, 4, -3, 3, 0.7));
  Matrix b = Matrix::from_ints(Q, random_ints(rng, 4, 2, -3, 3, 0.7));
  Matrix c = Matrix::from_ints(Q, random_ints(rng, 2, 5, -3, 3, 0.7));
  EXPECT_EQ((a * b) * c, a * (b * c));
  EXPECT_EQ((a * b).transpose(), b.transpose() * a.transpose());
}
