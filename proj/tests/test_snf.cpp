#include "support.hpp"

#include <gtest/gtest.h>

using namespace dgk;
using namespace dgk::testing;

namespace {

BigMatrix big(const std::vector<std::vector<long long>>& a) { return to_big(to_matrix(a)); }

bool is_diagonal_chain(const BigMatrix& d) {
  BigInt prev = 1;
  bool zero_seen = false;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (i != j && d(i, j) != 0) return false;
      if (i == j) {
        if (d(i, i) < 0) return false;
        if (d(i, i) == 0) zero_seen = true;
        else if (zero_seen || d(i, i) % prev != 0) return false;
        else prev = d(i, i);
      }
    }
  return true;
}

}  // namespace

TEST(Snf, KnownDiagonal) {
  auto r = smith_normal_form(to_matrix({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  EXPECT_EQ(invariant_factors(r.D), (std::vector<BigInt>{2, 6, 12}));
}

TEST(Snf, ZeroAndEmptyRows) {
  auto r = smith_normal_form(to_matrix({{0, 0}, {0, 0}}));
  EXPECT_TRUE(invariant_factors(r.D).empty());
  auto g = group_from_factors(2, invariant_factors(r.D));
  EXPECT_EQ(g.free_rank, 2);
}

TEST(Snf, RectangularWide) {
  auto r = smith_normal_form(to_matrix({{2, 0, 0, 0}}));
  EXPECT_EQ(invariant_factors(r.D), (std::vector<BigInt>{2}));
  EXPECT_EQ(group_from_factors(4, invariant_factors(r.D)).to_string(), "Z^3 + Z/2");
}

TEST(Snf, TransformsReproduceD) {
  auto a = big({{3, 5, 7}, {11, 13, 17}, {19, 23, 29}, {1, 0, 2}});
  auto r = smith_normal_form(a);
  EXPECT_EQ(multiply(multiply(r.U, a), r.V), r.D);
  EXPECT_TRUE(is_diagonal_chain(r.D));
  EXPECT_EQ(abs(determinant(r.U)), 1);
  EXPECT_EQ(abs(determinant(r.V)), 1);
}

TEST(Snf, OverflowPromotesToBigInt) {
  const std::int64_t big_entry = std::int64_t(1) << 62;
  IntMatrix m(2, 2);
  m(0, 0) = big_entry;
  m(0, 1) = big_entry - 1;
  m(1, 0) = big_entry - 3;
  m(1, 1) = big_entry - 7;
  bool promoted = false;
  auto r = smith_normal_form(m, &promoted);
  BigMatrix b = to_big(m);
  EXPECT_EQ(multiply(multiply(r.U, b), r.V), r.D);
  EXPECT_TRUE(is_diagonal_chain(r.D));
  BigInt prod = 1;
  for (const auto& d : invariant_factors(r.D)) prod *= d;
  EXPECT_EQ(prod, abs(determinant(b)));
  (void)promoted;
}

TEST(Snf, ForcedPromotionPath) {
  IntMatrix m(2, 2);
  m(0, 0) = INT64_MAX;
  m(0, 1) = INT64_MAX - 1;
  m(1, 0) = 3;
  m(1, 1) = 5;
  bool promoted = false;
  auto r = smith_normal_form(m, &promoted);
  BigMatrix b = to_big(m);
  EXPECT_EQ(multiply(multiply(r.U, b), r.V), r.D);
  BigInt prod = 1;
  for (const auto& d : invariant_factors(r.D)) prod *= d;
  EXPECT_EQ(prod, abs(determinant(b)));
}

TEST(Snf, DeterminantMatchesCofactorExpansion) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    int n = 1 + k % 6;
    auto a = random_matrix(rng, n, n, -9, 9);
    EXPECT_EQ(determinant(big(a)), BigInt(det_small(a)));
  }
}

// Cross-check against gcds of minors on a random sample; the full suite runs in the
// acceptance binary.
TEST(Snf, AgreesWithDeterminantalDivisors) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 300; ++k) {
    int m = 1 + k % 5, n = 1 + (k / 5) % 5;
    auto a = random_matrix(rng, m, n, -12, 12);
    auto r = smith_normal_form(to_matrix(a));
    std::vector<BigInt> got = invariant_factors(r.D);
    std::vector<BigInt> want;
    for (long long x : invariant_factors_by_minors(a)) want.push_back(x);
    EXPECT_EQ(got, want);
  }
}

TEST(Snf, UnimodularInvariance) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 200; ++k) {
    int m = 2 + k % 4, n = 2 + (k / 4) % 4;
    auto a = big(random_matrix(rng, m, n, -20, 20));
    auto d0 = invariant_factors(smith_normal_form(a).D);
    auto left = random_unimodular(rng, m);
      auto right = random_unimodular(rng, n);
      auto b = multiply(multiply(left, a), right);
    EXPECT_EQ(invariant_factors(smith_normal_form(b).D), d0);
  }
}
