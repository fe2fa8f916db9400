#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "domp/sortperm.hpp"

namespace domp {
namespace {

using sortperm::check_sort_feasible;
using sortperm::sort_permutation_matrix;

TEST(SortPermutationMatrix, HandExamples) {
  Eigen::Matrix3d expected = Eigen::Matrix3d::Zero();
  expected(1, 0) = expected(0, 1) = expected(2, 2) = 1;
  EXPECT_EQ(sort_permutation_matrix(Eigen::Vector3d(5, 2, 9)), expected);
  EXPECT_EQ(sort_permutation_matrix(Eigen::Vector3d(1, 2, 3)), Eigen::MatrixXd::Identity(3, 3));
  EXPECT_EQ(sort_permutation_matrix(Eigen::Vector3d(2, 2, 2)), Eigen::MatrixXd::Identity(3, 3));
}

TEST(CheckSortFeasible, ReportsOrderViolation) {
  const Eigen::Vector3d r(5, 2, 9);
  EXPECT_TRUE(check_sort_feasible(r, sort_permutation_matrix(r)).feasible);
  const auto bad = check_sort_feasible(r, Eigen::MatrixXd::Identity(3, 3));
  EXPECT_FALSE(bad.feasible);
  ASSERT_EQ(bad.violations.size(), 1u);
  EXPECT_EQ(bad.violations[0].kind, sortperm::SortViolation::Kind::kOrder);
  EXPECT_EQ(bad.violations[0].index, 0);
  EXPECT_DOUBLE_EQ(bad.violations[0].residual, 3.0);
}

TEST(CheckSortFeasible, ReportsStructuralViolations) {
  Eigen::Matrix3d P = Eigen::Matrix3d::Identity();
  P(0, 0) = 0.5;
  const auto r = check_sort_feasible(Eigen::Vector3d(1, 2, 3), P);
  EXPECT_FALSE(r.feasible);
  bool nonbinary = false;
  for (const auto& v : r.violations) nonbinary |= v.kind == sortperm::SortViolation::Kind::kNonBinary;
  EXPECT_TRUE(nonbinary);
  Eigen::Matrix3d twice = Eigen::Matrix3d::Zero();
  twice(0, 0) = twice(1, 0) = twice(2, 2) = 1;
  EXPECT_FALSE(check_sort_feasible(Eigen::Vector3d(1, 1, 1), twice).feasible);
}

TEST(CheckSortFeasible, EqualEntriesAcceptEveryPermutation) {
  for (const auto& perm : testing::all_permutations(3)) {
    Eigen::Matrix3d P = Eigen::Matrix3d::Zero();
    for (int k = 0; k < 3; ++k) P(perm[k], k) = 1;
    EXPECT_TRUE(check_sort_feasible(Eigen::Vector3d(2, 2, 2), P).feasible);
  }
}

TEST(CheckSortFeasible, RandomSortedMatricesPass) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> len(1, 8), val(-5, 5);
  for (int t = 0; t < 1000; ++t) {
    Eigen::VectorXd r(len(rng));
    for (int i = 0; i < r.size(); ++i) r(i) = val(rng) * 0.5;
    EXPECT_TRUE(check_sort_feasible(r, sort_permutation_matrix(r)).feasible);
  }
}

}  // namespace
}  // namespace domp
