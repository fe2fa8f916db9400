#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace domp::sortperm {

/// Permutation matrix that sorts r nondecreasingly: P(j, k) = 1 iff r_j lands
/// in sorted position k under a stable argsort (ties keep index order).
Eigen::MatrixXd sort_permutation_matrix(const Eigen::VectorXd& r);

struct SortViolation {
  enum class Kind { kNonBinary, kColumnSum, kRowSum, kOrder };
  Kind kind;
  int index;        // column k, row j, or position k (order between k and k+1)
  double residual;  // magnitude of the violation
  std::string describe() const;
};

struct SortCheck {
  bool feasible = true;
  std::vector<SortViolation> violations;
};

/// Checks the sorting feasibility program for (r, P): binary entries, unit
/// column and row sums, and sum_j P_jk r_j <= sum_j P_j,k+1 r_j for every
/// consecutive position pair. Comparisons are exact.
SortCheck check_sort_feasible(const Eigen::VectorXd& r, const Eigen::MatrixXd& ordering);

}  // namespace domp::sortperm
