#include "domp/sortperm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "domp/errors.hpp"

namespace domp::sortperm {

Eigen::MatrixXd sort_permutation_matrix(const Eigen::VectorXd& r) {
  const auto n = r.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return r(a) < r(b); });
  Eigen::MatrixXd ordering = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) ordering(order[k], k) = 1.0;
  return ordering;
}

std::string SortViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kNonBinary:
      os << "non-binary entry (flat index " << index << ")";
      break;
    case Kind::kColumnSum:
      os << "column " << index << " sum != 1";
      break;
    case Kind::kRowSum:
      os << "row " << index << " sum != 1";
      break;
    case Kind::kOrder:
      os << "position " << index << " exceeds position " << index + 1;
      break;
  }
  os << " (residual " << residual << ")";
  return os.str();
}

SortCheck check_sort_feasible(const Eigen::VectorXd& r, const Eigen::MatrixXd& ordering) {
  const auto n = r.size();
  if (ordering.rows() != n || ordering.cols() != n) {
    throw InvalidArgument("ordering matrix must be n x n for a length-n vector");
  }
  SortCheck check;
  auto flag = [&](SortViolation::Kind kind, Eigen::Index index, double residual) {
    check.feasible = false;
    check.violations.push_back({kind, static_cast<int>(index), residual});
  };
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double v = ordering(j, k);
      if (v != 0.0 && v != 1.0) flag(SortViolation::Kind::kNonBinary, j * n + k, v - v * v);
    }
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double s = ordering.col(k).sum();
    if (s != 1.0) flag(SortViolation::Kind::kColumnSum, k, std::abs(s - 1.0));
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const double s = ordering.row(j).sum();
    if (s != 1.0) flag(SortViolation::Kind::kRowSum, j, std::abs(s - 1.0));
  }
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double here = ordering.col(k).dot(r);
    const double next = ordering.col(k + 1).dot(r);
    if (here > next) flag(SortViolation::Kind::kOrder, k, here - next);
  }
  return check;
}

}  // namespace domp::sortperm
