#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "domp/instance.hpp"
#include "domp/phi_layout.hpp"

namespace domp::qform {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr int kMaxSurrogateSites = 4;
inline constexpr int kMaxFeasibleEnumerationSites = 5;

/// Sparse row: (column, coefficient) pairs sorted by column, no zeros.
using SparseRow = std::vector<std::pair<int, double>>;

struct Triplet {
  int row;
  int col;
  double value;
  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// The equality system A phi = b of the quadratic formulation. Rows appear in
/// a fixed family order (see build_linear_system) and every row is labelled
/// "<family>[<indices>]", e.g. "surrogate[l=2]".
class LinearSystem {
 public:
  LinearSystem(PhiLayout layout, std::vector<SparseRow> rows, std::vector<double> rhs,
               std::vector<std::string> labels);

  const PhiLayout& layout() const { return layout_; }
  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return layout_.size(); }

  const SparseRow& row(int i) const { return rows_[i]; }
  const Eigen::VectorXd& rhs() const { return rhs_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Triplets sorted by (row, col).
  const std::vector<Triplet>& triplets() const { return triplets_; }

  Eigen::SparseMatrix<double> matrix() const;
  Eigen::VectorXd apply(const Eigen::VectorXd& phi) const;
  /// max_i |(A phi - b)_i|
  double max_residual(const Eigen::VectorXd& phi) const;

 private:
  PhiLayout layout_;
  std::vector<SparseRow> rows_;
  Eigen::VectorXd rhs_;
  std::vector<std::string> labels_;
  std::vector<Triplet> triplets_;
};

/// Family part of a row label ("sorted_lb[j=0,k=2]" -> "sorted_lb").
std::string label_family(const std::string& label);

/// Builds the linear equality system, rows in this order:
///   perm_col[k]     n rows   sum_j P_jk = 1
///   perm_row[j]     n rows   sum_k P_jk = 1
///   open_count      1 row    sum_l y_l = p
///   assign[j]       n rows   sum_l X_jl = 1
///   surrogate[l]    n rows   sum_j X_jl - (n-p+1) y_l + zeta_l = 0
///   sorted_lb[j,k]  n^2 rows W_k - sum_l C_jl X_jl - (sum_l C_jl) P_jk - eta_jk = -sum_l C_jl
///   order[k]        n-1 rows W_k - W_k+1 + xi_k = 0
///   sorted_sum      1 row    sum_k W_k - sum_jl C_jl X_jl = 0
///   xi_pin          1 row    xi_n = 0
/// for a total of n^2 + 5n + 2 rows.
LinearSystem build_linear_system(const Instance& instance);

/// Fills W, xi, eta and zeta for a binary triple (P, X, y) and returns phi.
/// Throws InvalidArgument on shape mismatch and InfeasibleInput when a slack
/// would be negative (below -1e-12) or the triple violates a linear row.
PhiVector complete_slacks(const Instance& instance, const Eigen::MatrixXd& ordering,
                          const Eigen::MatrixXd& allocation, const Eigen::VectorXd& open);

struct MiqpReport {
  double linear_residual = 0.0;      // max |A phi - b|
  double negativity = 0.0;           // max(0, -min phi)
  double ordering_binarity = 0.0;    // max |P - P^2|
  double allocation_binarity = 0.0;  // max |X - X^2|
  double sorted_cost_residual = 0.0; // max_k |W_k - sum_j P_jk sum_l C_jl X_jl|
  double ordering_quadratic = 0.0;   // |sum (P - P^2)|
  double allocation_quadratic = 0.0; // |sum (X - X^2)|
  bool pass = false;

  double worst() const;
};

/// Checks every constraint of the quadratic formulation at tolerance tol.
MiqpReport check_miqp_feasible(const Instance& instance, const PhiVector& phi,
                               double tol = kDefaultTolerance);

/// lambda^T W + 1/2 sum D P P + 1/2 sum H X X, read from the phi blocks.
double miqp_objective(const Instance& instance, const PhiVector& phi);

struct SurrogateReport {
  bool equivalent = false;
  long domain_size = 0;          // admissible binary configurations examined
  long satisfy_pairwise = 0;     // ... satisfying X_jl <= y_l for all j, l
  long satisfy_surrogate = 0;    // ... satisfying sum_j X_jl <= (n-p+1) y_l
  long mismatches = 0;           // configurations in exactly one of the two sets
  long mismatches_without_self_service = 0;
};

/// Enumerates binary (P, X, y) with P a permutation, sum y = p, unit-row X,
/// P consistent with the ordering of the realized costs, and every open site
/// serving itself; then compares the set satisfying the pairwise linking
/// constraints with the set satisfying the aggregated surrogate. Also counts
/// mismatches when the self-service premise is dropped (informational).
/// Throws ResourceLimit when n > 4.
SurrogateReport surrogate_equivalence_check(const Instance& instance);

/// Every binary feasible point of the quadratic formulation (with completed
/// slacks), in deterministic order: open sets lexicographic, then allocations,
/// then permutations. Throws ResourceLimit when n > 5.
std::vector<PhiVector> enumerate_feasible_points(const Instance& instance);

/// Sparse system export:
///   {"m":..,"N":..,"triplets":[[row,col,value],...],"b":[...],"labels":[...]}
std::string linear_system_to_json(const LinearSystem& system, int indent = -1);

}  // namespace domp::qform
