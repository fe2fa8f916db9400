#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace domp {

/// Site indices (0-based). Operations that accept a SiteSet normalize it to
/// sorted order and reject duplicates.
using SiteSet = std::vector<int>;

/// Flat index of the pair (a, b) in an n x n matrix under row-major
/// flattening: a * n + b.
constexpr int pair_index(int n, int a, int b) { return a * n + b; }

/// Sparse symmetric n^2 x n^2 matrix used for the ordering (D) and
/// allocation (H) interaction costs. Only the upper triangle is stored;
/// an empty matrix stands for the zero matrix.
class InteractionMatrix {
 public:
  struct Entry {
    int row;
    int col;
    double value;
  };

  InteractionMatrix() = default;
  explicit InteractionMatrix(int dim);

  int dim() const { return dim_; }
  bool is_zero() const;
  std::size_t stored_entries() const { return entries_.size(); }

  /// Sets entry (row, col) and its mirror (col, row). Setting the same
  /// unordered pair twice with different values throws InvalidArgument.
  void set(int row, int col, double value);

  double operator()(int row, int col) const;

  /// Upper-triangle entries (row <= col) in (row, col) order.
  std::vector<Entry> upper_entries() const;

  /// sum_{a,b} M_ab x_a x_b over the full symmetric matrix.
  double quadratic_form(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  Eigen::MatrixXd to_dense() const;

 private:
  int dim_ = 0;
  std::map<std::pair<int, int>, double> entries_;
};

/// A DOMP instance: n sites that are also the n clients, a cost matrix with
/// zero diagonal, p facilities to open, ordered weights lambda, and optional
/// interaction costs.
class Instance {
 public:
  /// Validates every invariant and throws InvalidArgument on violation.
  /// D and H may be default-constructed to mean the zero matrix.
  Instance(int p, Eigen::MatrixXd costs, Eigen::VectorXd lambda,
           InteractionMatrix ordering = {}, InteractionMatrix allocation = {});

  int n() const { return static_cast<int>(costs_.rows()); }
  int p() const { return p_; }
  const Eigen::MatrixXd& costs() const { return costs_; }
  double cost(int client, int site) const { return costs_(client, site); }
  const Eigen::VectorXd& lambda() const { return lambda_; }

  /// Ordering interaction D; entry (j*n+k, j'*n+k') is d_{jkj'k'}.
  const InteractionMatrix& ordering_interaction() const { return ordering_; }
  /// Allocation interaction H; entry (j*n+l, p*n+q) is h_{jlpq}.
  const InteractionMatrix& allocation_interaction() const { return allocation_; }

  bool has_interactions() const {
    return !ordering_.is_zero() || !allocation_.is_zero();
  }

  Instance with_lambda(Eigen::VectorXd lambda) const;
  Instance with_p(int p) const;

 private:
  int p_;
  Eigen::MatrixXd costs_;
  Eigen::VectorXd lambda_;
  InteractionMatrix ordering_;
  InteractionMatrix allocation_;
};

/// A located and allocated solution with its sorting permutation.
struct LocationSolution {
  SiteSet open_sites;
  std::vector<int> allocation;   // client -> serving site
  std::vector<double> costs;     // client -> allocation cost
  std::vector<int> permutation;  // sorted position -> client
  double value = 0.0;
};

}  // namespace domp
