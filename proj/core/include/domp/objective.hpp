#pragma once

#include <vector>

#include <Eigen/Dense>

#include "domp/instance.hpp"

namespace domp {

/// Sorts, range-checks and deduplicates-checks a site set.
/// Throws InvalidArgument if the set is empty, out of range, or repeats a site.
SiteSet normalize_sites(int n, SiteSet sites);

struct Allocation {
  std::vector<int> site;     // client -> serving site
  std::vector<double> cost;  // client -> allocation cost
};

/// Allocates every client to a cheapest open site. A client standing on an
/// open site serves itself; remaining ties go to the lowest site index.
Allocation allocate(const Instance& instance, const SiteSet& open_sites);

/// c_j(X) = min over open l of C_jl, for every client j.
std::vector<double> allocation_costs(const Instance& instance, const SiteSet& open_sites);

/// Positions -> clients, stable argsort of the costs (ties by client index).
std::vector<int> sorting_permutation(const std::vector<double>& costs);

/// Ordered median value: sorted allocation costs dotted with lambda.
double ordered_median_value(const Instance& instance, const SiteSet& open_sites);

/// Full solution record (allocation, permutation, value) for an open set.
LocationSolution evaluate_location(const Instance& instance, const SiteSet& open_sites);

/// Extended objective over ordering matrix P and allocation matrix X:
///   sum_k lambda_k sum_j P_jk sum_l C_jl X_jl
///   + 1/2 sum D P P + 1/2 sum H X X
/// Throws InvalidArgument if P or X is not n x n.
double extended_objective(const Instance& instance, const Eigen::MatrixXd& ordering,
                          const Eigen::MatrixXd& allocation);

/// Row-major flattening of an n x n matrix (rvec).
Eigen::VectorXd rvec(const Eigen::MatrixXd& m);

}  // namespace domp
