#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "domp/instance.hpp"

namespace domp::oracle {

/// Enumeration guards.
inline constexpr int kMaxEnumerateSites = 20;
inline constexpr int kMaxExtendedSites = 5;

/// Co-optimal witnesses are collected within this absolute tolerance.
inline constexpr double kTieTolerance = 1e-12;

/// Calls visit(subset) for every p-subset of {0..n-1} in lexicographic order.
void for_each_subset(int n, int p, const std::function<void(const SiteSet&)>& visit);

/// Calls visit(perm) for every permutation of {0..n-1} in lexicographic order.
void for_each_permutation(int n, const std::function<void(const std::vector<int>&)>& visit);

struct EnumerationResult {
  double value = 0.0;
  std::vector<SiteSet> optimal_sets;  // lexicographic order
};

/// Exact DOMP optimum by enumerating every p-subset of sites.
/// Throws Unsupported when D or H is nonzero and ResourceLimit when n > 20.
EnumerationResult solve_enumerate(const Instance& instance);

/// Binary witness (y, X, P) of the extended formulation.
struct ExtendedWitness {
  SiteSet open_sites;
  Eigen::VectorXd open;        // y
  Eigen::MatrixXd allocation;  // X, X(j, l) = 1 iff client j is served by l
  Eigen::MatrixXd ordering;    // P, P(j, k) = 1 iff client j sits in position k
};

struct ExtendedResult {
  double value = 0.0;
  ExtendedWitness witness;
};

struct ExtendedOptions {
  // With D = H = 0, evaluate only the cheapest allocation and its stable
  // sorting permutation per open set. Disable to force the full enumeration.
  bool greedy_fast_path = true;
};

/// Exact optimum of the extended objective over open sets, every allocation
/// of clients to open sites, and every permutation consistent with the
/// ordering of the realized costs. When D = 0 a single consistent permutation
/// per allocation is evaluated. Throws ResourceLimit when n > 5.
ExtendedResult solve_enumerate_extended(const Instance& instance, ExtendedOptions options = {});

}  // namespace domp::oracle
