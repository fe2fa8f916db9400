#include "domp/objective.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "domp/errors.hpp"

namespace domp {

SiteSet normalize_sites(int n, SiteSet sites) {
  if (sites.empty()) throw InvalidArgument("open site set must be nonempty");
  std::sort(sites.begin(), sites.end());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (sites[i] < 0 || sites[i] >= n) {
      std::ostringstream os;
      os << "site index " << sites[i] << " outside 0.." << n - 1;
      throw InvalidArgument(os.str());
    }
    if (i > 0 && sites[i] == sites[i - 1]) {
      throw InvalidArgument("open site set repeats site " + std::to_string(sites[i]));
    }
  }
  return sites;
}

Allocation allocate(const Instance& instance, const SiteSet& open_sites) {
  const int n = instance.n();
  const SiteSet open = normalize_sites(n, open_sites);
  std::vector<char> is_open(n, 0);
  for (int l : open) is_open[l] = 1;

  Allocation out;
  out.site.resize(n);
  out.cost.resize(n);
  for (int j = 0; j < n; ++j) {
    if (is_open[j]) {
      out.site[j] = j;
      out.cost[j] = instance.cost(j, j);
      continue;
    }
    int best = open.front();
    for (int l : open) {
      if (instance.cost(j, l) < instance.cost(j, best)) best = l;
    }
    out.site[j] = best;
    out.cost[j] = instance.cost(j, best);
  }
  return out;
}

std::vector<double> allocation_costs(const Instance& instance, const SiteSet& open_sites) {
  return allocate(instance, open_sites).cost;
}

std::vector<int> sorting_permutation(const std::vector<double>& costs) {
  std::vector<int> order(costs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return costs[a] < costs[b]; });
  return order;
}

LocationSolution evaluate_location(const Instance& instance, const SiteSet& open_sites) {
  LocationSolution sol;
  sol.open_sites = normalize_sites(instance.n(), open_sites);
  Allocation alloc = allocate(instance, sol.open_sites);
  sol.allocation = std::move(alloc.site);
  sol.costs = std::move(alloc.cost);
  sol.permutation = sorting_permutation(sol.costs);
  double value = 0.0;
  for (int k = 0; k < instance.n(); ++k) {
    value += instance.lambda()(k) * sol.costs[sol.permutation[k]];
  }
  sol.value = value;
  return sol;
}

double ordered_median_value(const Instance& instance, const SiteSet& open_sites) {
  return evaluate_location(instance, open_sites).value;
}

Eigen::VectorXd rvec(const Eigen::MatrixXd& m) {
  Eigen::VectorXd out(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r * m.cols() + c) = m(r, c);
  }
  return out;
}

double extended_objective(const Instance& instance, const Eigen::MatrixXd& ordering,
                          const Eigen::MatrixXd& allocation) {
  const int n = instance.n();
  if (ordering.rows() != n || ordering.cols() != n) {
    throw InvalidArgument("ordering matrix P must be n x n");
  }
  if (allocation.rows() != n || allocation.cols() != n) {
    throw InvalidArgument("allocation matrix X must be n x n");
  }
  double linear = 0.0;
  for (int j = 0; j < n; ++j) {
    const double realized = instance.costs().row(j).dot(allocation.row(j));
    for (int k = 0; k < n; ++k) {
      linear += instance.lambda()(k) * ordering(j, k) * realized;
    }
  }
  const double ordering_term = instance.ordering_interaction().quadratic_form(rvec(ordering));
  const double allocation_term =
      instance.allocation_interaction().quadratic_form(rvec(allocation));
  return linear + 0.5 * ordering_term + 0.5 * allocation_term;
}

}  // namespace domp
