#include "domp/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "domp/errors.hpp"
#include "domp/objective.hpp"

namespace domp::oracle {

void for_each_subset(int n, int p, const std::function<void(const SiteSet&)>& visit) {
  if (p < 0 || p > n) return;
  SiteSet subset(p);
  std::iota(subset.begin(), subset.end(), 0);
  while (true) {
    visit(subset);
    int i = p - 1;
    while (i >= 0 && subset[i] == n - p + i) --i;
    if (i < 0) return;
    ++subset[i];
    for (int t = i + 1; t < p; ++t) subset[t] = subset[t - 1] + 1;
  }
}

void for_each_permutation(int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    visit(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

EnumerationResult solve_enumerate(const Instance& instance) {
  if (instance.has_interactions()) {
    throw Unsupported("solve_enumerate handles D = H = 0 only; use solve_enumerate_extended");
  }
  if (instance.n() > kMaxEnumerateSites) {
    std::ostringstream os;
    os << "subset enumeration guard: n=" << instance.n() << " > " << kMaxEnumerateSites;
    throw ResourceLimit(os.str());
  }
  EnumerationResult result;
  result.value = std::numeric_limits<double>::infinity();
  for_each_subset(instance.n(), instance.p(), [&](const SiteSet& open) {
    const double v = ordered_median_value(instance, open);
    if (v < result.value - kTieTolerance) {
      result.value = v;
      result.optimal_sets.assign(1, open);
    } else if (v <= result.value + kTieTolerance) {
      result.optimal_sets.push_back(open);
    }
  });
  return result;
}

namespace {

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  ExtendedWitness witness;
};

ExtendedWitness make_witness(int n, const SiteSet& open, const std::vector<int>& site_of,
                             const std::vector<int>& client_at) {
  ExtendedWitness w;
  w.open_sites = open;
  w.open = Eigen::VectorXd::Zero(n);
  for (int l : open) w.open(l) = 1.0;
  w.allocation = Eigen::MatrixXd::Zero(n, n);
  w.ordering = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) w.allocation(j, site_of[j]) = 1.0;
  for (int k = 0; k < n; ++k) w.ordering(client_at[k], k) = 1.0;
  return w;
}

void offer(Candidate& best, const Instance& instance, ExtendedWitness w) {
  const double v = extended_objective(instance, w.ordering, w.allocation);
  if (v < best.value - kTieTolerance) {
    best.value = v;
    best.witness = std::move(w);
  }
}

bool ordering_consistent(const std::vector<double>& cost, const std::vector<int>& client_at) {
  for (std::size_t k = 0; k + 1 < client_at.size(); ++k) {
    if (cost[client_at[k]] > cost[client_at[k + 1]]) return false;
  }
  return true;
}

}  // namespace

ExtendedResult solve_enumerate_extended(const Instance& instance, ExtendedOptions options) {
  const int n = instance.n();
  if (n > kMaxExtendedSites) {
    std::ostringstream os;
    os << "extended enumeration guard: n=" << n << " > " << kMaxExtendedSites;
    throw ResourceLimit(os.str());
  }
  const bool plain = !instance.has_interactions();
  const bool ordering_free = instance.ordering_interaction().is_zero();
  Candidate best;

  for_each_subset(n, instance.p(), [&](const SiteSet& open) {
    if (plain && options.greedy_fast_path) {
      const LocationSolution sol = evaluate_location(instance, open);
      offer(best, instance, make_witness(n, open, sol.allocation, sol.permutation));
      return;
    }
    // Odometer over allocations: choice[j] indexes into open.
    const int p = static_cast<int>(open.size());
    std::vector<int> choice(n, 0);
    std::vector<int> site_of(n);
    std::vector<double> cost(n);
    while (true) {
      for (int j = 0; j < n; ++j) {
        site_of[j] = open[choice[j]];
        cost[j] = instance.cost(j, site_of[j]);
      }
      if (ordering_free) {
        offer(best, instance, make_witness(n, open, site_of, sorting_permutation(cost)));
      } else {
        for_each_permutation(n, [&](const std::vector<int>& client_at) {
          if (ordering_consistent(cost, client_at)) {
            offer(best, instance, make_witness(n, open, site_of, client_at));
          }
        });
      }
      int j = n - 1;
      while (j >= 0 && choice[j] == p - 1) choice[j--] = 0;
      if (j < 0) break;
      ++choice[j];
    }
  });
  return {best.value, std::move(best.witness)};
}

}  // namespace domp::oracle
