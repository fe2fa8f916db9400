#include "brute_force.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

namespace domp::testing {

Instance e1(Eigen::VectorXd lambda, int p) {
  Eigen::MatrixXd C(3, 3);
  C << 0, 4, 7, 2, 0, 3, 5, 6, 0;
  return Instance(p, C, std::move(lambda));
}

std::vector<double> sorted_allocation(const Eigen::MatrixXd& C, std::uint32_t mask) {
  const int n = static_cast<int>(C.rows());
  std::vector<double> costs(n, std::numeric_limits<double>::infinity());
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      if (mask & (1u << l)) costs[j] = std::min(costs[j], C(j, l));
    }
  }
  std::sort(costs.begin(), costs.end());
  return costs;
}

namespace {

template <class F>
double min_over_subsets(int n, int p, F&& value) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) == p) best = std::min(best, value(mask));
  }
  return best;
}

}  // namespace

double p_median(const Eigen::MatrixXd& C, int p) {
  return min_over_subsets(static_cast<int>(C.rows()), p, [&](std::uint32_t mask) {
    const auto c = sorted_allocation(C, mask);
    return std::accumulate(c.begin(), c.end(), 0.0);
  });
}

double p_center(const Eigen::MatrixXd& C, int p) {
  return min_over_subsets(static_cast<int>(C.rows()), p,
                          [&](std::uint32_t mask) { return sorted_allocation(C, mask).back(); });
}

double trimmed_mean(const Eigen::MatrixXd& C, int p, int k1, int k2) {
  return min_over_subsets(static_cast<int>(C.rows()), p, [&](std::uint32_t mask) {
    const auto c = sorted_allocation(C, mask);
    return std::accumulate(c.begin() + k1, c.end() - k2, 0.0);
  });
}

double ordered_median(const Eigen::MatrixXd& C, const Eigen::VectorXd& lambda, int p) {
  return min_over_subsets(static_cast<int>(C.rows()), p, [&](std::uint32_t mask) {
    const auto c = sorted_allocation(C, mask);
    double v = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) v += lambda(static_cast<int>(k)) * c[k];
    return v;
  });
}

bool is_nondecreasing(const Eigen::VectorXd& r, const std::vector<int>& order) {
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    if (r(order[k]) > r(order[k + 1])) return false;
  }
  return true;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

double extended_bruteforce(const Instance& instance) {
  const int n = instance.n();
  const Eigen::MatrixXd& C = instance.costs();
  const auto perms = all_permutations(n);
  const Eigen::MatrixXd D = instance.ordering_interaction().to_dense();
  const Eigen::MatrixXd H = instance.allocation_interaction().to_dense();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != instance.p()) continue;
    std::vector<int> sites;
    for (int l = 0; l < n; ++l) {
      if (mask & (1u << l)) sites.push_back(l);
    }
    const int p = instance.p();
    long total = 1;
    for (int j = 0; j < n; ++j) total *= p;
    for (long code = 0; code < total; ++code) {
      std::vector<int> serve(n);
      long rest = code;
      for (int j = 0; j < n; ++j) {
        serve[j] = sites[rest % p];
        rest /= p;
      }
      Eigen::VectorXd r(n);
      Eigen::VectorXd x = Eigen::VectorXd::Zero(n * n);
      for (int j = 0; j < n; ++j) {
        r(j) = C(j, serve[j]);
        x(j * n + serve[j]) = 1.0;
      }
      for (const auto& order : perms) {
        if (!is_nondecreasing(r, order)) continue;
        Eigen::VectorXd pv = Eigen::VectorXd::Zero(n * n);
        double sorted = 0.0;
        for (int k = 0; k < n; ++k) {
          pv(order[k] * n + k) = 1.0;
          sorted += instance.lambda()(k) * r(order[k]);
        }
        const double v = sorted + 0.5 * pv.dot(D * pv) + 0.5 * x.dot(H * x);
        best = std::min(best, v);
      }
    }
  }
  return best;
}

}  // namespace domp::testing
