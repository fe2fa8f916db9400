#include "domp/qform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "domp/errors.hpp"
#include "domp/objective.hpp"
#include "domp/oracle.hpp"

namespace domp::qform {

namespace {

constexpr double kSlackFloor = -1e-12;

class RowAccumulator {
 public:
  RowAccumulator& add(int col, double coef) {
    coefs_[col] += coef;
    return *this;
  }
  SparseRow finish() const {
    SparseRow row;
    for (const auto& [col, coef] : coefs_) {
      if (coef != 0.0) row.emplace_back(col, coef);
    }
    return row;
  }

 private:
  std::map<int, double> coefs_;
};

std::string indexed(const char* family, std::initializer_list<std::pair<char, int>> idx) {
  std::ostringstream os;
  os << family << '[';
  bool first = true;
  for (const auto& [name, value] : idx) {
    if (!first) os << ',';
    os << name << '=' << value;
    first = false;
  }
  os << ']';
  return os.str();
}

}  // namespace

LinearSystem::LinearSystem(PhiLayout layout, std::vector<SparseRow> rows, std::vector<double> rhs,
                           std::vector<std::string> labels)
    : layout_(layout), rows_(std::move(rows)), labels_(std::move(labels)) {
  if (rows_.size() != rhs.size() || rows_.size() != labels_.size()) {
    throw InvalidArgument("linear system rows, rhs and labels must have equal length");
  }
  rhs_ = Eigen::Map<const Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
    for (const auto& [col, value] : rows_[i]) {
      if (col < 0 || col >= layout_.size()) throw InvalidArgument("triplet column out of range");
      triplets_.push_back({i, col, value});
    }
  }
  std::sort(triplets_.begin(), triplets_.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
}

Eigen::SparseMatrix<double> LinearSystem::matrix() const {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(triplets_.size());
  for (const auto& tr : triplets_) t.emplace_back(tr.row, tr.col, tr.value);
  Eigen::SparseMatrix<double> a(rows(), cols());
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

Eigen::VectorXd LinearSystem::apply(const Eigen::VectorXd& phi) const {
  if (phi.size() != cols()) throw InvalidArgument("phi length does not match the system");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(rows());
  for (int i = 0; i < rows(); ++i) {
    for (const auto& [col, value] : rows_[i]) out(i) += value * phi(col);
  }
  return out;
}

double LinearSystem::max_residual(const Eigen::VectorXd& phi) const {
  if (rows() == 0) return 0.0;
  return (apply(phi) - rhs_).cwiseAbs().maxCoeff();
}

std::string label_family(const std::string& label) {
  return label.substr(0, label.find('['));
}

LinearSystem build_linear_system(const Instance& instance) {
  const int n = instance.n();
  const int p = instance.p();
  const PhiLayout L(n);
  const Eigen::MatrixXd& C = instance.costs();
  const double capacity = static_cast<double>(n - p + 1);

  std::vector<SparseRow> rows;
  std::vector<double> rhs;
  std::vector<std::string> labels;
  auto push = [&](const RowAccumulator& acc, double b, std::string label) {
    rows.push_back(acc.finish());
    rhs.push_back(b);
    labels.push_back(std::move(label));
  };

  for (int k = 0; k < n; ++k) {
    RowAccumulator acc;
    for (int j = 0; j < n; ++j) acc.add(L.P(j, k), 1.0);
    push(acc, 1.0, indexed("perm_col", {{'k', k}}));
  }
  for (int j = 0; j < n; ++j) {
    RowAccumulator acc;
    for (int k = 0; k < n; ++k) acc.add(L.P(j, k), 1.0);
    push(acc, 1.0, indexed("perm_row", {{'j', j}}));
  }
  {
    RowAccumulator acc;
    for (int l = 0; l < n; ++l) acc.add(L.y(l), 1.0);
    push(acc, static_cast<double>(p), "open_count");
  }
  for (int j = 0; j < n; ++j) {
    RowAccumulator acc;
    for (int l = 0; l < n; ++l) acc.add(L.X(j, l), 1.0);
    push(acc, 1.0, indexed("assign", {{'j', j}}));
  }
  for (int l = 0; l < n; ++l) {
    RowAccumulator acc;
    for (int j = 0; j < n; ++j) acc.add(L.X(j, l), 1.0);
    acc.add(L.y(l), -capacity).add(L.zeta(l), 1.0);
    push(acc, 0.0, indexed("surrogate", {{'l', l}}));
  }
  for (int j = 0; j < n; ++j) {
    const double row_total = C.row(j).sum();
    for (int k = 0; k < n; ++k) {
      RowAccumulator acc;
      acc.add(L.W(k), 1.0);
      for (int l = 0; l < n; ++l) acc.add(L.X(j, l), -C(j, l));
      acc.add(L.P(j, k), -row_total).add(L.eta(j, k), -1.0);
      push(acc, -row_total, indexed("sorted_lb", {{'j', j}, {'k', k}}));
    }
  }
  for (int k = 0; k + 1 < n; ++k) {
    RowAccumulator acc;
    acc.add(L.W(k), 1.0).add(L.W(k + 1), -1.0).add(L.xi(k), 1.0);
    push(acc, 0.0, indexed("order", {{'k', k}}));
  }
  {
    RowAccumulator acc;
    for (int k = 0; k < n; ++k) acc.add(L.W(k), 1.0);
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) acc.add(L.X(j, l), -C(j, l));
    }
    push(acc, 0.0, "sorted_sum");
  }
  {
    RowAccumulator acc;
    acc.add(L.xi(n - 1), 1.0);
    push(acc, 0.0, "xi_pin");
  }
  return LinearSystem(L, std::move(rows), std::move(rhs), std::move(labels));
}

PhiVector complete_slacks(const Instance& instance, const Eigen::MatrixXd& ordering,
                          const Eigen::MatrixXd& allocation, const Eigen::VectorXd& open) {
  const int n = instance.n();
  const int p = instance.p();
  if (ordering.rows() != n || ordering.cols() != n) throw InvalidArgument("P must be n x n");
  if (allocation.rows() != n || allocation.cols() != n) throw InvalidArgument("X must be n x n");
  if (open.size() != n) throw InvalidArgument("y must have length n");

  const PhiLayout L(n);
  PhiVector phi(L);
  const Eigen::MatrixXd& C = instance.costs();

  Eigen::VectorXd realized(n);
  for (int j = 0; j < n; ++j) realized(j) = C.row(j).dot(allocation.row(j));
  const Eigen::VectorXd W = ordering.transpose() * realized;

  auto slack = [&](double value, const std::string& what) {
    if (value < kSlackFloor) {
      std::ostringstream os;
      os << "negative slack " << what << " = " << value;
      throw InfeasibleInput(os.str());
    }
    return std::max(value, 0.0);
  };

  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      phi[L.P(j, k)] = ordering(j, k);
      phi[L.X(j, k)] = allocation(j, k);
    }
  }
  for (int l = 0; l < n; ++l) phi[L.y(l)] = open(l);
  for (int k = 0; k < n; ++k) phi[L.W(k)] = slack(W(k), "W[" + std::to_string(k) + "]");
  for (int k = 0; k + 1 < n; ++k) {
    phi[L.xi(k)] = slack(W(k + 1) - W(k), "xi[" + std::to_string(k) + "]");
  }
  phi[L.xi(n - 1)] = 0.0;
  for (int j = 0; j < n; ++j) {
    const double row_total = C.row(j).sum();
    for (int k = 0; k < n; ++k) {
      const double eta = W(k) - realized(j) + row_total * (1.0 - ordering(j, k));
      phi[L.eta(j, k)] = slack(eta, "eta[" + std::to_string(j) + "," + std::to_string(k) + "]");
    }
  }
  const double capacity = static_cast<double>(n - p + 1);
  for (int l = 0; l < n; ++l) {
    const double zeta = capacity * open(l) - allocation.col(l).sum();
    phi[L.zeta(l)] = slack(zeta, "zeta[" + std::to_string(l) + "]");
  }

  const LinearSystem system = build_linear_system(instance);
  const double residual = system.max_residual(phi.values);
  if (residual > kDefaultTolerance) {
    std::ostringstream os;
    os << "triple violates the linear system (max residual " << residual << ")";
    throw InfeasibleInput(os.str());
  }
  return phi;
}

double MiqpReport::worst() const {
  return std::max({linear_residual, negativity, ordering_binarity, allocation_binarity,
                   sorted_cost_residual, ordering_quadratic, allocation_quadratic});
}

MiqpReport check_miqp_feasible(const Instance& instance, const PhiVector& phi, double tol) {
  if (phi.layout.n() != instance.n()) throw InvalidArgument("phi layout does not match instance");
  const int n = instance.n();
  const LinearSystem system = build_linear_system(instance);
  MiqpReport report;
  report.linear_residual = system.max_residual(phi.values);
  report.negativity = std::max(0.0, -phi.values.minCoeff());

  const Eigen::MatrixXd P = phi.P();
  const Eigen::MatrixXd X = phi.X();
  const Eigen::ArrayXXd p_gap = P.array() - P.array().square();
  const Eigen::ArrayXXd x_gap = X.array() - X.array().square();
  report.ordering_binarity = p_gap.abs().maxCoeff();
  report.allocation_binarity = x_gap.abs().maxCoeff();
  report.ordering_quadratic = std::abs(p_gap.sum());
  report.allocation_quadratic = std::abs(x_gap.sum());

  const Eigen::VectorXd W = phi.W();
  for (int k = 0; k < n; ++k) {
    double sorted = 0.0;
    for (int j = 0; j < n; ++j) sorted += P(j, k) * instance.costs().row(j).dot(X.row(j));
    report.sorted_cost_residual = std::max(report.sorted_cost_residual, std::abs(W(k) - sorted));
  }
  report.pass = report.worst() <= tol;
  return report;
}

double miqp_objective(const Instance& instance, const PhiVector& phi) {
  if (phi.layout.n() != instance.n()) throw InvalidArgument("phi layout does not match instance");
  const int n = instance.n();
  const PhiLayout& L = phi.layout;
  const double sorted = instance.lambda().dot(phi.W());
  const double ordering = instance.ordering_interaction().quadratic_form(
      phi.values.segment(L.offset(Block::kP), n * n));
  const double allocation = instance.allocation_interaction().quadratic_form(
      phi.values.segment(L.offset(Block::kX), n * n));
  return sorted + 0.5 * ordering + 0.5 * allocation;
}

namespace {

// Visits every X with one unit per row over the allowed sites (odometer,
// last client fastest).
template <typename Visit>
void for_each_assignment(int n, const std::vector<int>& sites, Visit&& visit) {
  const int s = static_cast<int>(sites.size());
  std::vector<int> choice(n, 0);
  std::vector<int> site_of(n);
  while (true) {
    for (int j = 0; j < n; ++j) site_of[j] = sites[choice[j]];
    visit(site_of);
    int j = n - 1;
    while (j >= 0 && choice[j] == s - 1) choice[j--] = 0;
    if (j < 0) return;
    ++choice[j];
  }
}

bool consistent(const std::vector<double>& cost, const std::vector<int>& client_at) {
  for (std::size_t k = 0; k + 1 < client_at.size(); ++k) {
    if (cost[client_at[k]] > cost[client_at[k + 1]]) return false;
  }
  return true;
}

}  // namespace

SurrogateReport surrogate_equivalence_check(const Instance& instance) {
  const int n = instance.n();
  const int p = instance.p();
  if (n > kMaxSurrogateSites) {
    throw ResourceLimit("surrogate check guard: n=" + std::to_string(n) + " > " +
                        std::to_string(kMaxSurrogateSites));
  }
  const int capacity = n - p + 1;
  std::vector<int> all_sites(n);
  for (int l = 0; l < n; ++l) all_sites[l] = l;

  SurrogateReport report;
  std::vector<double> cost(n);
  std::vector<int> column_count(n);
  oracle::for_each_subset(n, p, [&](const SiteSet& open) {
    std::vector<char> is_open(n, 0);
    for (int l : open) is_open[l] = 1;
    for_each_assignment(n, all_sites, [&](const std::vector<int>& site_of) {
      std::fill(column_count.begin(), column_count.end(), 0);
      bool pairwise = true;
      for (int j = 0; j < n; ++j) {
        cost[j] = instance.cost(j, site_of[j]);
        ++column_count[site_of[j]];
        if (!is_open[site_of[j]]) pairwise = false;
      }
      bool surrogate = true;
      for (int l = 0; l < n; ++l) {
        if (column_count[l] > capacity * is_open[l]) surrogate = false;
      }
      bool self_service = true;
      for (int l : open) {
        if (site_of[l] != l) self_service = false;
      }
      long orderings = 0;
      oracle::for_each_permutation(n, [&](const std::vector<int>& client_at) {
        if (consistent(cost, client_at)) ++orderings;
      });
      if (pairwise != surrogate) report.mismatches_without_self_service += orderings;
      if (!self_service) return;
      report.domain_size += orderings;
      if (pairwise) report.satisfy_pairwise += orderings;
      if (surrogate) report.satisfy_surrogate += orderings;
      if (pairwise != surrogate) report.mismatches += orderings;
    });
  });
  report.equivalent = report.mismatches == 0;
  return report;
}

std::vector<PhiVector> enumerate_feasible_points(const Instance& instance) {
  const int n = instance.n();
  if (n > kMaxFeasibleEnumerationSites) {
    throw ResourceLimit("feasible point enumeration guard: n=" + std::to_string(n) + " > " +
                        std::to_string(kMaxFeasibleEnumerationSites));
  }
  const int capacity = n - instance.p() + 1;
  std::vector<PhiVector> points;
  std::vector<double> cost(n);
  std::vector<int> column_count(n);
  oracle::for_each_subset(n, instance.p(), [&](const SiteSet& open) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (int l : open) y(l) = 1.0;
    for_each_assignment(n, open, [&](const std::vector<int>& site_of) {
      std::fill(column_count.begin(), column_count.end(), 0);
      for (int j = 0; j < n; ++j) {
        cost[j] = instance.cost(j, site_of[j]);
        ++column_count[site_of[j]];
      }
      for (int l : open) {
        if (column_count[l] > capacity) return;
      }
      Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, n);
      for (int j = 0; j < n; ++j) X(j, site_of[j]) = 1.0;
      oracle::for_each_permutation(n, [&](const std::vector<int>& client_at) {
        if (!consistent(cost, client_at)) return;
        Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
        for (int k = 0; k < n; ++k) P(client_at[k], k) = 1.0;
        points.push_back(complete_slacks(instance, P, X, y));
      });
    });
  });
  return points;
}

std::string linear_system_to_json(const LinearSystem& system, int indent) {
  using nlohmann::json;
  json doc;
  doc["m"] = system.rows();
  doc["N"] = system.cols();
  json triplets = json::array();
  for (const auto& t : system.triplets()) triplets.push_back(json::array({t.row, t.col, t.value}));
  doc["triplets"] = std::move(triplets);
  doc["b"] = std::vector<double>(system.rhs().data(), system.rhs().data() + system.rows());
  doc["labels"] = system.labels();
  return doc.dump(indent);
}

}  // namespace domp::qform
