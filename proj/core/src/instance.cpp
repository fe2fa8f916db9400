#include "domp/instance.hpp"

#include <cmath>
#include <sstream>

#include "domp/errors.hpp"

namespace domp {

InteractionMatrix::InteractionMatrix(int dim) : dim_(dim) {
  if (dim < 0) throw InvalidArgument("interaction matrix dimension must be >= 0");
}

bool InteractionMatrix::is_zero() const {
  for (const auto& [key, value] : entries_) {
    if (value != 0.0) return false;
  }
  return true;
}

void InteractionMatrix::set(int row, int col, double value) {
  if (row < 0 || col < 0 || row >= dim_ || col >= dim_) {
    std::ostringstream os;
    os << "interaction entry (" << row << "," << col << ") outside dimension " << dim_;
    throw InvalidArgument(os.str());
  }
  if (!std::isfinite(value)) throw InvalidArgument("interaction entry must be finite");
  const auto key = std::minmax(row, col);
  auto [it, inserted] = entries_.emplace(std::pair<int, int>(key.first, key.second), value);
  if (!inserted && it->second != value) {
    std::ostringstream os;
    os << "conflicting interaction entries for (" << row << "," << col << "): "
       << it->second << " vs " << value;
    throw InvalidArgument(os.str());
  }
}

double InteractionMatrix::operator()(int row, int col) const {
  const auto key = std::minmax(row, col);
  auto it = entries_.find({key.first, key.second});
  return it == entries_.end() ? 0.0 : it->second;
}

std::vector<InteractionMatrix::Entry> InteractionMatrix::upper_entries() const {
  std::vector<Entry> out;
  out.reserve(entries_.size());
  for (const auto& [key, value] : entries_) out.push_back({key.first, key.second, value});
  return out;
}

double InteractionMatrix::quadratic_form(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  double total = 0.0;
  for (const auto& [key, value] : entries_) {
    const double term = value * x(key.first) * x(key.second);
    total += key.first == key.second ? term : 2.0 * term;
  }
  return total;
}

Eigen::MatrixXd InteractionMatrix::to_dense() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim_, dim_);
  for (const auto& [key, value] : entries_) {
    out(key.first, key.second) = value;
    out(key.second, key.first) = value;
  }
  return out;
}

Instance::Instance(int p, Eigen::MatrixXd costs, Eigen::VectorXd lambda,
                   InteractionMatrix ordering, InteractionMatrix allocation)
    : p_(p),
      costs_(std::move(costs)),
      lambda_(std::move(lambda)),
      ordering_(std::move(ordering)),
      allocation_(std::move(allocation)) {
  const auto n = costs_.rows();
  if (n != costs_.cols()) throw InvalidArgument("cost matrix must be square");
  if (n < 2) throw InvalidArgument("instance needs at least two sites");
  if (p_ < 1 || p_ >= n) {
    std::ostringstream os;
    os << "facility count p=" << p_ << " must satisfy 1 <= p < n=" << n;
    throw InvalidArgument(os.str());
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = 0; l < n; ++l) {
      const double c = costs_(j, l);
      if (!std::isfinite(c)) throw InvalidArgument("costs must be finite");
      if (c < 0.0) {
        std::ostringstream os;
        os << "negative cost C[" << j << "][" << l << "] = " << c;
        throw InvalidArgument(os.str());
      }
    }
    if (costs_(j, j) != 0.0) {
      std::ostringstream os;
      os << "free self-service violated: C[" << j << "][" << j << "] = " << costs_(j, j);
      throw InvalidArgument(os.str());
    }
  }
  if (lambda_.size() != n) throw InvalidArgument("lambda must have length n");
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!std::isfinite(lambda_(k)) || lambda_(k) < 0.0) {
      throw InvalidArgument("lambda entries must be finite and nonnegative");
    }
  }
  const int n2 = static_cast<int>(n * n);
  if (ordering_.dim() == 0) ordering_ = InteractionMatrix(n2);
  if (allocation_.dim() == 0) allocation_ = InteractionMatrix(n2);
  if (ordering_.dim() != n2) throw InvalidArgument("D must be n^2 x n^2");
  if (allocation_.dim() != n2) throw InvalidArgument("H must be n^2 x n^2");
}

Instance Instance::with_lambda(Eigen::VectorXd lambda) const {
  return Instance(p_, costs_, std::move(lambda), ordering_, allocation_);
}

Instance Instance::with_p(int p) const {
  return Instance(p, costs_, lambda_, ordering_, allocation_);
}

}  // namespace domp
