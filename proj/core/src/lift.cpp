#include "domp/lift.hpp"

#include <cmath>

#include "domp/errors.hpp"

namespace domp::lift {

namespace {

using B = Block;

constexpr std::array<NamedBlockInfo, 28> kNamedBlocks = {{
    {NamedBlock::kQ, "Q", B::kP, B::kP},
    {NamedBlock::kV, "V", B::kP, B::kX},
    {NamedBlock::kPy, "Py", B::kP, B::kY},
    {NamedBlock::kPW, "PW", B::kP, B::kW},
    {NamedBlock::kPxi, "Pxi", B::kP, B::kXi},
    {NamedBlock::kPeta, "Peta", B::kP, B::kEta},
    {NamedBlock::kPzeta, "Pzeta", B::kP, B::kZeta},
    {NamedBlock::kU, "U", B::kX, B::kX},
    {NamedBlock::kXy, "Xy", B::kX, B::kY},
    {NamedBlock::kXW, "XW", B::kX, B::kW},
    {NamedBlock::kXxi, "Xxi", B::kX, B::kXi},
    {NamedBlock::kXeta, "Xeta", B::kX, B::kEta},
    {NamedBlock::kXzeta, "Xzeta", B::kX, B::kZeta},
    {NamedBlock::kSigma, "Sigma", B::kY, B::kY},
    {NamedBlock::kyW, "yW", B::kY, B::kW},
    {NamedBlock::kyxi, "yxi", B::kY, B::kXi},
    {NamedBlock::kyeta, "yeta", B::kY, B::kEta},
    {NamedBlock::kyzeta, "yzeta", B::kY, B::kZeta},
    {NamedBlock::kOmega, "Omega", B::kW, B::kW},
    {NamedBlock::kWxi, "Wxi", B::kW, B::kXi},
    {NamedBlock::kWeta, "Weta", B::kW, B::kEta},
    {NamedBlock::kWzeta, "Wzeta", B::kW, B::kZeta},
    {NamedBlock::kPsi, "Psi", B::kXi, B::kXi},
    {NamedBlock::kxieta, "xieta", B::kXi, B::kEta},
    {NamedBlock::kxizeta, "xizeta", B::kXi, B::kZeta},
    {NamedBlock::kPi, "Pi", B::kEta, B::kEta},
    {NamedBlock::ketazeta, "etazeta", B::kEta, B::kZeta},
    {NamedBlock::kZ, "Z", B::kZeta, B::kZeta},
}};

}  // namespace

const std::array<NamedBlockInfo, 28>& named_blocks() { return kNamedBlocks; }

const NamedBlockInfo& info(NamedBlock block) {
  return kNamedBlocks[static_cast<std::size_t>(block)];
}

LiftedMatrix::LiftedMatrix(PhiLayout layout, Eigen::MatrixXd matrix)
    : layout_(layout), matrix_(std::move(matrix)) {
  const int dim = layout_.size() + 1;
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw InvalidArgument("lifted matrix must be " + std::to_string(dim) + "x" +
                          std::to_string(dim));
  }
  Eigen::MatrixXd transposed = matrix_.transpose();
  matrix_ = 0.5 * (matrix_ + transposed);
}

Eigen::VectorXd LiftedMatrix::border() const {
  return matrix_.row(0).tail(layout_.size()).transpose();
}

Eigen::MatrixXd LiftedMatrix::inner() const {
  const int N = layout_.size();
  return matrix_.bottomRightCorner(N, N);
}

Eigen::MatrixXd LiftedMatrix::block(NamedBlock id) const {
  const auto& b = info(id);
  return matrix_.block(1 + layout_.offset(b.row), 1 + layout_.offset(b.col),
                       layout_.length(b.row), layout_.length(b.col));
}

Eigen::SparseMatrix<double> build_F(const Instance& instance) {
  const int n = instance.n();
  std::vector<Eigen::Triplet<double>> entries;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double lk = instance.lambda()(k);
      if (lk == 0.0) continue;
      for (int l = 0; l < n; ++l) {
        const double c = instance.cost(j, l);
        if (c != 0.0) entries.emplace_back(j * n + k, j * n + l, lk * c);
      }
    }
  }
  Eigen::SparseMatrix<double> F(n * n, n * n);
  F.setFromTriplets(entries.begin(), entries.end());
  return F;
}

Eigen::SparseMatrix<double> build_G(const Instance& instance) {
  const int n = instance.n();
  const PhiLayout layout(n);
  const int N = layout.size();
  const int xoff = layout.offset(Block::kX);
  std::vector<Eigen::Triplet<double>> entries;
  auto add_interaction = [&](const InteractionMatrix& m, int offset) {
    for (const auto& e : m.upper_entries()) {
      entries.emplace_back(offset + e.row, offset + e.col, e.value);
      if (e.row != e.col) entries.emplace_back(offset + e.col, offset + e.row, e.value);
    }
  };
  add_interaction(instance.ordering_interaction(), 0);
  add_interaction(instance.allocation_interaction(), xoff);
  const Eigen::SparseMatrix<double> F = build_F(instance);
  for (int outer = 0; outer < F.outerSize(); ++outer) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(F, outer); it; ++it) {
      entries.emplace_back(it.row(), xoff + it.col(), it.value());
      entries.emplace_back(xoff + it.col(), it.row(), it.value());
    }
  }
  Eigen::SparseMatrix<double> G(N, N);
  G.setFromTriplets(entries.begin(), entries.end());
  return G;
}

Eigen::VectorXd build_g(const Instance& instance) {
  const PhiLayout layout(instance.n());
  Eigen::VectorXd g = Eigen::VectorXd::Zero(layout.size());
  g.segment(layout.offset(Block::kW), instance.n()) = instance.lambda();
  return g;
}

Eigen::VectorXd alpha_vector(const PhiLayout& layout) {
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(layout.size());
  for (int l = 0; l < layout.n(); ++l) alpha(layout.P(0, l)) = 1.0;
  return alpha;
}

LiftedMatrix lift(const PhiVector& phi) {
  if (!phi.is_nonnegative()) throw InvalidArgument("lift requires a nonnegative phi");
  const int N = phi.layout.size();
  Eigen::VectorXd bordered(N + 1);
  bordered(0) = 1.0;
  bordered.tail(N) = phi.values;
  return LiftedMatrix(phi.layout, bordered * bordered.transpose());
}

CertifiedLift convex_hull_lift(const std::vector<PhiVector>& points,
                               const std::vector<double>& weights) {
  if (points.empty()) throw InvalidArgument("convex hull needs at least one point");
  if (points.size() != weights.size()) {
    throw InvalidArgument("convex hull: point and weight counts differ");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("convex hull weights must be finite and nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("convex hull weights must sum to 1");
  const PhiLayout layout = points.front().layout;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(layout.size() + 1, layout.size() + 1);
  for (std::size_t r = 0; r < points.size(); ++r) {
    if (!(points[r].layout == layout)) throw InvalidArgument("convex hull: layouts differ");
    sum += weights[r] * lift(points[r]).matrix();
  }
  return CertifiedLift{LiftedMatrix(layout, std::move(sum)), weights, points};
}

PhiVector recover_phi(const LiftedMatrix& lifted) {
  const PhiLayout& layout = lifted.layout();
  const int n = layout.n();
  const int N = layout.size();
  Eigen::VectorXd values = Eigen::VectorXd::Zero(N);
  for (int l = 0; l < n; ++l) {
    values += lifted.matrix().col(1 + layout.P(0, l)).tail(N);
  }
  return PhiVector(layout, std::move(values));
}

double inner_FV(const Instance& instance, const LiftedMatrix& lifted) {
  const PhiLayout& layout = lifted.layout();
  const int n = instance.n();
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double lk = instance.lambda()(k);
      if (lk == 0.0) continue;
      for (int l = 0; l < n; ++l) {
        total += lk * instance.cost(j, l) * lifted.phi(layout.P(j, k), layout.X(j, l));
      }
    }
  }
  return total;
}

namespace {

double half_interaction(const InteractionMatrix& m, const LiftedMatrix& lifted, int offset) {
  double total = 0.0;
  for (const auto& e : m.upper_entries()) {
    const double v = lifted.phi(offset + e.row, offset + e.col);
    total += (e.row == e.col ? 0.5 : 1.0) * e.value * v;
  }
  return total;
}

}  // namespace

double half_G_inner(const Instance& instance, const LiftedMatrix& lifted) {
  const PhiLayout& layout = lifted.layout();
  return inner_FV(instance, lifted) +
         half_interaction(instance.ordering_interaction(), lifted, 0) +
         half_interaction(instance.allocation_interaction(), lifted, layout.offset(Block::kX));
}

double objective_mu(const Instance& instance, const LiftedMatrix& lifted, double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw InvalidArgument("mu must lie in [0, 1]");
  const PhiLayout& layout = lifted.layout();
  const int n = instance.n();
  double sorted = 0.0;
  for (int k = 0; k < n; ++k) {
    double rho = 0.0;
    for (int l = 0; l < n; ++l) rho += lifted.phi(layout.P(0, l), layout.W(k));
    sorted += instance.lambda()(k) * rho;
  }
  const double interactions =
      half_interaction(instance.ordering_interaction(), lifted, 0) +
      half_interaction(instance.allocation_interaction(), lifted, layout.offset(Block::kX));
  return mu * inner_FV(instance, lifted) + (1.0 - mu) * sorted + interactions;
}

}  // namespace domp::lift
