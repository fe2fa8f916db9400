#include "domp/dnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <json.hpp>

#include "domp/errors.hpp"

namespace domp::dnn {

void DnnSettings::validate() const {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  if (!(tol_primal > 0.0) || !(tol_dual > 0.0)) throw InvalidArgument("tolerances must be positive");
  if (max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
  if (!(relaxation > 0.0 && relaxation < 2.0)) throw InvalidArgument("relaxation must lie in (0, 2)");
  if (adapt_interval < 1 || !(adapt_factor > 1.0) || !(adapt_ratio > 1.0)) {
    throw InvalidArgument("invalid penalty adaptation constants");
  }
}

std::string to_string(DnnStatus status) {
  switch (status) {
    case DnnStatus::kConverged: return "converged";
    case DnnStatus::kMaxIter: return "max-iter";
    case DnnStatus::kInfeasibleDetected: return "infeasible-detected";
  }
  return "?";
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols()) throw InvalidArgument("project_psd needs a square matrix");
  if (M.size() == 0) return M;
  const Eigen::MatrixXd S = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
  if (solver.info() != Eigen::Success) throw NumericFailure("eigensolver did not converge");
  const Eigen::VectorXd clipped = solver.eigenvalues().cwiseMax(0.0);
  const Eigen::MatrixXd& Q = solver.eigenvectors();
  Eigen::MatrixXd out = Q * clipped.asDiagonal() * Q.transpose();
  return 0.5 * (out + out.transpose());
}

namespace {

using lift::SymmetricForm;

// The equality map M -> (<B_i, M>)_i and its adjoint on dense symmetric matrices.
class ConstraintMap {
 public:
  ConstraintMap(const lift::ConicProgram& program, const Eigen::VectorXd& s)
      : dim_(program.dimension()), s_(s) {
    // Rows are rescaled to unit Frobenius norm; the feasible set is unchanged.
    b_.resize(static_cast<int>(program.equalities.size()));
    for (std::size_t i = 0; i < program.equalities.size(); ++i) {
      auto entries = program.equalities[i].form.entries();
      for (auto& e : entries) e.value *= s_(e.row) * s_(e.col);
      double norm2 = 0.0;
      for (const auto& e : entries) norm2 += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
      const double scale = norm2 > 0.0 ? 1.0 / std::sqrt(norm2) : 1.0;
      for (auto& e : entries) e.value *= scale;
      rows_.push_back(std::move(entries));
      b_(static_cast<int>(i)) = program.equalities[i].rhs * scale;
    }
  }

  int size() const { return static_cast<int>(rows_.size()); }
  const Eigen::VectorXd& rhs() const { return b_; }

  Eigen::VectorXd apply(const Eigen::MatrixXd& M) const {
    Eigen::VectorXd out(size());
    for (int i = 0; i < size(); ++i) {
      double total = 0.0;
      for (const auto& e : rows_[i]) total += (e.row == e.col ? 1.0 : 2.0) * e.value * M(e.row, e.col);
      out(i) = total;
    }
    return out;
  }

  // M += sum_i w_i B_i with B_i stored as full symmetric matrices.
  void add_adjoint(const Eigen::VectorXd& w, Eigen::MatrixXd& M) const {
    for (int i = 0; i < size(); ++i) {
      if (w(i) == 0.0) continue;
      for (const auto& e : rows_[i]) {
        M(e.row, e.col) += w(i) * e.value;
        if (e.row != e.col) M(e.col, e.row) += w(i) * e.value;
      }
    }
  }

  // G_ij = <B_i, B_j>_F.
  Eigen::MatrixXd gram() const {
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(size(), size());
    for (int i = 0; i < size(); ++i) {
      for (int j = i; j < size(); ++j) {
        double total = 0.0;
        auto a = rows_[i].begin();
        auto b = rows_[j].begin();
        while (a != rows_[i].end() && b != rows_[j].end()) {
          if (a->row < b->row || (a->row == b->row && a->col < b->col)) {
            ++a;
          } else if (b->row < a->row || (b->row == a->row && b->col < a->col)) {
            ++b;
          } else {
            total += (a->row == a->col ? 1.0 : 2.0) * a->value * b->value;
            ++a;
            ++b;
          }
        }
        G(i, j) = G(j, i) = total;
      }
    }
    return G;
  }

  Eigen::MatrixXd dense_form(const SymmetricForm& form) const {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim_, dim_);
    for (const auto& e : form.entries()) {
      M(e.row, e.col) = e.value * s_(e.row) * s_(e.col);
      M(e.col, e.row) = M(e.row, e.col);
    }
    return M;
  }

 private:
  int dim_;
  Eigen::VectorXd s_;
  std::vector<std::vector<SymmetricForm::Entry>> rows_;
  Eigen::VectorXd b_;
};

bool has_corner(const lift::ConicProgram& program) {
  for (const auto& e : program.equalities) {
    const auto entries = e.form.entries();
    if (entries.size() == 1 && entries[0].row == 0 && entries[0].col == 0) return true;
  }
  return false;
}

// Orthonormal basis of the common null space of the exposing rows.
Eigen::MatrixXd face_basis(const Eigen::MatrixXd& exposing, int dim) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(exposing, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = 1e-12 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0) * dim;
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(dim - rank);
}

}  // namespace

DnnResult solve_dnn(const lift::ConicProgram& program, const DnnSettings& settings) {
  settings.validate();
  if (!has_corner(program)) throw InvalidArgument("conic program lacks a corner equality");
  const int D = program.dimension();
  // Work on Mt = S^-1 M S^-1; the congruence preserves both cones.
  Eigen::VectorXd s = Eigen::VectorXd::Ones(D);
  if (settings.rescale && program.scale.size() > 0) {
    if (program.scale.size() != D || !(program.scale.array() > 0.0).all()) {
      throw InvalidArgument("program scale must hold 1+N positive entries");
    }
    s = program.scale;
  }
  const ConstraintMap A(program, s);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram(A.gram());
  if (gram.info() != Eigen::Success) throw NumericFailure("constraint Gram factorization failed");
  const Eigen::VectorXd& gvals = gram.eigenvalues();
  const double gcut = 1e-10 * std::max(1.0, gvals.cwiseAbs().maxCoeff());
  Eigen::VectorXd ginv(gvals.size());
  for (int i = 0; i < gvals.size(); ++i) ginv(i) = gvals(i) > gcut ? 1.0 / gvals(i) : 0.0;
  const Eigen::MatrixXd& Qg = gram.eigenvectors();
  auto gram_solve = [&](const Eigen::VectorXd& r) -> Eigen::VectorXd {
    return Qg * ginv.asDiagonal() * (Qg.transpose() * r);
  };

  DnnResult result{0.0, lift::LiftedMatrix(program.layout, Eigen::MatrixXd::Zero(D, D)),
                   0.0, 0.0, 0, DnnStatus::kMaxIter, settings.rho};

  // b must lie in the range of the constraint map.
  {
    const Eigen::VectorXd coords = Qg.transpose() * A.rhs();
    double outside = 0.0;
    for (int i = 0; i < coords.size(); ++i) {
      if (ginv(i) == 0.0) outside = std::max(outside, std::abs(coords(i)));
    }
    if (outside > 1e-8 * (1.0 + A.rhs().norm())) {
      result.status = DnnStatus::kInfeasibleDetected;
      result.bound = std::numeric_limits<double>::infinity();
      return result;
    }
  }

  auto project_affine = [&](Eigen::MatrixXd& M) {
    const Eigen::VectorXd w = gram_solve(A.apply(M) - A.rhs());
    A.add_adjoint(-w, M);
  };

  Eigen::MatrixXd V;
  const bool use_face = settings.facial_reduction && program.exposing.rows() > 0;
  if (use_face) {
    if (program.exposing.cols() != D) throw InvalidArgument("exposing rows have the wrong length");
    V = face_basis(program.exposing * s.asDiagonal(), D);
  }
  auto project_cone = [&](const Eigen::MatrixXd& M) -> Eigen::MatrixXd {
    if (!use_face) return project_psd(M);
    if (V.cols() == 0) return Eigen::MatrixXd::Zero(D, D);
    const Eigen::MatrixXd R = project_psd(V.transpose() * M * V);
    Eigen::MatrixXd out = V * R * V.transpose();
    return 0.5 * (out + out.transpose());
  };

  Eigen::MatrixXd C = A.dense_form(program.objective);
  const double cscale = C.size() > 0 && C.cwiseAbs().maxCoeff() > 0.0 ? C.cwiseAbs().maxCoeff() : 1.0;
  C /= cscale;
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(D, D);
  if (settings.seed != 0) {
    std::mt19937_64 rng(settings.seed);
    std::uniform_real_distribution<double> unit(0.0, 1e-3);
    for (int c = 0; c < D; ++c) {
      for (int r = 0; r <= c; ++r) Y(r, c) = Y(c, r) = unit(rng);
    }
  }
  Eigen::MatrixXd Z = Y;
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(D, D);
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(D, D);
  Eigen::MatrixXd X(D, D);
  const Eigen::MatrixXd sst = s * s.transpose();
  const Eigen::MatrixXd inv_sst = sst.cwiseInverse();
  double rho = settings.rho;
  const double alpha = settings.relaxation;

  for (int it = 1; it <= settings.max_iter; ++it) {
    X = 0.5 * (Y - U + Z - W) - C / (2.0 * rho);
    project_affine(X);

    const Eigen::MatrixXd XY = alpha * X + (1.0 - alpha) * Y;
    const Eigen::MatrixXd XZ = alpha * X + (1.0 - alpha) * Z;
    const Eigen::MatrixXd Ynew = project_cone(XY + U);
    const Eigen::MatrixXd Znew = (XZ + W).cwiseMax(0.0);
    U += XY - Ynew;
    W += XZ - Znew;

    // Residuals in the units of the original problem: matrix entries for the
    // primal side, objective units for the dual side.
    const double primal = std::max((sst.array() * (X - Ynew).array()).matrix().norm(),
                                   (sst.array() * (X - Znew).array()).matrix().norm());
    const double dual = cscale * rho *
                        std::max((inv_sst.array() * (Ynew - Y).array()).matrix().norm(),
                                 (inv_sst.array() * (Znew - Z).array()).matrix().norm());
    const double dY = (Ynew - Y).norm();
    const double dZ = (Znew - Z).norm();
    Y = Ynew;
    Z = Znew;
    result.iterations = it;
    result.primal_residual = primal;
    result.dual_residual = dual;
    if (primal <= settings.tol_primal && dual <= settings.tol_dual) {
      result.status = DnnStatus::kConverged;
      break;
    }
    if (it % settings.adapt_interval == 0) {
      // Balancing works on the scaled iterates the method actually sees.
      const double sp = std::max((X - Y).norm(), (X - Z).norm());
      const double sd = rho * std::max(dY, dZ);
      if (sp > settings.adapt_ratio * sd) {
        rho *= settings.adapt_factor;
        U /= settings.adapt_factor;
        W /= settings.adapt_factor;
      } else if (sd > settings.adapt_ratio * sp) {
        rho /= settings.adapt_factor;
        U *= settings.adapt_factor;
        W *= settings.adapt_factor;
      }
    }
  }
  result.rho = rho;
  result.bound = cscale * (C.array() * X.array()).sum();
  result.solution = lift::LiftedMatrix(program.layout, s.asDiagonal() * X * s.asDiagonal());
  return result;
}

SolutionReport inspect_solution(const lift::ConicProgram& program, const DnnResult& result) {
  const Eigen::MatrixXd& M = result.solution.matrix();
  SolutionReport report;
  for (const auto& e : program.equalities) {
    report.max_equality_residual =
        std::max(report.max_equality_residual, std::abs(e.form.evaluate(M) - e.rhs));
  }
  report.min_entry = M.minCoeff();
  report.min_eigenvalue = lift::min_eigenvalue(M);
  return report;
}

std::string result_to_json(const DnnResult& result, int indent) {
  nlohmann::json doc;
  doc["bound"] = result.bound;
  doc["status"] = to_string(result.status);
  doc["iters"] = result.iterations;
  doc["primal_res"] = result.primal_residual;
  doc["dual_res"] = result.dual_residual;
  return doc.dump(indent);
}

std::string matrix_to_csv(const Eigen::MatrixXd& M) {
  std::ostringstream os;
  os.precision(17);
  for (int r = 0; r < M.rows(); ++r) {
    for (int c = 0; c < M.cols(); ++c) {
      if (c) os << ',';
      os << M(r, c);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace domp::dnn
