#pragma once

#include <array>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "domp/instance.hpp"
#include "domp/phi_layout.hpp"

namespace domp::lift {

using qform::Block;
using qform::PhiLayout;
using qform::PhiVector;

/// The 28 sub-blocks of the upper triangle of Phi = phi phi^T, row by row.
enum class NamedBlock {
  kQ, kV, kPy, kPW, kPxi, kPeta, kPzeta,
  kU, kXy, kXW, kXxi, kXeta, kXzeta,
  kSigma, kyW, kyxi, kyeta, kyzeta,
  kOmega, kWxi, kWeta, kWzeta,
  kPsi, kxieta, kxizeta,
  kPi, ketazeta,
  kZ,
};

struct NamedBlockInfo {
  NamedBlock id;
  std::string_view name;
  Block row;
  Block col;
};

/// Table of all 28 named blocks in declaration order.
const std::array<NamedBlockInfo, 28>& named_blocks();
const NamedBlockInfo& info(NamedBlock block);

/// Symmetric (1+N) x (1+N) matrix [[1, phi^T], [phi, Phi]]. Row/column 0 is
/// the border; Phi occupies rows/columns 1..N.
class LiftedMatrix {
 public:
  /// Symmetrizes the input as (M + M^T) / 2. Throws InvalidArgument on a
  /// size mismatch.
  LiftedMatrix(PhiLayout layout, Eigen::MatrixXd matrix);

  const PhiLayout& layout() const { return layout_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  int dimension() const { return static_cast<int>(matrix_.rows()); }

  double corner() const { return matrix_(0, 0); }
  /// Border entries M[0, 1..N].
  Eigen::VectorXd border() const;
  /// Phi entry for phi indices a, b.
  double phi(int a, int b) const { return matrix_(a + 1, b + 1); }
  /// Lower-right N x N block.
  Eigen::MatrixXd inner() const;
  /// Copy of a named sub-block of Phi.
  Eigen::MatrixXd block(NamedBlock block) const;

 private:
  PhiLayout layout_;
  Eigen::MatrixXd matrix_;
};

/// F(j*n+k, j*n+l) = lambda_k C_jl, zero across different clients.
Eigen::SparseMatrix<double> build_F(const Instance& instance);
/// N x N symmetric matrix with [[D, F], [F^T, H]] in the (P, X) corner.
Eigen::SparseMatrix<double> build_G(const Instance& instance);
/// Zero except lambda in the W block.
Eigen::VectorXd build_g(const Instance& instance);

/// Indicator of the first row of P; alpha^T phi = 1 on every feasible phi.
Eigen::VectorXd alpha_vector(const PhiLayout& layout);

/// Rank-one lift [[1, phi^T], [phi, phi phi^T]]. Throws InvalidArgument on a
/// negative entry.
LiftedMatrix lift(const PhiVector& phi);

/// Convex combination of lifts with its nonnegative rank-one decomposition.
struct CertifiedLift {
  LiftedMatrix lifted;
  std::vector<double> weights;
  std::vector<PhiVector> points;
};

/// sum_r w_r lift(phi_r). Throws InvalidArgument when weights are negative,
/// do not sum to 1 within 1e-12, or sizes disagree.
CertifiedLift convex_hull_lift(const std::vector<PhiVector>& points,
                               const std::vector<double>& weights);

/// Phi * alpha, i.e. the contraction of every row of Phi against the first
/// row of P. Equals phi on exact lifts.
PhiVector recover_phi(const LiftedMatrix& lifted);

/// <F, V>.
double inner_FV(const Instance& instance, const LiftedMatrix& lifted);
/// 1/2 <G, Phi>.
double half_G_inner(const Instance& instance, const LiftedMatrix& lifted);

/// mu <F, V> + (1 - mu) sum_k lambda_k sum_l rho_{1lk} + 1/2 <D, Q> + 1/2 <H, U>,
/// where rho_{1lk} = Phi[P_1l, W_k]. Throws InvalidArgument for mu outside [0, 1].
double objective_mu(const Instance& instance, const LiftedMatrix& lifted, double mu);

}  // namespace domp::lift
