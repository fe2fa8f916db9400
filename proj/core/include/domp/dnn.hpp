#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "domp/conic_program.hpp"
#include "domp/lift.hpp"

namespace domp::dnn {

struct DnnSettings {
  double rho = 1.0;
  double tol_primal = 1e-7;
  double tol_dual = 1e-7;
  int max_iter = 50000;
  std::uint64_t seed = 0;  ///< 0: zero start; otherwise a small random nonnegative start
  double relaxation = 1.6;
  int adapt_interval = 100;
  double adapt_factor = 2.0;
  double adapt_ratio = 10.0;
  /// Restrict the PSD block to the face exposed by the program, if it
  /// provides one.
  bool facial_reduction = true;
  /// Iterate on diag(s)^-1 M diag(s)^-1 using the program's magnitude scale,
  /// with the objective normalized to unit max entry. Residuals are still
  /// measured in the original units.
  bool rescale = true;

  /// Throws InvalidArgument unless tolerances and rho are positive,
  /// max_iter >= 1 and relaxation lies in (0, 2).
  void validate() const;
};

enum class DnnStatus { kConverged, kMaxIter, kInfeasibleDetected };
std::string to_string(DnnStatus status);

struct DnnResult {
  double bound = 0.0;
  lift::LiftedMatrix solution;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  DnnStatus status = DnnStatus::kMaxIter;
  double rho = 0.0;  ///< final penalty after adaptation
};

/// Spectral projection onto the PSD cone (negative eigenvalues clipped).
/// Throws NumericFailure if the eigensolver fails.
Eigen::MatrixXd project_psd(const Eigen::MatrixXd& M);

/// ADMM on  min <C, X>  s.t.  <B_i, X> = b_i,  X = Y (PSD),  X = Z (>= 0).
/// The bound is <C, X> at the affine-feasible iterate, which is also the
/// returned solution. Requires a "corner" equality. Throws InvalidArgument on a
/// missing corner row and NumericFailure if the constraint Gram matrix cannot
/// be factored.
DnnResult solve_dnn(const lift::ConicProgram& program, const DnnSettings& settings = {});

/// Tighter residuals of a returned solution measured in the original data.
struct SolutionReport {
  double max_equality_residual = 0.0;
  double min_entry = 0.0;
  double min_eigenvalue = 0.0;
};
SolutionReport inspect_solution(const lift::ConicProgram& program, const DnnResult& result);

/// {"bound":..,"status":..,"iters":..,"primal_res":..,"dual_res":..}
std::string result_to_json(const DnnResult& result, int indent = -1);
/// Dense row-major CSV, one matrix row per line.
std::string matrix_to_csv(const Eigen::MatrixXd& M);

}  // namespace domp::dnn
