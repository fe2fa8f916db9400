#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "domp/instance.hpp"
#include "domp/lift.hpp"

namespace domp::lift {

/// Linear functional M -> <B, M> on symmetric matrices. Only the upper
/// triangle of B is stored; off-diagonal coefficients count twice.
class SymmetricForm {
 public:
  struct Entry {
    int row;
    int col;
    double value;
  };

  /// Adds the term coef * M(r, c). For r != c this contributes coef / 2 to
  /// both B(r, c) and B(c, r).
  void add(int r, int c, double coef);
  /// Adds (a^T M a) for a sparse vector a given as (index, value) pairs.
  void add_square(const std::vector<std::pair<int, double>>& a, double scale = 1.0);

  double evaluate(const Eigen::MatrixXd& M) const;
  /// Upper-triangle entries sorted by (row, col), zeros dropped.
  std::vector<Entry> entries() const;
  bool empty() const { return entries().empty(); }

  /// Same coefficients up to |a - b| <= tol * (1 + |a|).
  bool approx_equal(const SymmetricForm& other, double tol = 1e-12) const;

 private:
  std::map<std::pair<int, int>, double> upper_;
};

struct Equality {
  SymmetricForm form;
  double rhs = 0.0;
  std::string label;
};

enum class ConeKind { kDnn, kExactLiftVerification };

struct ConicProgram {
  PhiLayout layout;
  SymmetricForm objective;
  std::vector<Equality> equalities;
  ConeKind cone = ConeKind::kDnn;
  /// Rows e (length 1+N) with M e = 0 on every feasible PSD matrix M; empty
  /// when the program does not expose a face.
  Eigen::MatrixXd exposing;
  /// Positive magnitudes for the 1+N rows/columns (corner first); solvers may
  /// work on diag(s)^-1 M diag(s)^-1. Empty means unit scale.
  Eigen::VectorXd scale;

  int dimension() const { return layout.size() + 1; }
};

/// Upper bounds on the entries of feasible phi (1 for the corner), used as
/// solver scaling: 1 for P, X, y; n-p+1 for zeta; max C for W and xi;
/// max C plus the largest row sum of C for eta.
Eigen::VectorXd magnitude_scale(const Instance& instance);

/// Family part of a row label ("square:assign[j=1]" -> "square:assign").
std::string equality_family(const std::string& label);

/// Corner, border rows A phi = b, squares diag(A Phi A^T) = b o b, sorted-cost
/// coupling and the two binarity contractions; objective 1/2 G on the Phi block.
/// The rows (-b_i, a_i) are recorded as exposing vectors.
ConicProgram build_cp0(const Instance& instance, ConeKind cone = ConeKind::kDnn);

/// One entry per family whose literal rows differ from the symbolic rows.
struct Discrepancy {
  std::string family;
  bool violated = false;        ///< literal rows fail on some witness lift
  bool replaced = false;        ///< symbolic rows used instead
  double max_violation = 0.0;   ///< over all witness lifts
  std::string first_violation;  ///< label of the first violated row, if any
};

struct ExplicitProgram {
  ConicProgram program;
  std::vector<Discrepancy> log;
  int witness_count = 0;
};

/// Row families written term by term on the Phi block. With corrected=true a
/// family violated by some witness lift is replaced by its symbolic version.
ExplicitProgram build_cp_explicit(const Instance& instance, bool corrected,
                                  ConeKind cone = ConeKind::kDnn);

/// Exact feasible points used to screen the explicit families: every feasible
/// point for n <= 4, otherwise one greedy point per open set (capped).
std::vector<PhiVector> witness_points(const Instance& instance);

struct FamilyResidual {
  std::string family;
  double residual = 0.0;
  int rows = 0;
};

struct LiftReport {
  std::vector<FamilyResidual> families;  ///< in first-appearance order
  double max_equality_residual = 0.0;
  double symmetry_residual = 0.0;
  double negativity = 0.0;  ///< max(0, -min entry)
  double min_eigenvalue = 0.0;
  bool pass = false;

  double family_residual(const std::string& family) const;
};

/// Evaluates every equality of the program on the lifted matrix. pass requires
/// equalities, symmetry and negativity within tol and min eigenvalue >= -eig_tol.
/// Throws InvalidArgument on a layout mismatch.
LiftReport check_lift_feasible(const ConicProgram& program, const LiftedMatrix& lifted,
                               double tol = 1e-9, double eig_tol = 1e-10);

/// Smallest eigenvalue, computed in extended precision.
double min_eigenvalue(const Eigen::MatrixXd& M);

std::string conic_program_to_json(const ConicProgram& program, int indent = -1);
std::string discrepancy_log_to_json(const std::vector<Discrepancy>& log, int indent = 2);

}  // namespace domp::lift
