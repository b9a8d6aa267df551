#pragma once

#include <optional>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace navsim::qp {

/// Convex quadratic program
///   minimize   0.5 x'Px + q'x + objective_offset
///   subject to lower <= Ax <= upper
/// with P symmetric positive semidefinite (both triangles stored) and
/// per-row bounds that may be -inf/+inf. Equality rows use lower == upper.
struct Problem {
  Eigen::SparseMatrix<double> p;
  Eigen::VectorXd q;
  Eigen::SparseMatrix<double> a;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  double objective_offset = 0.0;

  Eigen::Index num_vars() const { return q.size(); }
  Eigen::Index num_constraints() const { return lower.size(); }

  /// Checks dimensional consistency, finiteness of P and q, and
  /// lower <= upper per row. Throws std::invalid_argument on violation.
  void validate() const;
};

enum class Status { solved, max_iterations, primal_infeasible };

const char* status_name(Status s);

struct Settings {
  double rho = 0.1;      ///< initial constraint penalty (rebalanced as needed)
  double sigma = 1e-6;   ///< proximal regularization on x
  double alpha = 1.6;    ///< over-relaxation
  double eps = 1e-6;     ///< absolute primal and dual tolerance
  double eps_infeasible = 1e-4;  ///< infeasibility certificate tolerance
  int max_iterations = 4000;
  bool polish = true;    ///< refine via an equality solve on the active set
};

struct Solution {
  Status status = Status::max_iterations;
  Eigen::VectorXd x;  ///< primal iterate
  Eigen::VectorXd z;  ///< projected constraint values (in [lower, upper])
  Eigen::VectorXd y;  ///< dual multipliers of the box constraints
  int iterations = 0;
  double objective = 0.0;        ///< 0.5 x'Px + q'x + objective_offset
  double primal_residual = 0.0;  ///< max box violation of Ax
  double dual_residual = 0.0;    ///< ||Px + q + A'y||_inf
  bool polished = false;
};

struct WarmStart {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

/// Solves the QP by the operator-splitting (ADMM) scheme: the reduced KKT
/// system (P + sigma I + rho A'A) is factored up front, then x/z/y iterate
/// with over-relaxation until both residuals drop below eps. The penalty rho
/// is rebalanced (with a refactorization) when the normalized primal and
/// dual residuals drift far apart. A primal infeasibility certificate built
/// from the dual deltas terminates early on inconsistent constraints.
/// Hitting max_iterations is reported as a status, not an error. With an
/// exact warm start the first iteration is a fixed point, so termination
/// takes a handful of iterations.
Solution solve(const Problem& prob, const Settings& settings = {},
               const std::optional<WarmStart>& warm = std::nullopt);

}  // namespace navsim::qp
