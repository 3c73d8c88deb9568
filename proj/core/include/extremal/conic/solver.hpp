#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "extremal/conic/program.hpp"

namespace extremal::conic {

enum class SolveStatus { Optimal, MaxIterations, NumericalFailure };

std::string_view to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::NumericalFailure;
  double primal_value = 0.0;  // <C, X>
  double dual_value = 0.0;    // b^T y
  /// X per block; Nonneg blocks are column vectors.
  std::vector<Eigen::MatrixXd> primal_solution;
  /// sum_j y_j A_j - C per block, recomputed from y.
  std::vector<Eigen::MatrixXd> dual_solution;
  Eigen::VectorXd y;
  int iterations = 0;
  /// |b^T y - <C, X>| / (1 + |<C, X>| + |b^T y|).
  double final_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
};

/// Primal-dual predictor-corrector interior-point method with
/// Nesterov-Todd scaling, started from an infeasible interior point.
/// tolerance bounds the relative gap and the relative primal and dual
/// residuals.
SolveReport solve(const ConicProgram& program, double tolerance = 1e-8, int max_iterations = 100);

struct KktResiduals {
  double primal_residual = 0.0;      // max_j |<A_j, X> - b_j|
  double primal_cone_residual = 0.0; // max(0, -min eigenvalue / entry of X)
  double dual_cone_residual = 0.0;   // same for sum_j y_j A_j - C
  double gap = 0.0;                  // b^T y - <C, X>
  double relative_gap = 0.0;
};

KktResiduals check_kkt(const ConicProgram& program, const SolveReport& report);

/// Smallest eigenvalue (PSD) or entry (Nonneg) of a block value.
double cone_margin(ConeKind kind, const Eigen::MatrixXd& value);

}  // namespace extremal::conic
