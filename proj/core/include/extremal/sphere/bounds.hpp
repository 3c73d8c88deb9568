#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "extremal/conic/solver.hpp"
#include "extremal/rational.hpp"

namespace extremal::sphere {

enum class Problem { KissingLP, KissingThreePoint, AvoidOrthogonalSphere, AvoidDistancePlane };

std::string to_string(Problem problem);

struct SolverSummary {
  conic::SolveStatus status = conic::SolveStatus::Optimal;
  int iterations = 0;
  double gap = 0.0;
  int solves = 0;  // number of solver runs, including refinement rounds
};

struct BoundResult {
  Problem problem = Problem::KissingLP;
  int n = 0;
  std::optional<int> d;  // absent for the plane bound
  double value = 0.0;

  /// KissingLP: f_1..f_d.  AvoidOrthogonalSphere: f_0..f_d (as doubles).
  std::vector<double> coefficients;
  /// KissingThreePoint: F_0..F_d (normalized kernel).
  std::vector<Eigen::MatrixXd> matrices;
  /// AvoidOrthogonalSphere: exact optimum; f as rationals and the dual pair.
  std::optional<Rational> exact_value;
  std::vector<Rational> exact_coefficients;
  std::vector<Rational> exact_dual;
  /// AvoidDistancePlane: location and value of min Omega_n.
  double minimizer = 0.0;
  double omega_min = 0.0;

  /// Sample points of the semi-infinite constraints (t values for the LP,
  /// u values of the diagonal family for the three-point program).
  std::vector<double> grid;
  std::string grid_description;
  double margin = 0.0;
  SolverSummary solver;
};

/// Objective recomputed from the stored solution.
double recompute_value(const BoundResult& result);

struct LpOptions {
  int grid_size = 200;
  double margin = 0.0;       // constraint tightening epsilon
  int refinement_rounds = 20; // exchange rounds adding local maxima to the grid
  double tolerance = 1e-10;
};

/// Delsarte-Goethals-Seidel bound: minimize 1 + sum f_k subject to f >= 0 and
/// 1 + sum_k f_k P_k^n(t) <= -margin on a Chebyshev grid of [-1, 1/2].
BoundResult kissing_lp(int n, int d, const LpOptions& options);
BoundResult kissing_lp(int n, int d, int grid_size);

/// Chebyshev-Lobatto points of [a, b], endpoints included.
std::vector<double> chebyshev_points(double a, double b, int count);

struct ThreePointOptions {
  int diagonal_points = 0;  // family A; 0 means 2d + 50
  int uv_points = 40;       // family B tensor grid per axis
  int t_points = 15;        // admissible t values per (u, v)
  double margin = 0.0;
  int refinement_rounds = 3;
  double tolerance = 1e-8;
};

/// Three-point bound with PSD blocks F_0 (size d+1), ..., F_d (size 1):
/// minimize 1 + <F_0, S_0(1,1,1)> subject to
///   sum_k <F_k, S_k(u,u,1)> <= -1/3 - margin on the diagonal grid,
///   sum_k <F_k, S_k(u,v,t)> <= -margin on samples of the admissible region.
BoundResult kissing_three_point(int n, int d, const ThreePointOptions& options = {});

/// Exact LP: maximize f_0 subject to f >= 0, sum f_k = 1, sum f_k P_k^n(0) = 0.
BoundResult avoid_orthogonal(int n, int d);

/// |Omega_min| / (1 + |Omega_min|) with Omega_min = min_{t >= 0} Omega_n(t).
BoundResult avoid_distance_plane(int n, double search_horizon = 50.0);

/// Known kissing numbers / lower bounds for n = 3..8.
int kissing_lower_bound(int n);

}  // namespace extremal::sphere
