#pragma once

#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "extremal/finite/graph.hpp"

namespace extremal::finite {

enum class ThetaVariant { Plain, Prime };

/// max <J, A> over PSD A with tr A = 1 and A_uv = 0 on edges; Prime also
/// requires A >= 0 entrywise.  Throws std::runtime_error if the solver fails.
double theta_finite(const Graph& g, ThetaVariant variant);

struct BqcInside {};
struct BqcViolated {
  /// <H, f f^T> >= 0 for every 0/1 vector f while <H, m> = value < 0.
  Eigen::MatrixXd h;
  double value;
};
using BqcResult = std::variant<BqcInside, BqcViolated>;

/// Membership of m in the cone spanned by f f^T, f in {0,1}^s, s <= 16.
BqcResult bqc_separate(const Eigen::MatrixXd& m, double tolerance = 1e-7);

/// min over nonzero 0/1 vectors f of <H, f f^T>.
double bqc_min_generator_value(const Eigen::MatrixXd& h);

struct BqcCut {
  VertexSet u;
  Eigen::MatrixXd h;  // indexed like u
};

/// theta' with <H, A[U]> >= 0 for each cut.  Throws std::invalid_argument on
/// a cut that is not valid for the Boolean-quadratic cone.
double theta_with_cuts(const Graph& g, const std::vector<BqcCut>& cuts);

/// b b^T - diag(b) for b = (1, 1, 1, -1, -1): (b.f)(b.f - 1) >= 0 on 0/1 vectors.
Eigen::MatrixXd pentagon_inequality();

}  // namespace extremal::finite
