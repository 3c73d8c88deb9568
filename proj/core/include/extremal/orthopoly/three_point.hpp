#pragma once

#include <vector>

#include <Eigen/Dense>

#include "extremal/orthopoly/tripolynomial.hpp"

namespace extremal::orthopoly {

/// Q_k^{n-1}(u, v, t) = ((1-u^2)(1-v^2))^{k/2} P_k^{n-1}((t - uv) / sqrt((1-u^2)(1-v^2))).
TriPolynomial q_poly(int n, int k);

/// Square matrix of exact trivariate polynomials, each carrying a floating
/// scale.  The represented entry is scale(i, j) * exact(i, j).
class PolyMatrix {
 public:
  PolyMatrix() = default;
  explicit PolyMatrix(int size);

  int size() const { return size_; }
  const TriPolynomial& exact(int i, int j) const { return entries_[index(i, j)]; }
  TriPolynomial& exact(int i, int j) { return entries_[index(i, j)]; }
  double scale(int i, int j) const { return scales_(i, j); }
  void set_scale(int i, int j, double s) { scales_(i, j) = s; }
  const Eigen::MatrixXd& scales() const { return scales_; }

  Eigen::MatrixXd evaluate(double u, double v, double t) const;
  bool is_symmetric() const;

 private:
  std::size_t index(int i, int j) const;

  int size_ = 0;
  std::vector<TriPolynomial> entries_;
  Eigen::MatrixXd scales_;
};

/// lambda_{i,j} for Y_k^n.
double three_point_lambda(int n, int k, int i, int j);

/// omega_n / omega_{n-1} * omega_{n+2k-1} / omega_{n+2k}.
double three_point_area_ratio(int n, int k);

PolyMatrix y_matrix(int n, int k, int d);
PolyMatrix s_matrix(int n, int k, int d);

/// Numeric evaluation of S_k^n(u, v, t) for all k <= d at once.
class KernelEvaluator {
 public:
  /// With normalized = false the lambda factors are dropped.
  KernelEvaluator(int n, int d, bool normalized = true);

  int dimension() const { return n_; }
  int degree() const { return d_; }
  int block_size(int k) const { return d_ - k + 1; }

  /// Q_0^{n-1}, ..., Q_d^{n-1} at (u, v, t).
  std::vector<double> q_values(double u, double v, double t) const;

  /// S_k(u, v, t) for k = 0..d.
  std::vector<Eigen::MatrixXd> evaluate(double u, double v, double t) const;

 private:
  int n_;
  int d_;
  bool normalized_;
  std::vector<Eigen::MatrixXd> lambda_;
};

}  // namespace extremal::orthopoly
