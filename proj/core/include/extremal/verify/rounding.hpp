#pragma once

#include <vector>

#include <Eigen/Dense>

#include "extremal/conic/program.hpp"
#include "extremal/verify/exact_matrix.hpp"

namespace extremal::verify {

/// Rational basis (columns) of the numerical kernel of a symmetric matrix:
/// eigenvectors with eigenvalue below tolerance, brought to echelon form,
/// rationalized with denominators <= max_denominator and orthogonalized exactly.
/// Smaller denominators are tried first and kept when their residual is
/// within tolerance.
RationalMatrix detect_kernel(const Eigen::MatrixXd& x, double tolerance, const Integer& max_denominator = 1000000);

/// Per-block data for mapping a reduced solution back: X_k = V_k Z_k V_k^T.
/// Nonneg blocks and unreduced PSD blocks carry an empty V (identity map).
struct BackMap {
  std::vector<RationalMatrix> basis;
  std::vector<int> original_sizes;
  /// Index of the reduced block for each original block, or -1 when the
  /// block collapsed to zero.
  std::vector<int> reduced_index;

  std::vector<Eigen::MatrixXd> apply(const std::vector<Eigen::MatrixXd>& reduced) const;
  std::vector<RationalMatrix> apply_exact(const std::vector<RationalMatrix>& reduced) const;
};

struct FacialReduction {
  conic::ConicProgram program;
  BackMap back_map;
};

/// Restricts each PSD block X to {V Z V^T} where V spans the rational
/// orthogonal complement of the given kernel.  kernels[k] may have zero
/// columns; it is ignored for Nonneg blocks.
FacialReduction facial_reduce(const conic::ConicProgram& program, const std::vector<RationalMatrix>& kernels);

/// Rationalizes x_hat (denominators <= max_denominator) and projects it
/// exactly onto {x : A x = b} through the normal equations.  Throws
/// CertificationError(InconsistentSystem) if the system has no solution.
RationalVector round_least_squares(const Eigen::VectorXd& x_hat, const RationalMatrix& a, const RationalVector& b,
                                   const Integer& max_denominator);

}  // namespace extremal::verify
