#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "extremal/rational.hpp"

namespace extremal::verify {

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  static RationalMatrix identity(int n);
  /// Exact binary value of every entry.
  static RationalMatrix from_double(const Eigen::MatrixXd& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  Eigen::MatrixXd to_double() const;
  RationalMatrix transpose() const;
  bool is_symmetric() const;
  RationalVector row(int i) const;
  RationalVector col(int j) const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalVector operator*(const RationalMatrix& a, const RationalVector& x);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

Rational dot(const RationalVector& a, const RationalVector& b);

/// <A, B> = sum_ij A_ij B_ij.
Rational frobenius(const RationalMatrix& a, const RationalMatrix& b);

/// P^T A P = L D L^T with unit lower L; pivots[k] is the original index
/// eliminated at step k.  Zero pivots are allowed only when the remaining
/// column vanishes.
struct LdltWitness {
  std::vector<int> pivots;
  RationalVector diagonal;
};

struct PsdCheck {
  bool psd = false;
  LdltWitness witness;
  /// When not PSD: x with x^T A x < 0.
  RationalVector violation;
};

/// Exact LDL^T with greatest-diagonal pivoting.
PsdCheck check_psd(const RationalMatrix& a);

/// Replays the factorization in the stored pivot order; true iff every pivot
/// is nonnegative, zero pivots have vanishing columns, and the diagonal equals
/// the stored one.
bool verify_ldlt(const RationalMatrix& a, const LdltWitness& witness);

/// Basis of {x : A x = 0} as columns, from the reduced row echelon form.
RationalMatrix null_space(const RationalMatrix& a);

/// Some solution of A x = b, or nullopt when inconsistent.
std::optional<RationalVector> solve_linear(const RationalMatrix& a, const RationalVector& b);

int rank(const RationalMatrix& a);

}  // namespace extremal::verify
