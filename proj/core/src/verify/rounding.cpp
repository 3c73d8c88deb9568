#include "extremal/verify/rounding.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "extremal/verify/errors.hpp"

namespace extremal::verify {

namespace {

// Row-reduce the columns of k (n x r, orthonormal) so each vector has a unit
// entry on its own pivot coordinate.
Eigen::MatrixXd echelon_columns(Eigen::MatrixXd k) {
  Eigen::MatrixXd rows = k.transpose();
  const int r = static_cast<int>(rows.rows()), n = static_cast<int>(rows.cols());
  int row = 0;
  for (int c = 0; c < n && row < r; ++c) {
    Eigen::Index p;
    const double best = rows.col(c).tail(r - row).cwiseAbs().maxCoeff(&p);
    if (best < 1e-9) continue;
    p += row;
    rows.row(row).swap(rows.row(p));
    rows.row(row) /= rows(row, c);
    for (int i = 0; i < r; ++i)
      if (i != row) rows.row(i) -= rows(i, c) * rows.row(row);
    ++row;
  }
  return rows.transpose();
}

RationalMatrix gram_schmidt(const RationalMatrix& v) {
  RationalMatrix out(v.rows(), 0);
  std::vector<RationalVector> done;
  for (int j = 0; j < v.cols(); ++j) {
    RationalVector x = v.col(j);
    for (const auto& q : done) {
      const Rational c = dot(x, q) / dot(q, q);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * q[i];
    }
    bool zero = true;
    for (const auto& e : x) zero = zero && e == 0;
    if (!zero) done.push_back(std::move(x));
  }
  out = RationalMatrix(v.rows(), static_cast<int>(done.size()));
  for (int j = 0; j < out.cols(); ++j)
    for (int i = 0; i < out.rows(); ++i) out(i, j) = done[j][i];
  return out;
}

double residual(const Eigen::MatrixXd& x, const RationalMatrix& basis) {
  const Eigen::MatrixXd b = basis.to_double();
  double worst = 0.0;
  for (int j = 0; j < b.cols(); ++j) worst = std::max(worst, (x * b.col(j)).norm() / b.col(j).norm());
  return worst;
}

}  // namespace

RationalMatrix detect_kernel(const Eigen::MatrixXd& x, double tolerance, const Integer& max_denominator) {
  if (x.rows() != x.cols()) throw std::invalid_argument("detect_kernel: matrix must be square");
  const int n = static_cast<int>(x.rows());
  if (n == 0) return RationalMatrix(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (x + x.transpose()));
  int dim = 0;
  while (dim < n && eig.eigenvalues()(dim) < tolerance) ++dim;
  if (dim == 0) return RationalMatrix(n, 0);
  const Eigen::MatrixXd k = echelon_columns(eig.eigenvectors().leftCols(dim));

  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  RationalMatrix best;
  for (Integer cap = 10;; cap *= 10) {
    if (cap > max_denominator) cap = max_denominator;
    RationalMatrix raw(n, dim);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < dim; ++j) raw(i, j) = rationalize(k(i, j), cap);
    best = gram_schmidt(raw);
    if (best.cols() == dim && residual(x, best) <= std::max(tolerance, 1e-12) * scale) return best;
    if (cap == max_denominator) return best;
  }
}

std::vector<Eigen::MatrixXd> BackMap::apply(const std::vector<Eigen::MatrixXd>& reduced) const {
  std::vector<Eigen::MatrixXd> out;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const int s = original_sizes[k];
    if (reduced_index[k] < 0) {
      out.push_back(Eigen::MatrixXd::Zero(s, s));
    } else if (basis[k].rows() == 0) {
      out.push_back(reduced[reduced_index[k]]);
    } else {
      const Eigen::MatrixXd v = basis[k].to_double();
      out.push_back(v * reduced[reduced_index[k]] * v.transpose());
    }
  }
  return out;
}

std::vector<RationalMatrix> BackMap::apply_exact(const std::vector<RationalMatrix>& reduced) const {
  std::vector<RationalMatrix> out;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const int s = original_sizes[k];
    if (reduced_index[k] < 0)
      out.emplace_back(s, s);
    else if (basis[k].rows() == 0)
      out.push_back(reduced[reduced_index[k]]);
    else
      out.push_back(basis[k] * reduced[reduced_index[k]] * basis[k].transpose());
  }
  return out;
}

FacialReduction facial_reduce(const conic::ConicProgram& program, const std::vector<RationalMatrix>& kernels) {
  using conic::ConeKind;
  const int nb = program.num_blocks();
  if (static_cast<int>(kernels.size()) != nb) throw std::invalid_argument("facial_reduce: one kernel per block required");

  BackMap map;
  std::vector<conic::ConeBlock> blocks;
  std::vector<Eigen::MatrixXd> v_double(nb);
  for (int k = 0; k < nb; ++k) {
    const auto& blk = program.block(k);
    map.original_sizes.push_back(blk.size);
    if (blk.kind == ConeKind::Nonneg || kernels[k].cols() == 0) {
      if (blk.kind == ConeKind::Psd && kernels[k].rows() != 0 && kernels[k].rows() != blk.size)
        throw std::invalid_argument("facial_reduce: kernel dimension does not match block");
      map.basis.emplace_back();
      map.reduced_index.push_back(static_cast<int>(blocks.size()));
      blocks.push_back(blk);
      continue;
    }
    if (kernels[k].rows() != blk.size) throw std::invalid_argument("facial_reduce: kernel dimension does not match block");
    RationalMatrix v = null_space(kernels[k].transpose());
    if (v.cols() == 0) {
      map.basis.push_back(std::move(v));
      map.reduced_index.push_back(-1);
      continue;
    }
    v_double[k] = v.to_double();
    map.reduced_index.push_back(static_cast<int>(blocks.size()));
    blocks.push_back({ConeKind::Psd, v.cols()});
    map.basis.push_back(std::move(v));
  }
  if (blocks.empty()) throw std::invalid_argument("facial_reduce: every block collapsed");

  conic::ConicProgram reduced(blocks, program.num_constraints());
  auto copy_block = [&](int k, int constraint) {
    const int r = map.reduced_index[k];
    if (r < 0) return;
    const auto& blk = program.block(k);
    if (blk.kind == ConeKind::Nonneg) {
      for (int i = 0; i < blk.size; ++i) {
        const double val = constraint < 0 ? program.nonneg_objective(k)(i) : program.nonneg_matrix(k)(i, constraint);
        if (val == 0.0) continue;
        if (constraint < 0)
          reduced.add_objective(r, i, val);
        else
          reduced.add_coefficient(constraint, r, i, val);
      }
      return;
    }
    const auto entries = program.psd_entries(k, constraint);
    if (entries.empty()) return;
    if (map.basis[k].rows() == 0) {
      for (const auto& e : entries) {
        if (constraint < 0)
          reduced.add_objective(r, e.row, e.col, e.value);
        else
          reduced.add_coefficient(constraint, r, e.row, e.col, e.value);
      }
      return;
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(blk.size, blk.size);
    for (const auto& e : entries) {
      a(e.row, e.col) += e.value;
      if (e.row != e.col) a(e.col, e.row) += e.value;
    }
    const Eigen::MatrixXd c = v_double[k].transpose() * a * v_double[k];
    for (int i = 0; i < c.rows(); ++i)
      for (int j = i; j < c.cols(); ++j) {
        if (c(i, j) == 0.0) continue;
        if (constraint < 0)
          reduced.add_objective(r, i, j, c(i, j));
        else
          reduced.add_coefficient(constraint, r, i, j, c(i, j));
      }
  };
  for (int k = 0; k < nb; ++k) {
    copy_block(k, -1);
    for (int j = 0; j < program.num_constraints(); ++j) copy_block(k, j);
  }
  for (int j = 0; j < program.num_constraints(); ++j) reduced.set_rhs(j, program.rhs()(j));
  return {std::move(reduced), std::move(map)};
}

RationalVector round_least_squares(const Eigen::VectorXd& x_hat, const RationalMatrix& a, const RationalVector& b,
                                   const Integer& max_denominator) {
  if (a.cols() != x_hat.size() || a.rows() != static_cast<int>(b.size()))
    throw std::invalid_argument("round_least_squares: dimension mismatch");
  RationalVector x(x_hat.size());
  for (Eigen::Index i = 0; i < x_hat.size(); ++i) x[i] = rationalize(x_hat(i), max_denominator);
  if (a.rows() == 0) return x;
  if (!solve_linear(a, b)) throw CertificationError(FailureKind::InconsistentSystem, "active constraint system has no solution");

  // x <- x - A^T w with (A A^T) w = A x - b.
  RationalVector r = a * x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  const auto w = solve_linear(a * a.transpose(), r);
  if (!w) throw CertificationError(FailureKind::InconsistentSystem, "normal equations are inconsistent");
  const RationalVector correction = a.transpose() * *w;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= correction[i];
  return x;
}

}  // namespace extremal::verify
