#include "extremal/verify/exact_matrix.hpp"

#include <numeric>
#include <stdexcept>

#include "extremal/verify/errors.hpp"

namespace extremal::verify {

const char* to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::SignViolation: return "SignViolation";
    case FailureKind::BudgetExhausted: return "BudgetExhausted";
    case FailureKind::NotPsd: return "NotPsd";
    case FailureKind::InconsistentSystem: return "InconsistentSystem";
    case FailureKind::Mismatch: return "Mismatch";
    case FailureKind::Malformed: return "Malformed";
  }
  return "Unknown";
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_double(const Eigen::MatrixXd& m) {
  RationalMatrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j) out(i, j) = exact(m(i, j));
  return out;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).get_d();
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

RationalVector RationalMatrix::row(int i) const {
  return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
                        data_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_);
}

RationalVector RationalMatrix::col(int j) const {
  RationalVector c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("RationalMatrix: dimension mismatch");
  RationalMatrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0) c(i, j) += aik * b(k, j);
    }
  return c;
}

RationalVector operator*(const RationalMatrix& a, const RationalVector& x) {
  if (a.cols_ != static_cast<int>(x.size())) throw std::invalid_argument("RationalMatrix: dimension mismatch");
  RationalVector y(a.rows_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j)
      if (a(i, j) != 0 && x[j] != 0) y[i] += a(i, j) * x[j];
  return y;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("RationalMatrix: dimension mismatch");
  RationalMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("RationalMatrix: dimension mismatch");
  RationalMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
  return acc;
}

Rational frobenius(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("frobenius: dimension mismatch");
  Rational acc = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0 && b(i, j) != 0) acc += a(i, j) * b(i, j);
  return acc;
}

namespace {

// Outcome of one elimination run over a working copy s.
struct Elimination {
  bool ok = true;
  std::vector<int> pivots;
  RationalVector diagonal;
  RationalMatrix l;  // multipliers in original indexing: l(i, pivot) for eliminated pivots
  RationalVector violation;
};

// Vector x with x^T A x = z^T S z for z supported on the uneliminated indices.
RationalVector lift_violation(const Elimination& e, const RationalVector& z) {
  RationalVector x = z;
  for (int k = static_cast<int>(e.pivots.size()) - 1; k >= 0; --k) {
    const int p = e.pivots[k];
    Rational acc = 0;
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
      if (i != p && e.l(i, p) != 0) acc += e.l(i, p) * x[i];
    x[p] = -acc;
  }
  return x;
}

Elimination eliminate(const RationalMatrix& a, const std::vector<int>* order) {
  const int n = a.rows();
  RationalMatrix s = a;
  Elimination e;
  e.l = RationalMatrix(n, n);
  std::vector<bool> done(n, false);
  for (int step = 0; step < n; ++step) {
    int p = -1;
    if (order) {
      p = (*order)[step];
      if (p < 0 || p >= n || done[p]) {
        e.ok = false;
        return e;
      }
    } else {
      for (int i = 0; i < n; ++i)
        if (!done[i] && (p < 0 || s(i, i) > s(p, p))) p = i;
    }
    const Rational d = s(p, p);
    if (d < 0) {
      e.ok = false;
      RationalVector z(n);
      z[p] = 1;
      e.violation = lift_violation(e, z);
      return e;
    }
    if (d == 0) {
      for (int i = 0; i < n; ++i)
        if (!done[i] && i != p && s(i, p) != 0) {
          e.ok = false;
          RationalVector z(n);
          // (e_i - c e_p)^T S (e_i - c e_p) = s_ii - 2 c s_ip < 0 for large c of the right sign.
          const Rational c = (abs(s(i, i)) + 1) / (2 * s(i, p));
          z[i] = 1;
          z[p] = -c;
          e.violation = lift_violation(e, z);
          return e;
        }
    } else {
      for (int i = 0; i < n; ++i) {
        if (done[i] || i == p || s(i, p) == 0) continue;
        const Rational li = s(i, p) / d;
        e.l(i, p) = li;
        for (int j = 0; j < n; ++j)
          if (!done[j] && j != p && s(p, j) != 0) s(i, j) -= li * s(p, j);
      }
    }
    done[p] = true;
    e.pivots.push_back(p);
    e.diagonal.push_back(d);
  }
  return e;
}

}  // namespace

PsdCheck check_psd(const RationalMatrix& a) {
  if (!a.is_symmetric()) throw std::invalid_argument("check_psd: matrix is not symmetric");
  Elimination e = eliminate(a, nullptr);
  PsdCheck out;
  out.psd = e.ok;
  if (e.ok) {
    out.witness.pivots = std::move(e.pivots);
    out.witness.diagonal = std::move(e.diagonal);
  } else {
    out.violation = std::move(e.violation);
  }
  return out;
}

bool verify_ldlt(const RationalMatrix& a, const LdltWitness& witness) {
  if (!a.is_symmetric() || static_cast<int>(witness.pivots.size()) != a.rows() ||
      witness.diagonal.size() != witness.pivots.size())
    return false;
  const Elimination e = eliminate(a, &witness.pivots);
  return e.ok && e.diagonal == witness.diagonal;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RationalMatrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (int j = c; j < m.cols(); ++j)
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RationalMatrix null_space(const RationalMatrix& a) {
  RationalMatrix m = a;
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  const int dim = a.cols() - static_cast<int>(pivots.size());
  RationalMatrix basis(a.cols(), dim);
  int k = 0;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = -m(static_cast<int>(r), free);
    ++k;
  }
  return basis;
}

std::optional<RationalVector> solve_linear(const RationalMatrix& a, const RationalVector& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  RationalVector x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(static_cast<int>(r), a.cols());
  return x;
}

int rank(const RationalMatrix& a) {
  RationalMatrix m = a;
  return static_cast<int>(rref(m).size());
}

}  // namespace extremal::verify
