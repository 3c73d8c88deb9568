#include "extremal/orthopoly/three_point.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "extremal/orthopoly/gegenbauer.hpp"

namespace extremal::orthopoly {

namespace {

void check_args(int n, int k, int d) {
  if (n < 3) throw std::invalid_argument("three-point kernels need n >= 3");
  if (k < 0 || k > d) throw std::invalid_argument("three-point kernels need 0 <= k <= d");
}

// log of omega_n
double log_area(int n) { return std::log(2.0) + 0.5 * n * std::log(std::numbers::pi) - std::lgamma(0.5 * n); }

}  // namespace

TriPolynomial q_poly(int n, int k) {
  if (n < 3) throw std::invalid_argument("q_poly: n must be at least 3");
  if (k < 0) throw std::invalid_argument("q_poly: negative degree");
  const Polynomial p = gegenbauer(n - 1, k);
  const TriPolynomial a = TriPolynomial::t() - TriPolynomial::u() * TriPolynomial::v();
  const TriPolynomial one = TriPolynomial::constant(1);
  const TriPolynomial w = (one - pow(TriPolynomial::u(), 2)) * (one - pow(TriPolynomial::v(), 2));
  TriPolynomial q;
  for (int j = k; j >= 0; j -= 2) {
    const Rational& c = p.coefficient(j);
    if (c == 0) continue;
    q += c * (pow(a, j) * pow(w, (k - j) / 2));
  }
  return q;
}

PolyMatrix::PolyMatrix(int size)
    : size_(size), entries_(static_cast<std::size_t>(size) * size), scales_(Eigen::MatrixXd::Ones(size, size)) {
  if (size < 0) throw std::invalid_argument("PolyMatrix: negative size");
}

std::size_t PolyMatrix::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= size_ || j >= size_) throw std::out_of_range("PolyMatrix: index out of range");
  return static_cast<std::size_t>(i) * size_ + j;
}

Eigen::MatrixXd PolyMatrix::evaluate(double u, double v, double t) const {
  Eigen::MatrixXd m(size_, size_);
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j) m(i, j) = scales_(i, j) * exact(i, j).evaluate(u, v, t);
  return m;
}

bool PolyMatrix::is_symmetric() const {
  for (int i = 0; i < size_; ++i)
    for (int j = i + 1; j < size_; ++j)
      if (!(exact(i, j) == exact(j, i)) || scales_(i, j) != scales_(j, i)) return false;
  return true;
}

double three_point_area_ratio(int n, int k) {
  return std::exp(log_area(n) - log_area(n - 1) + log_area(n + 2 * k - 1) - log_area(n + 2 * k));
}

double three_point_lambda(int n, int k, int i, int j) {
  const int m = n + 2 * k;
  return three_point_area_ratio(n, k) *
         std::sqrt(static_cast<double>(harmonic_dim(m, i)) * static_cast<double>(harmonic_dim(m, j)));
}

PolyMatrix y_matrix(int n, int k, int d) {
  check_args(n, k, d);
  const int size = d - k + 1;
  const auto p = gegenbauer_family(n + 2 * k, size - 1);
  const TriPolynomial q = q_poly(n, k);
  std::vector<TriPolynomial> pu, pv;
  for (const auto& pi : p) {
    pu.push_back(TriPolynomial::lift(pi, 0));
    pv.push_back(TriPolynomial::lift(pi, 1) * q);
  }
  PolyMatrix y(size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      y.exact(i, j) = pu[i] * pv[j];
      y.set_scale(i, j, three_point_lambda(n, k, i, j));
    }
  return y;
}

PolyMatrix s_matrix(int n, int k, int d) {
  PolyMatrix y = y_matrix(n, k, d);
  PolyMatrix s(y.size());
  for (int i = 0; i < y.size(); ++i)
    for (int j = 0; j < y.size(); ++j) {
      if (j < i) {
        s.exact(i, j) = s.exact(j, i);
      } else {
        for (const auto& perm : all_permutations()) s.exact(i, j) += y.exact(i, j).permuted(perm);
      }
      s.set_scale(i, j, y.scale(i, j));
    }
  return s;
}

KernelEvaluator::KernelEvaluator(int n, int d, bool normalized) : n_(n), d_(d), normalized_(normalized) {
  check_args(n, 0, d);
  for (int k = 0; k <= d; ++k) {
    const int size = block_size(k);
    Eigen::MatrixXd lam(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) lam(i, j) = normalized ? three_point_lambda(n, k, i, j) : 1.0;
    lambda_.push_back(std::move(lam));
  }
}

// (k + m - 2) Q_{k+1} = (2k + m - 2) a Q_k - k w Q_{k-1}, m = n - 1
std::vector<double> KernelEvaluator::q_values(double u, double v, double t) const {
  const int m = n_ - 1;
  const double a = t - u * v;
  const double w = (1.0 - u * u) * (1.0 - v * v);
  std::vector<double> q(d_ + 1);
  q[0] = 1.0;
  if (d_ >= 1) q[1] = a;
  for (int k = 1; k < d_; ++k) q[k + 1] = ((2.0 * k + m - 2) * a * q[k] - k * w * q[k - 1]) / (k + m - 2);
  return q;
}

std::vector<Eigen::MatrixXd> KernelEvaluator::evaluate(double u, double v, double t) const {
  std::vector<Eigen::MatrixXd> s;
  s.reserve(d_ + 1);
  for (int k = 0; k <= d_; ++k) s.push_back(Eigen::MatrixXd::Zero(block_size(k), block_size(k)));
  const double x[3] = {u, v, t};
  for (const auto& perm : all_permutations()) {
    const double a = x[perm[0]], b = x[perm[1]], c = x[perm[2]];
    const auto q = q_values(a, b, c);
    for (int k = 0; k <= d_; ++k) {
      if (q[k] == 0.0) continue;
      const int size = block_size(k);
      const auto pa = gegenbauer_values(n_ + 2 * k, size - 1, a);
      const auto pb = gegenbauer_values(n_ + 2 * k, size - 1, b);
      const Eigen::Map<const Eigen::VectorXd> va(pa.data(), size), vb(pb.data(), size);
      s[k].noalias() += q[k] * va * vb.transpose();
    }
  }
  for (int k = 0; k <= d_; ++k) {
    s[k] = 0.5 * (s[k] + s[k].transpose()).eval();
    if (normalized_) s[k] = s[k].cwiseProduct(lambda_[k]);
  }
  return s;
}

}  // namespace extremal::orthopoly
