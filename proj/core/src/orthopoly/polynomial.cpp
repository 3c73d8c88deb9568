#include "extremal/orthopoly/polynomial.hpp"

#include <stdexcept>

namespace extremal::orthopoly {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(int degree, const Rational& c) {
  if (degree < 0) throw std::invalid_argument("monomial: negative degree");
  std::vector<Rational> coeffs(degree + 1);
  coeffs[degree] = c;
  return Polynomial(std::move(coeffs));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  approx_.resize(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) approx_[i] = coeffs_[i].get_d();
}

Rational Polynomial::coefficient(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[k];
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = approx_.rbegin(); it != approx_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (degree() < 1) return {};
  std::vector<Rational> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = coeffs_[k] * static_cast<long>(k);
  return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  for (auto& a : coeffs_) a *= c;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& a : r.coeffs_) a = -a;
  r.trim();
  return r;
}

Polynomial Polynomial::reflected() const {
  Polynomial r = *this;
  for (std::size_t k = 1; k < r.coeffs_.size(); k += 2) r.coeffs_[k] = -r.coeffs_[k];
  r.trim();
  return r;
}

std::pair<Polynomial, Polynomial> divide(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw std::domain_error("divide: division by the zero polynomial");
  if (num.degree() < den.degree()) return {Polynomial(), num};
  std::vector<Rational> rem = num.coefficients();
  std::vector<Rational> quot(num.degree() - den.degree() + 1);
  const auto& d = den.coefficients();
  const Rational& lead = den.leading();
  for (int k = num.degree() - den.degree(); k >= 0; --k) {
    Rational c = rem[k + den.degree()] / lead;
    quot[k] = c;
    if (c == 0) continue;
    for (int j = 0; j <= den.degree(); ++j) rem[k + j] -= c * d[j];
  }
  rem.resize(den.degree());
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  Rational lead = a.leading();
  return a * (1 / lead);
}

}  // namespace extremal::orthopoly
