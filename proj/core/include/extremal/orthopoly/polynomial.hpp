#pragma once

#include <utility>
#include <vector>

#include "extremal/rational.hpp"

namespace extremal::orthopoly {

/// Dense univariate polynomial with exact rational coefficients; index = degree.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients and
/// degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);

  static Polynomial constant(const Rational& c);
  static Polynomial monomial(int degree, const Rational& c = 1);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(int k) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  double evaluate(double x) const;

  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// p(-x).
  Polynomial reflected() const;

 private:
  void trim();

  std::vector<Rational> coeffs_;
  std::vector<double> approx_;
};

/// Euclidean division: num = quotient * den + remainder, deg(remainder) < deg(den).
std::pair<Polynomial, Polynomial> divide(const Polynomial& num, const Polynomial& den);

/// Monic greatest common divisor (zero if both are zero).
Polynomial gcd(Polynomial a, Polynomial b);

}  // namespace extremal::orthopoly
