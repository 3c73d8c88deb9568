#pragma once

#include <array>
#include <compare>
#include <map>

#include "extremal/orthopoly/polynomial.hpp"
#include "extremal/rational.hpp"

namespace extremal::orthopoly {

struct Exponent {
  int u = 0;
  int v = 0;
  int t = 0;

  int total() const { return u + v + t; }
  friend auto operator<=>(const Exponent&, const Exponent&) = default;
};

/// Sparse polynomial in (u, v, t) with exact rational coefficients.  Zero
/// coefficients are never stored.
class TriPolynomial {
 public:
  using Terms = std::map<Exponent, Rational>;

  TriPolynomial() = default;
  static TriPolynomial constant(const Rational& c);
  static TriPolynomial monomial(Exponent e, const Rational& c = 1);
  static TriPolynomial u();
  static TriPolynomial v();
  static TriPolynomial t();
  /// p(u), p(v) or p(t) for a univariate p; axis is 0, 1 or 2.
  static TriPolynomial lift(const Polynomial& p, int axis);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(Exponent e) const;

  /// Maximum exponent of one variable (axis 0, 1, 2), -1 for zero.
  int degree(int axis) const;
  int total_degree() const;

  Rational operator()(const Rational& u, const Rational& v, const Rational& t) const;
  double evaluate(double u, double v, double t) const;

  /// Exact substitution (u, v, t) <- (x, x, 1).
  Polynomial on_diagonal() const;

  /// q(x0, x1, x2) = p(x[perm[0]], x[perm[1]], x[perm[2]]).
  TriPolynomial permuted(const std::array<int, 3>& perm) const;

  void add_term(Exponent e, const Rational& c);

  TriPolynomial& operator+=(const TriPolynomial& other);
  TriPolynomial& operator-=(const TriPolynomial& other);
  TriPolynomial& operator*=(const Rational& c);
  friend TriPolynomial operator+(TriPolynomial a, const TriPolynomial& b) { return a += b; }
  friend TriPolynomial operator-(TriPolynomial a, const TriPolynomial& b) { return a -= b; }
  friend TriPolynomial operator*(const TriPolynomial& a, const TriPolynomial& b);
  friend TriPolynomial operator*(TriPolynomial a, const Rational& c) { return a *= c; }
  friend TriPolynomial operator*(const Rational& c, TriPolynomial a) { return a *= c; }
  friend bool operator==(const TriPolynomial& a, const TriPolynomial& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

TriPolynomial pow(const TriPolynomial& base, int exponent);

/// The six permutations of (0, 1, 2), identity first.
const std::array<std::array<int, 3>, 6>& all_permutations();

}  // namespace extremal::orthopoly
