#include "extremal/orthopoly/tripolynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace extremal::orthopoly {

TriPolynomial TriPolynomial::constant(const Rational& c) { return monomial({0, 0, 0}, c); }

TriPolynomial TriPolynomial::monomial(Exponent e, const Rational& c) {
  if (e.u < 0 || e.v < 0 || e.t < 0) throw std::invalid_argument("TriPolynomial: negative exponent");
  TriPolynomial p;
  p.add_term(e, c);
  return p;
}

TriPolynomial TriPolynomial::u() { return monomial({1, 0, 0}); }
TriPolynomial TriPolynomial::v() { return monomial({0, 1, 0}); }
TriPolynomial TriPolynomial::t() { return monomial({0, 0, 1}); }

TriPolynomial TriPolynomial::lift(const Polynomial& p, int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("TriPolynomial::lift: axis out of range");
  TriPolynomial out;
  for (int k = 0; k <= p.degree(); ++k) {
    Exponent e;
    (axis == 0 ? e.u : axis == 1 ? e.v : e.t) = k;
    out.add_term(e, p.coefficients()[k]);
  }
  return out;
}

Rational TriPolynomial::coefficient(Exponent e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int TriPolynomial::degree(int axis) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, axis == 0 ? e.u : axis == 1 ? e.v : e.t);
  return d;
}

int TriPolynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.total());
  return d;
}

namespace {

template <typename T>
std::vector<T> powers(const T& x, int n) {
  std::vector<T> out(std::max(n, 0) + 1);
  out[0] = 1;
  for (int k = 1; k <= n; ++k) out[k] = out[k - 1] * x;
  return out;
}

}  // namespace

Rational TriPolynomial::operator()(const Rational& u, const Rational& v, const Rational& t) const {
  auto pu = powers(u, degree(0)), pv = powers(v, degree(1)), pt = powers(t, degree(2));
  Rational acc = 0;
  for (const auto& [e, c] : terms_) acc += c * pu[e.u] * pv[e.v] * pt[e.t];
  return acc;
}

double TriPolynomial::evaluate(double u, double v, double t) const {
  auto pu = powers(u, degree(0)), pv = powers(v, degree(1)), pt = powers(t, degree(2));
  double acc = 0.0;
  for (const auto& [e, c] : terms_) acc += c.get_d() * pu[e.u] * pv[e.v] * pt[e.t];
  return acc;
}

Polynomial TriPolynomial::on_diagonal() const {
  std::vector<Rational> coeffs(std::max(0, degree(0) + degree(1) + 1));
  for (const auto& [e, c] : terms_) coeffs[e.u + e.v] += c;
  return Polynomial(std::move(coeffs));
}

TriPolynomial TriPolynomial::permuted(const std::array<int, 3>& perm) const {
  TriPolynomial out;
  for (const auto& [e, c] : terms_) {
    std::array<int, 3> exps{0, 0, 0};
    exps[perm[0]] += e.u;
    exps[perm[1]] += e.v;
    exps[perm[2]] += e.t;
    out.add_term({exps[0], exps[1], exps[2]}, c);
  }
  return out;
}

void TriPolynomial::add_term(Exponent e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TriPolynomial& TriPolynomial::operator+=(const TriPolynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

TriPolynomial& TriPolynomial::operator-=(const TriPolynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

TriPolynomial& TriPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

TriPolynomial operator*(const TriPolynomial& a, const TriPolynomial& b) {
  TriPolynomial out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term({ea.u + eb.u, ea.v + eb.v, ea.t + eb.t}, ca * cb);
  return out;
}

TriPolynomial pow(const TriPolynomial& base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("pow: negative exponent");
  TriPolynomial result = TriPolynomial::constant(1);
  for (int k = 0; k < exponent; ++k) result = result * base;
  return result;
}

const std::array<std::array<int, 3>, 6>& all_permutations() {
  static const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}}};
  return perms;
}

}  // namespace extremal::orthopoly
