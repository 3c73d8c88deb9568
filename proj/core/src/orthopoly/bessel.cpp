#include "extremal/orthopoly/bessel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace extremal::orthopoly {

namespace {

long double omega_series(long double nu, long double t) {
  const long double x = 0.25L * t * t;
  long double term = 1.0L, sum = 1.0L;
  for (int m = 0; m < 500; ++m) {
    term *= -x / ((m + 1) * (m + 1 + nu));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) && m > x) break;
  }
  return sum;
}

// Hankel expansion of J_nu(t).
long double bessel_j_asymptotic(long double nu, long double t) {
  const long double mu = 4.0L * nu * nu;
  long double p = 0.0L, q = 0.0L;
  long double a = 1.0L;
  long double prev = INFINITY;
  for (int k = 0; k < 60; ++k) {
    const long double term = a / std::pow(t, static_cast<long double>(k));
    if (std::fabs(term) > std::fabs(prev)) break;
    const int sign = (k / 2) % 2 == 0 ? 1 : -1;
    (k % 2 == 0 ? p : q) += sign * term;
    if (term == 0.0L || std::fabs(term) < 1e-22L) break;
    prev = term;
    const long double odd = 2.0L * k + 1.0L;
    a *= (mu - odd * odd) / (8.0L * (k + 1));
  }
  const long double chi = t - (0.5L * nu + 0.25L) * std::numbers::pi_v<long double>;
  return std::sqrt(2.0L / (std::numbers::pi_v<long double> * t)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_omega(int n, double t) {
  if (n < 2) throw std::invalid_argument("bessel_omega: dimension must be at least 2");
  if (!(t >= 0.0)) throw std::invalid_argument("bessel_omega: radius must be nonnegative");
  const long double nu = 0.5L * (n - 2);
  if (t < kBesselSeriesLimit) return static_cast<double>(omega_series(nu, t));
  const long double lt = t;
  return static_cast<double>(std::exp(std::lgamma(nu + 1.0L) + nu * std::log(2.0L / lt)) *
                             bessel_j_asymptotic(nu, lt));
}

}  // namespace extremal::orthopoly
