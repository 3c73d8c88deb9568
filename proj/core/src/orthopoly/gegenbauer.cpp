#include "extremal/orthopoly/gegenbauer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace extremal::orthopoly {

namespace {

void check_dimension(int n) {
  if (n < 2) throw std::invalid_argument("gegenbauer: dimension must be at least 2");
}

}  // namespace

// (k + n - 2) P_{k+1} = (2k + n - 2) t P_k - k P_{k-1}
std::vector<Polynomial> gegenbauer_family(int n, int kmax) {
  check_dimension(n);
  if (kmax < 0) throw std::invalid_argument("gegenbauer: negative degree");
  std::vector<Polynomial> p;
  p.reserve(kmax + 1);
  p.push_back(Polynomial::constant(1));
  if (kmax >= 1) p.push_back(Polynomial::monomial(1));
  const Polynomial t = Polynomial::monomial(1);
  for (int k = 1; k < kmax; ++k) {
    Polynomial next = t * p[k] * Rational(2 * k + n - 2) - p[k - 1] * Rational(k);
    next *= Rational(1, k + n - 2);
    p.push_back(std::move(next));
  }
  return p;
}

Polynomial gegenbauer(int n, int k) { return gegenbauer_family(n, k).back(); }

std::vector<double> gegenbauer_values(int n, int kmax, double t) {
  check_dimension(n);
  if (kmax < 0) throw std::invalid_argument("gegenbauer: negative degree");
  std::vector<double> p(kmax + 1);
  p[0] = 1.0;
  if (kmax >= 1) p[1] = t;
  for (int k = 1; k < kmax; ++k)
    p[k + 1] = ((2.0 * k + n - 2) * t * p[k] - k * p[k - 1]) / (k + n - 2);
  return p;
}

std::int64_t harmonic_dim(int n, int k) {
  check_dimension(n);
  if (k < 0) throw std::invalid_argument("harmonic_dim: negative degree");
  Integer a, b = 0;
  mpz_bin_uiui(a.get_mpz_t(), n + k - 1, k);
  if (k >= 2) mpz_bin_uiui(b.get_mpz_t(), n + k - 3, k - 2);
  Integer h = a - b;
  if (!h.fits_slong_p()) throw std::overflow_error("harmonic_dim: result exceeds 64 bits");
  return h.get_si();
}

double surface_area(int n) {
  if (n < 1) throw std::invalid_argument("surface_area: dimension must be positive");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

}  // namespace extremal::orthopoly
