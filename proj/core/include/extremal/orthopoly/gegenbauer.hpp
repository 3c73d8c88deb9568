#pragma once

#include <cstdint>
#include <vector>

#include "extremal/orthopoly/polynomial.hpp"

namespace extremal::orthopoly {

/// P_k^n, orthogonal for the weight (1 - t^2)^{(n-3)/2} on [-1, 1] and
/// normalized so that P_k^n(1) = 1.
Polynomial gegenbauer(int n, int k);

/// P_0^n, ..., P_kmax^n.
std::vector<Polynomial> gegenbauer_family(int n, int kmax);

/// Floating values P_0^n(t), ..., P_kmax^n(t) by the three-term recurrence.
std::vector<double> gegenbauer_values(int n, int kmax, double t);

/// Dimension of the degree-k harmonic polynomials in n variables.
std::int64_t harmonic_dim(int n, int k);

/// Surface area of the unit sphere in R^n.
double surface_area(int n);

}  // namespace extremal::orthopoly
