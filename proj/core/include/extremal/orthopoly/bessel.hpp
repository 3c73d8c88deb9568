#pragma once

namespace extremal::orthopoly {

/// Omega_n(t) = Gamma(n/2) (2/t)^{(n-2)/2} J_{(n-2)/2}(t), with Omega_n(0) = 1.
/// The Fourier transform of the normalized surface measure on S^{n-1}.
double bessel_omega(int n, double t);

/// Crossover radius between the power series and the Hankel expansion.
inline constexpr double kBesselSeriesLimit = 20.0;

}  // namespace extremal::orthopoly
