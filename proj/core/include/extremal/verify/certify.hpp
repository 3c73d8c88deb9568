#pragma once

#include <cstdint>
#include <vector>

#include "extremal/orthopoly/polynomial.hpp"
#include "extremal/orthopoly/tripolynomial.hpp"
#include "extremal/verify/certificate.hpp"

namespace extremal::verify {

/// 1 + sum_{k=1}^{d} f_k P_k^n(t).
orthopoly::Polynomial lp_polynomial(const RationalVector& f, int n);

/// Proves 1 + sum f_k P_k^n <= 0 on [-1, 1/2] for f = (f_1..f_d) >= 0.
/// certified_bound = 1 + sum f_k.  Throws SignViolation with the witness point.
Certificate certify_univariate(const RationalVector& f, int n, int d);

/// Constraint polynomials of the three-point program for exact matrices G_k
/// on the unnormalized kernels: diagonal(u) = sum <G_k, S_k(u,u,1)> + 1/3 and
/// region(u,v,t) = sum <G_k, S_k(u,v,t)>.
struct ThreePointPolynomials {
  orthopoly::Polynomial diagonal;
  orthopoly::TriPolynomial region;
  Rational objective;  // 1 + sum <G_k, S_k(1,1,1)>
};
ThreePointPolynomials three_point_polynomials(const std::vector<RationalMatrix>& g, int n, int d);

/// 1 + 2uvt - u^2 - v^2 - t^2.
orthopoly::TriPolynomial gram_determinant();

/// Proves the three-point constraints for PSD G_0..G_d: exact LDL^T per block,
/// Sturm on the diagonal family, branch and bound on the region.
/// Throws NotPsd, SignViolation or BudgetExhausted.
Certificate certify_trivariate(const std::vector<RationalMatrix>& g, int n, int d, std::int64_t budget = 2'000'000);

/// Checks a primal-dual pair of the orthogonality-avoiding LP: f feasible,
/// (a, b) dual feasible with a = f_0.  certified_bound = a.
Certificate certify_avoid_orthogonal(const RationalVector& f, const RationalVector& dual, int n, int d);

}  // namespace extremal::verify
