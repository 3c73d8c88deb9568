#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "extremal/sphere/bounds.hpp"
#include "extremal/verify/certificate.hpp"

namespace extremal::sphere {

struct CertifyOptions {
  double margin = 0.0;  // 0 selects default_margin
  int retries = 4;      // margin doublings after the first attempt
  std::int64_t box_budget = 2'000'000;
};

/// Starting margin of the tightened re-solve.
double default_margin(Problem problem, int n, int d);

struct CertifiedRun {
  BoundResult result;  // the tightened solve the certificate was rounded from
  std::optional<verify::Certificate> certificate;
  int attempts = 0;
  std::string failure;  // last rounding or checking error when no certificate
};

/// Tightened LP solve, rationalized coefficients, Sturm check.
CertifiedRun certify_kissing_lp(int n, int d, const CertifyOptions& options = {});

/// Tightened three-point solve; the matrices are rescaled to the exact
/// kernels, rationalized, shifted into the PSD cone and checked by branch and
/// bound.
CertifiedRun certify_kissing_three_point(int n, int d, const CertifyOptions& options = {},
                                         ThreePointOptions solve = {});

/// Exact primal-dual check of an avoid_orthogonal result.
verify::Certificate certify_avoid_orthogonal(const BoundResult& result);

}  // namespace extremal::sphere
