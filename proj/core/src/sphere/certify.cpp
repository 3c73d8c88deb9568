#include "extremal/sphere/certify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "extremal/orthopoly/three_point.hpp"
#include "extremal/verify/certify.hpp"
#include "extremal/verify/errors.hpp"

namespace extremal::sphere {

namespace {

using verify::RationalMatrix;
using verify::RationalVector;

// Dyadic rounding keeps one small common denominator per certificate.
constexpr int kLpBits = 40;
constexpr int kMatrixBits = 32;
const Rational kFirstShift(1, Integer(1) << 40);

Rational dyadic(double x, int bits) { return exact(std::ldexp(std::round(std::ldexp(x, bits)), -bits)); }

double starting_margin(const CertifyOptions& o, Problem p, int n, int d) {
  if (o.margin < 0) throw std::invalid_argument("certify: negative margin");
  if (o.retries < 0) throw std::invalid_argument("certify: negative retry count");
  return o.margin > 0 ? o.margin : default_margin(p, n, d);
}


// Rationalizes F_k on the exact kernels and adds the smallest dyadic multiple
// of the identity that makes it PSD, or nothing if that exceeds the cap.
std::optional<RationalMatrix> exact_block(const Eigen::MatrixXd& g, const Rational& cap) {
  const int s = static_cast<int>(g.rows());
  RationalMatrix q(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j) q(i, j) = q(j, i) = dyadic(0.5 * (g(i, j) + g(j, i)), kMatrixBits);
  Rational shift = 0;
  while (!verify::check_psd(q).psd) {
    const Rational add = shift == 0 ? kFirstShift : shift;
    if (shift + add > cap) return std::nullopt;
    for (int i = 0; i < s; ++i) q(i, i) += add;
    shift += add;
  }
  return q;
}

}  // namespace

double default_margin(Problem problem, int n, int d) {
  (void)d;
  switch (problem) {
    case Problem::KissingLP: return 1e-7;
    case Problem::KissingThreePoint: return n <= 3 ? 1e-3 : 1e-4;
    default: return 0.0;
  }
}

CertifiedRun certify_kissing_lp(int n, int d, const CertifyOptions& o) {
  double margin = starting_margin(o, Problem::KissingLP, n, d);
  CertifiedRun run;
  for (int attempt = 0; attempt <= o.retries; ++attempt, margin *= 2) {
    LpOptions lp;
    lp.grid_size = std::max(200, 4 * d);
    lp.margin = margin;
    run.result = kissing_lp(n, d, lp);
    run.attempts = attempt + 1;
    RationalVector f(d);
    for (int k = 0; k < d; ++k) f[k] = dyadic(std::max(0.0, run.result.coefficients[k]), kLpBits);
    try {
      run.certificate = verify::certify_univariate(f, n, d);
      run.failure.clear();
      return run;
    } catch (const verify::CertificationError& e) {
      run.failure = e.what();
    }
  }
  return run;
}

CertifiedRun certify_kissing_three_point(int n, int d, const CertifyOptions& o, ThreePointOptions solve) {
  double margin = starting_margin(o, Problem::KissingThreePoint, n, d);
  CertifiedRun run;
  for (int attempt = 0; attempt <= o.retries; ++attempt, margin *= 2) {
    solve.margin = margin;
    run.result = kissing_three_point(n, d, solve);
    run.attempts = attempt + 1;
    const Rational cap = exact(margin * 1e-3);
    std::vector<RationalMatrix> g;
    for (int k = 0; k <= d; ++k) {
      const auto block = exact_block(run.result.matrices[k].cwiseProduct(orthopoly::s_matrix(n, k, d).scales()), cap);
      if (!block) break;
      g.push_back(*block);
    }
    if (static_cast<int>(g.size()) != d + 1) {
      run.failure = "NotPsd: rounded matrix needs a shift above 1e-3 times the margin";
      continue;
    }
    try {
      run.certificate = verify::certify_trivariate(g, n, d, o.box_budget);
      run.failure.clear();
      return run;
    } catch (const verify::CertificationError& e) {
      run.failure = e.what();
    }
  }
  return run;
}

verify::Certificate certify_avoid_orthogonal(const BoundResult& r) {
  if (r.problem != Problem::AvoidOrthogonalSphere || !r.d)
    throw std::invalid_argument("certify_avoid_orthogonal: not an avoid_orthogonal result");
  return verify::certify_avoid_orthogonal(r.exact_coefficients, r.exact_dual, r.n, *r.d);
}

}  // namespace extremal::sphere
