#include "extremal/verify/certify.hpp"

#include "extremal/orthopoly/gegenbauer.hpp"
#include "extremal/orthopoly/three_point.hpp"
#include "extremal/verify/box_bound.hpp"
#include "extremal/verify/errors.hpp"
#include "extremal/verify/sturm.hpp"

namespace extremal::verify {

using orthopoly::Polynomial;
using orthopoly::TriPolynomial;

namespace {

std::string vector_string(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

}  // namespace

Polynomial lp_polynomial(const RationalVector& f, int n) {
  const auto family = orthopoly::gegenbauer_family(n, static_cast<int>(f.size()));
  Polynomial p = Polynomial::constant(1);
  for (std::size_t k = 0; k < f.size(); ++k) p += family[k + 1] * f[k];
  return p;
}

Certificate certify_univariate(const RationalVector& f, int n, int d) {
  if (n < 2 || d < 1 || static_cast<int>(f.size()) != d) throw CertificationError(FailureKind::Malformed, "expected f_1..f_d");
  for (int k = 0; k < d; ++k)
    if (f[k] < 0) throw CertificationError(FailureKind::SignViolation, "f_" + std::to_string(k + 1) + " is negative", to_string(f[k]));
  const Polynomial p = lp_polynomial(f, n);
  const NonPositivityProof proof = prove_nonpositive(p, -1, ratio(1, 2));
  if (!proof.holds)
    throw CertificationError(FailureKind::SignViolation, "polynomial positive at t = " + to_string(proof.witness), to_string(proof.witness));

  Certificate c;
  c.problem = "kissing-lp";
  c.n = n;
  c.d = d;
  c.certified_bound = 1;
  for (const auto& x : f) c.certified_bound += x;
  c.vectors["f"] = f;
  c.method = "sturm";
  c.transcript["interval"] = "[-1, 1/2]";
  c.transcript["sturm_distinct_roots"] = std::to_string(proof.distinct_roots);
  c.transcript["sturm_segments"] = std::to_string(proof.segments);
  c.transcript["sturm_evaluations"] = std::to_string(proof.evaluations);
  c.transcript["certified_integer"] = certified_integer(c);
  seal(c);
  return c;
}

TriPolynomial gram_determinant() {
  const TriPolynomial u = TriPolynomial::u(), v = TriPolynomial::v(), t = TriPolynomial::t();
  return TriPolynomial::constant(1) + Rational(2) * u * v * t - u * u - v * v - t * t;
}

ThreePointPolynomials three_point_polynomials(const std::vector<RationalMatrix>& g, int n, int d) {
  if (static_cast<int>(g.size()) != d + 1) throw CertificationError(FailureKind::Malformed, "expected G_0..G_d");
  ThreePointPolynomials out;
  for (int k = 0; k <= d; ++k) {
    const int s = d - k + 1;
    if (g[k].rows() != s || g[k].cols() != s || !g[k].is_symmetric())
      throw CertificationError(FailureKind::Malformed, "G_" + std::to_string(k) + " has the wrong shape or is not symmetric");
    const orthopoly::PolyMatrix sk = orthopoly::s_matrix(n, k, d);
    for (int i = 0; i < s; ++i)
      for (int j = i; j < s; ++j) {
        if (g[k](i, j) == 0) continue;
        out.region += sk.exact(i, j) * (i == j ? g[k](i, j) : Rational(2 * g[k](i, j)));
      }
  }
  out.diagonal = out.region.on_diagonal() + Polynomial::constant(ratio(1, 3));
  out.objective = 1 + out.region(1, 1, 1);
  return out;
}

Certificate certify_trivariate(const std::vector<RationalMatrix>& g, int n, int d, std::int64_t budget) {
  if (n < 3 || d < 1 || budget < 1) throw CertificationError(FailureKind::Malformed, "bad three-point parameters");
  Certificate c;
  c.problem = "kissing-three-point";
  c.n = n;
  c.d = d;
  for (int k = 0; k <= d && k < static_cast<int>(g.size()); ++k) {
    const PsdCheck psd = check_psd(g[k]);
    const std::string name = "G_" + std::to_string(k);
    if (!psd.psd) throw CertificationError(FailureKind::NotPsd, name + " is not positive semidefinite", vector_string(psd.violation));
    c.matrices[name] = g[k];
    store_ldlt(c, name, psd.witness);
  }
  const ThreePointPolynomials polys = three_point_polynomials(g, n, d);

  const NonPositivityProof a = prove_nonpositive(polys.diagonal, -1, ratio(1, 2));
  if (!a.holds)
    throw CertificationError(FailureKind::SignViolation, "diagonal constraint violated at u = " + to_string(a.witness), to_string(a.witness));

  const Box root{{Rational(-1), Rational(-1), Rational(-1)}, {ratio(1, 2), ratio(1, 2), ratio(1, 2)}};
  const RegionProof b = prove_nonpositive_on_region(polys.region, gram_determinant(), root, budget);
  if (!b.holds && !b.budget_exhausted) {
    const std::string w = "(" + to_string(b.witness[0]) + ", " + to_string(b.witness[1]) + ", " + to_string(b.witness[2]) + ")";
    throw CertificationError(FailureKind::SignViolation, "region constraint violated at " + w, w);
  }
  if (b.budget_exhausted)
    throw CertificationError(FailureKind::BudgetExhausted, "undischarged box after " + std::to_string(b.boxes) + " boxes", b.failure_box.to_string());

  c.certified_bound = polys.objective;
  c.method = "sturm+box-branch-and-bound";
  c.transcript["diagonal_sturm_distinct_roots"] = std::to_string(a.distinct_roots);
  c.transcript["diagonal_sturm_segments"] = std::to_string(a.segments);
  c.transcript["diagonal_sturm_evaluations"] = std::to_string(a.evaluations);
  c.transcript["box_budget"] = std::to_string(budget);
  c.transcript["boxes"] = std::to_string(b.boxes);
  c.transcript["boxes_discharged_bound"] = std::to_string(b.discharged_bound);
  c.transcript["boxes_discharged_outside"] = std::to_string(b.discharged_outside);
  c.transcript["boxes_discharged_multiplier"] = std::to_string(b.discharged_multiplier);
  c.transcript["boxes_pruned_symmetry"] = std::to_string(b.pruned_symmetry);
  c.transcript["max_depth"] = std::to_string(b.max_depth);
  c.transcript["certified_integer"] = certified_integer(c);
  seal(c);
  return c;
}

Certificate certify_avoid_orthogonal(const RationalVector& f, const RationalVector& dual, int n, int d) {
  if (n < 2 || d < 2 || static_cast<int>(f.size()) != d + 1 || dual.size() != 2)
    throw CertificationError(FailureKind::Malformed, "expected f_0..f_d and a dual pair (a, b)");
  const auto family = orthopoly::gegenbauer_family(n, d);
  Rational total = 0, at_zero = 0;
  for (int k = 0; k <= d; ++k) {
    if (f[k] < 0) throw CertificationError(FailureKind::SignViolation, "f_" + std::to_string(k) + " is negative", to_string(f[k]));
    total += f[k];
    at_zero += f[k] * family[k](Rational(0));
  }
  if (total != 1) throw CertificationError(FailureKind::Mismatch, "sum of f_k is " + to_string(total));
  if (at_zero != 0) throw CertificationError(FailureKind::Mismatch, "kernel does not vanish at orthogonal pairs");
  const Rational& a = dual[0];
  const Rational& b = dual[1];
  int tight = 0;
  for (int k = 0; k <= d; ++k) {
    const Rational slack = a + b * family[k](Rational(0)) - (k == 0 ? 1 : 0);
    if (slack < 0) throw CertificationError(FailureKind::SignViolation, "dual constraint " + std::to_string(k) + " violated", to_string(slack));
    tight += slack == 0;
  }
  if (a != f[0]) throw CertificationError(FailureKind::Mismatch, "dual objective differs from f_0");

  Certificate c;
  c.problem = "avoid-orthogonal-sphere";
  c.n = n;
  c.d = d;
  c.certified_bound = a;
  c.vectors["f"] = f;
  c.vectors["dual"] = dual;
  c.method = "exact-lp-duality";
  c.transcript["tight_dual_constraints"] = std::to_string(tight);
  seal(c);
  return c;
}

}  // namespace extremal::verify
