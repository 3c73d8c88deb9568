#include <cfenv>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "extremal/conic/solver.hpp"
#include "extremal/verify/box_bound.hpp"
#include "extremal/verify/errors.hpp"
#include "extremal/verify/exact_matrix.hpp"
#include "extremal/verify/rounding.hpp"
#include "extremal/verify/sturm.hpp"

using namespace extremal;
using namespace extremal::verify;
using orthopoly::Exponent;

namespace {

Rational random_rational(std::mt19937_64& rng, long range, long den) {
  std::uniform_int_distribution<long> num(-range * den, range * den);
  return ratio(num(rng), den);
}

RationalMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  RationalMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

Rational quad_form(const RationalMatrix& a, const RationalVector& x) { return dot(x, a * x); }

conic::ConicProgram theta_program(int n, const std::vector<std::pair<int, int>>& edges) {
  conic::ConicProgram p({{conic::ConeKind::Psd, n}}, 1 + static_cast<int>(edges.size()));
  for (int i = 0; i < n; ++i) {
    p.add_coefficient(0, 0, i, i, 1.0);
    for (int j = i; j < n; ++j) p.add_objective(0, i, j, 1.0);
  }
  for (std::size_t e = 0; e < edges.size(); ++e) p.add_coefficient(1 + static_cast<int>(e), 0, edges[e].first, edges[e].second, 1.0);
  p.set_rhs(0, 1.0);
  return p;
}

std::vector<std::pair<int, int>> petersen_edges() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  for (auto& [a, b] : e)
    if (a > b) std::swap(a, b);
  return e;
}

}  // namespace

TEST(ExactMatrix, PsdWitnessReplays) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 6, r = trial % (n + 1);
    RationalMatrix b(n, r);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r; ++j) b(i, j) = random_rational(rng, 3, 4);
    const RationalMatrix a = b * b.transpose();
    const PsdCheck c = check_psd(a);
    ASSERT_TRUE(c.psd);
    EXPECT_TRUE(verify_ldlt(a, c.witness));
    EXPECT_EQ(rank(a), rank(b));
  }
}

TEST(ExactMatrix, IndefiniteGivesViolation) {
  const RationalMatrix a = from_rows({{1, 2}, {2, 1}});
  const PsdCheck c = check_psd(a);
  ASSERT_FALSE(c.psd);
  EXPECT_LT(quad_form(a, c.violation), 0);

  // Zero diagonal with a nonzero off-diagonal entry.
  const RationalMatrix z = from_rows({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}});
  const PsdCheck cz = check_psd(z);
  ASSERT_FALSE(cz.psd);
  EXPECT_LT(quad_form(z, cz.violation), 0);
}

TEST(ExactMatrix, TamperedWitnessRejected) {
  const RationalMatrix a = from_rows({{4, 2}, {2, 3}});
  PsdCheck c = check_psd(a);
  ASSERT_TRUE(verify_ldlt(a, c.witness));
  c.witness.diagonal[1] += ratio(1, 1000);
  EXPECT_FALSE(verify_ldlt(a, c.witness));
}

TEST(ExactMatrix, NullSpaceAndSolve) {
  const RationalMatrix a = from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  const RationalMatrix k = null_space(a);
  ASSERT_EQ(k.cols(), 1);
  const RationalMatrix prod = a * k;
  for (int i = 0; i < 3; ++i) EXPECT_EQ(prod(i, 0), 0);
  const auto x = solve_linear(a, {6, 12, 2});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(a * *x, (RationalVector{6, 12, 2}));
  EXPECT_FALSE(solve_linear(a, {6, 13, 2}).has_value());
}

TEST(DetectKernel, Examples) {
  EXPECT_EQ(detect_kernel(Eigen::MatrixXd::Identity(4, 4), 1e-8).cols(), 0);

  const RationalMatrix k = detect_kernel(Eigen::MatrixXd::Ones(3, 3), 1e-8);
  ASSERT_EQ(k.cols(), 2);
  // Both (1,-1,0) and (1,0,-1) lie in the rational span: exact rank test.
  for (const RationalVector& w : {RationalVector{1, -1, 0}, RationalVector{1, 0, -1}}) {
    RationalMatrix aug(3, 3);
    for (int i = 0; i < 3; ++i) {
      aug(i, 0) = k(i, 0);
      aug(i, 1) = k(i, 1);
      aug(i, 2) = w[i];
    }
    EXPECT_EQ(rank(aug), 2);
  }

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 1e-12;
  const RationalMatrix kd = detect_kernel(d, 1e-10);
  ASSERT_EQ(kd.cols(), 1);
  EXPECT_EQ(kd(0, 0), 0);
  EXPECT_NE(kd(1, 0), 0);
}

TEST(DetectKernel, RecoversRationalKernelFromNoisyMatrix) {
  // X = B B^T with B exact, plus 1e-13 noise: kernel is exactly null(B^T).
  const RationalMatrix b = from_rows({{1, 0}, {2, 1}, {0, 3}, {1, 1}});
  Eigen::MatrixXd x = (b * b.transpose()).to_double();
  x(0, 0) += 1e-13;
  const RationalMatrix k = detect_kernel(x, 1e-9);
  ASSERT_EQ(k.cols(), 2);
  const RationalMatrix zero = b.transpose() * k;
  for (int i = 0; i < zero.rows(); ++i)
    for (int j = 0; j < zero.cols(); ++j) EXPECT_EQ(zero(i, j), 0);
}

TEST(RoundLeastSquares, Examples) {
  RationalMatrix a(1, 1);
  a(0, 0) = 1;
  const RationalVector x = round_least_squares(Eigen::VectorXd::Constant(1, 0.33333334), a, {ratio(1, 3)}, 1000000);
  EXPECT_EQ(x[0], ratio(1, 3));

  const RationalMatrix a2 = from_rows({{1, 1, 0}, {0, 1, 1}});
  Eigen::VectorXd exact_point(3);
  exact_point << 0.5, 0.5, 0.25;
  const RationalVector y = round_least_squares(exact_point, a2, {1, ratio(3, 4)}, 1000);
  EXPECT_EQ(y, (RationalVector{ratio(1, 2), ratio(1, 2), ratio(1, 4)}));

  const RationalMatrix bad = from_rows({{1, 1}, {2, 2}});
  try {
    round_least_squares(Eigen::VectorXd::Zero(2), bad, {1, 3}, 1000);
    FAIL() << "expected InconsistentSystem";
  } catch (const CertificationError& e) {
    EXPECT_EQ(e.kind(), FailureKind::InconsistentSystem);
  }
}

TEST(FacialReduction, EmptyKernelsKeepProgram) {
  const auto p = theta_program(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  const FacialReduction fr = facial_reduce(p, {RationalMatrix(5, 0)});
  const auto a = conic::solve(p, 1e-9), b = conic::solve(fr.program, 1e-9);
  EXPECT_EQ(a.primal_value, b.primal_value);
}

TEST(FacialReduction, DeletesKernelCoordinate) {
  conic::ConicProgram p({{conic::ConeKind::Psd, 2}}, 1);
  p.add_objective(0, 0, 0, 1.0);
  p.add_coefficient(0, 0, 0, 0, 1.0);
  p.add_coefficient(0, 0, 1, 1, 1.0);
  p.set_rhs(0, 1.0);
  RationalMatrix k(2, 1);
  k(1, 0) = 1;
  const FacialReduction fr = facial_reduce(p, {k});
  ASSERT_EQ(fr.program.blocks()[0].size, 1);
  const auto r = conic::solve(fr.program, 1e-9);
  EXPECT_NEAR(r.primal_value, 1.0, 1e-8);
  const auto back = fr.back_map.apply(r.primal_solution);
  EXPECT_NEAR(back[0](0, 0), 1.0, 1e-8);
  EXPECT_EQ(back[0](1, 1), 0.0);
}

TEST(FacialReduction, PreservesThetaValue) {
  const std::vector<std::pair<std::string, std::pair<int, std::vector<std::pair<int, int>>>>> cases = {
      {"C5", {5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}}}, {"Petersen", {10, petersen_edges()}}};
  const double oracle[] = {std::sqrt(5.0), 4.0};
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto p = theta_program(cases[c].second.first, cases[c].second.second);
    const auto r = conic::solve(p, 1e-10);
    ASSERT_EQ(r.status, conic::SolveStatus::Optimal);
    const RationalMatrix k = detect_kernel(r.primal_solution[0], 1e-6);
    EXPECT_GT(k.cols(), 0) << cases[c].first;
    const FacialReduction fr = facial_reduce(p, {k});
    const auto rr = conic::solve(fr.program, 1e-10);
    EXPECT_NEAR(rr.primal_value, r.primal_value, 1e-7) << cases[c].first;
    EXPECT_NEAR(rr.primal_value, oracle[c], 1e-7) << cases[c].first;
  }
}

TEST(Sturm, CountsMatchConstructedRoots) {
  // Polynomials assembled from known rational roots (with multiplicities) and
  // root-free quadratic factors; the distinct roots in [a, b] are known.
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> nroots(0, 8), mult(1, 3), nquad(0, 3);
  for (int trial = 0; trial < 500; ++trial) {
    Polynomial p = Polynomial::constant(random_rational(rng, 5, 7));
    if (p.is_zero()) p = Polynomial::constant(1);
    std::vector<Rational> roots;
    const int r = nroots(rng);
    for (int i = 0; i < r && p.degree() < 22; ++i) {
      const Rational root = random_rational(rng, 3, 5);
      const int m = mult(rng);
      for (int j = 0; j < m; ++j) p = p * Polynomial({-root, 1});
      roots.push_back(root);
    }
    const int q = nquad(rng);
    for (int i = 0; i < q && p.degree() < 24; ++i) {
      const Rational c = random_rational(rng, 2, 3);
      p = p * Polynomial({c * c + ratio(1, 9), 0, 1});
    }
    Rational a = random_rational(rng, 3, 4), b = random_rational(rng, 3, 4);
    if (b < a) std::swap(a, b);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    const int expected = static_cast<int>(std::count_if(roots.begin(), roots.end(), [&](const Rational& x) { return a <= x && x <= b; }));
    ASSERT_EQ(count_roots(p, a, b), expected) << "trial " << trial;
  }
}

TEST(Sturm, CountsMatchBisectionIsolator) {
  // Random polynomials: a fine exact sign scan brackets every odd-multiplicity
  // root; square-free random polynomials have only simple roots.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rational> c(1 + trial % 8);
    for (auto& x : c) x = random_rational(rng, 4, 3);
    c.push_back(1);
    const Polynomial p(c);
    const int steps = 4000;
    int changes = 0;
    Rational prev = p(-10);
    ASSERT_NE(prev, 0);
    for (int i = 1; i <= steps; ++i) {
      const Rational x = Rational(-10) + Rational(20 * i, steps);
      const Rational v = p(x);
      if (v == 0)
        ++changes;
      else if (prev != 0 && sgn(v) != sgn(prev))
        ++changes;
      prev = v;
    }
    // Random coefficients give simple, well separated roots, all caught by the scan.
    EXPECT_EQ(changes, count_roots(p, -10, 10)) << "trial " << trial;
  }
}

TEST(Sturm, ProveNonpositive) {
  // -(x - 1/4)^2 (x + 2): nonpositive on [-1, 1] with a touching root.
  const Polynomial p = Polynomial({ratio(-1, 4), 1}) * Polynomial({ratio(-1, 4), 1}) * Polynomial({2, 1}) * Rational(-1);
  const auto proof = prove_nonpositive(p, -1, 1);
  EXPECT_TRUE(proof.holds);
  EXPECT_EQ(proof.distinct_roots, 1);

  const auto one = prove_nonpositive(Polynomial::constant(1), -1, ratio(1, 2));
  EXPECT_FALSE(one.holds);
  EXPECT_GT(Polynomial::constant(1)(one.witness), 0);

  // Positive bump strictly inside: x(1/2 - x) near the middle of [-1, 1].
  const Polynomial bump = Polynomial({0, ratio(1, 2), -1}) * Polynomial({-1, 0, 0, 0, 0, 0, 1});
  const auto b = prove_nonpositive(Polynomial({0, ratio(1, 2), -1}) - Polynomial::constant(ratio(1, 100)), -1, 1);
  EXPECT_FALSE(b.holds);
  EXPECT_GT((Polynomial({0, ratio(1, 2), -1}) - Polynomial::constant(ratio(1, 100)))(b.witness), 0);
  (void)bump;
}

TEST(BoxBound, EnclosureContainsCenterAndSamples) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> deg(0, 4);
  for (int trial = 0; trial < 1000; ++trial) {
    orthopoly::TriPolynomial p;
    for (int i = 0; i < 6; ++i) p.add_term({deg(rng), deg(rng), deg(rng)}, random_rational(rng, 3, 5));
    Box box;
    for (int i = 0; i < 3; ++i) {
      Rational a = random_rational(rng, 1, 16), b = random_rational(rng, 1, 16);
      if (a == b) b += ratio(1, 16);
      box.lo[i] = std::min(a, b);
      box.hi[i] = std::max(a, b);
    }
    const Enclosure e = enclose(p, box);
    const auto c = box.center();
    const Rational vc = p(c[0], c[1], c[2]);
    ASSERT_LE(e.lower, vc);
    ASSERT_LE(vc, e.upper);
    const Rational vl = p(box.lo[0], box.lo[1], box.hi[2]);
    ASSERT_LE(e.lower, vl);
    ASSERT_LE(vl, e.upper);
  }
}

TEST(BoxBound, TaylorModelBoundsAreSound) {
  // Integer models along random split paths must dominate the exact maximum
  // sampled on each sub-box.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> deg(0, 5), axis(0, 2), coin(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    orthopoly::TriPolynomial p;
    for (int i = 0; i < 10; ++i) p.add_term({deg(rng), deg(rng), deg(rng)}, random_rational(rng, 50, 7));
    Box box{{Rational(-1), Rational(-1), Rational(-1)}, {ratio(1, 2), ratio(1, 2), ratio(1, 2)}};
    TaylorModel m = TaylorModel::from_polynomial(p, box);
    for (int depth = 0; depth < 40; ++depth) {
      const Rational ub = m.upper_bound_exact();
      for (int s = 0; s < 3; ++s) {
        std::array<Rational, 3> x;
        for (int i = 0; i < 3; ++i) x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * ratio(s, 2);
        ASSERT_LE(p(x[0], x[1], x[2]), ub) << "trial " << trial << " depth " << depth;
      }
      const Rational enc = enclose(p, box).upper;
      ASSERT_LE(enc, ub + (ub > 0 ? ub : -ub) * ratio(1, 1000000) + Rational(1, 1000000));
      const int ax = axis(rng);
      const bool up = coin(rng);
      m = m.split(ax, up);
      const Rational mid = (box.lo[ax] + box.hi[ax]) / 2;
      (up ? box.lo[ax] : box.hi[ax]) = mid;
    }
  }
}

TEST(BoxBound, RegionProofOnSimpleCases) {
  using orthopoly::TriPolynomial;
  const TriPolynomial u = TriPolynomial::u(), v = TriPolynomial::v(), t = TriPolynomial::t();
  const TriPolynomial g = TriPolynomial::constant(1) + Rational(2) * u * v * t - u * u - v * v - t * t;
  const Box root{{Rational(-1), Rational(-1), Rational(-1)}, {ratio(1, 2), ratio(1, 2), ratio(1, 2)}};

  // u + v + t - 8/5 < 0 on the whole box.
  const auto easy = prove_nonpositive_on_region(u + v + t - TriPolynomial::constant(ratio(8, 5)), g, root, 100000);
  EXPECT_TRUE(easy.holds);

  // -g - 1/1000 < 0 on the region; boxes straddling g = 0 need the multiplier.
  const auto boundary = prove_nonpositive_on_region(TriPolynomial() - g - TriPolynomial::constant(ratio(1, 1000)), g, root, 100000);
  EXPECT_TRUE(boundary.holds);
  EXPECT_GT(boundary.discharged_outside + boundary.discharged_multiplier, 0);

  // u^2 - 1/2 is positive near u = -1, inside the region.
  const auto bad = prove_nonpositive_on_region(u * u - TriPolynomial::constant(ratio(1, 2)), g, root, 100000);
  EXPECT_FALSE(bad.holds);
  EXPECT_FALSE(bad.budget_exhausted);
  const auto& w = bad.witness;
  EXPECT_GT(w[0] * w[0] - ratio(1, 2), 0);
  EXPECT_GE(g(w[0], w[1], w[2]), 0);

  const auto tiny = prove_nonpositive_on_region(u * u - TriPolynomial::constant(ratio(1, 2)), g, root, 3);
  EXPECT_TRUE(tiny.budget_exhausted);
}

TEST(Soundness, DecisionsIgnoreFloatingRoundingMode) {
  using orthopoly::TriPolynomial;
  const TriPolynomial u = TriPolynomial::u(), v = TriPolynomial::v(), t = TriPolynomial::t();
  const TriPolynomial g = TriPolynomial::constant(1) + Rational(2) * u * v * t - u * u - v * v - t * t;
  const Box root{{Rational(-1), Rational(-1), Rational(-1)}, {ratio(1, 2), ratio(1, 2), ratio(1, 2)}};
  const Polynomial p = Polynomial({ratio(-1, 3), ratio(1, 5), ratio(-7, 4), ratio(1, 9)});
  std::vector<std::string> outcomes;
  for (int mode : {FE_TONEAREST, FE_UPWARD, FE_DOWNWARD, FE_TOWARDZERO}) {
    std::fesetround(mode);
    const auto a = prove_nonpositive(p, -1, ratio(1, 2));
    const auto b = prove_nonpositive_on_region(TriPolynomial() - g - TriPolynomial::constant(ratio(1, 1000)), g, root, 100000);
    outcomes.push_back(std::to_string(a.holds) + to_string(a.witness) + std::to_string(b.holds) + std::to_string(b.boxes));
  }
  std::fesetround(FE_TONEAREST);
  for (const auto& o : outcomes) EXPECT_EQ(o, outcomes[0]);
}
