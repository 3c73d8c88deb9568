#include <gtest/gtest.h>

#include "extremal/finite/graph.hpp"
#include "extremal/finite/lasserre.hpp"
#include "extremal/orthopoly/gegenbauer.hpp"
#include "extremal/orthopoly/three_point.hpp"
#include "extremal/sphere/certify.hpp"
#include "extremal/verify/certify.hpp"
#include "extremal/verify/errors.hpp"
#include "../support/mutation.hpp"

using namespace extremal;
using namespace extremal::verify;
using orthopoly::Polynomial;

namespace {

Polynomial linear(const Rational& root) { return Polynomial({-root, Rational(1)}); }

// Coefficients of p in the basis P_0^n..P_d^n, by peeling off leading terms.
RationalVector gegenbauer_coordinates(Polynomial p, int n) {
  const int d = p.degree();
  const auto family = orthopoly::gegenbauer_family(n, d);
  RationalVector c(d + 1);
  for (int k = d; k >= 0; --k) {
    c[k] = p.coefficient(k) / family[k].leading();
    p -= family[k] * c[k];
  }
  EXPECT_TRUE(p.is_zero());
  return c;
}

Certificate e8_certificate() {
  Polynomial p = linear(-1) * linear(ratio(-1, 2)) * linear(ratio(-1, 2)) * linear(0) * linear(0) * linear(ratio(1, 2));
  const RationalVector c = gegenbauer_coordinates(p, 8);
  RationalVector f(6);
  for (int k = 1; k <= 6; ++k) f[k - 1] = c[k] / c[0];
  return certify_univariate(f, 8, 6);
}

}  // namespace

TEST(CertifyUnivariate, ZeroCoefficientsRejected) {
  try {
    certify_univariate(RationalVector(6), 8, 6);
    FAIL() << "accepted p = 1";
  } catch (const CertificationError& e) {
    EXPECT_EQ(e.kind(), FailureKind::SignViolation);
    EXPECT_FALSE(e.witness().empty());
  }
}

TEST(CertifyUnivariate, NegativeCoefficientRejected) {
  RationalVector f(3);
  f[0] = -1;
  EXPECT_THROW(certify_univariate(f, 3, 3), CertificationError);
  EXPECT_THROW(certify_univariate(RationalVector(2), 3, 3), CertificationError);
}

TEST(CertifyUnivariate, ExactE8PolynomialGives240) {
  const Certificate c = e8_certificate();
  EXPECT_EQ(c.certified_bound, Rational(240));
  EXPECT_EQ(certified_integer(c), "240");
  for (const auto& x : c.vectors.at("f")) EXPECT_GE(x, 0);
}

TEST(CertifyTrivariate, ZeroMatricesRejected) {
  std::vector<RationalMatrix> g;
  for (int k = 0; k <= 4; ++k) g.emplace_back(5 - k, 5 - k);
  try {
    certify_trivariate(g, 3, 4, 1000);
    FAIL() << "accepted F = 0";
  } catch (const CertificationError& e) {
    EXPECT_EQ(e.kind(), FailureKind::SignViolation);
  }
}

TEST(CertifyTrivariate, IndefiniteMatrixRejected) {
  std::vector<RationalMatrix> g;
  for (int k = 0; k <= 3; ++k) g.emplace_back(4 - k, 4 - k);
  g[1](0, 0) = -1;
  try {
    certify_trivariate(g, 3, 3, 1000);
    FAIL();
  } catch (const CertificationError& e) {
    EXPECT_EQ(e.kind(), FailureKind::NotPsd);
  }
}

TEST(CertificateJson, RoundTripAndIdempotence) {
  const Certificate c = e8_certificate();
  const std::string text = to_json(c);
  const Certificate back = certificate_from_json(text);
  EXPECT_EQ(back, c);
  EXPECT_EQ(to_json(back), text);
  const Certificate again = verify_certificate(back);
  EXPECT_EQ(to_json(again), text);
}

TEST(CertificateJson, MalformedInputRejected) {
  EXPECT_THROW(certificate_from_json("{"), CertificationError);
  EXPECT_THROW(certificate_from_json("[]"), CertificationError);
  std::string text = to_json(e8_certificate());
  text.replace(text.find("extremal-conic/cert-v1"), 22, "extremal-conic/cert-v0");
  EXPECT_THROW(certificate_from_json(text), CertificationError);
}

TEST(CertificateJson, DigestGuardsTheData) {
  Certificate c = e8_certificate();
  c.vectors.at("f")[0] += ratio(1, 1000000);
  try {
    verify_certificate(c);
    FAIL();
  } catch (const CertificationError& e) {
    EXPECT_EQ(e.kind(), FailureKind::Mismatch);
  }
  seal(c);
  EXPECT_THROW(verify_certificate(c), CertificationError);
}

TEST(CertificateJson, TranscriptIsRederived) {
  Certificate c = e8_certificate();
  c.transcript["sturm_segments"] = "0";
  EXPECT_THROW(verify_certificate(c), CertificationError);
}

TEST(CertificateMutation, EveryDigitOfLpCertificate) {
  const auto run = sphere::certify_kissing_lp(8, 6);
  ASSERT_TRUE(run.certificate);
  const auto mutations = support::digit_mutations(to_json(*run.certificate));
  ASSERT_GT(mutations.size(), 20u);
  for (const auto& m : mutations) EXPECT_TRUE(support::mutation_rejected(m));
}

TEST(CertificateMutation, EveryDigitOfFiniteCertificate) {
  const finite::Graph c5 = finite::cycle_graph(5);
  const Certificate c = finite::to_certificate(c5, finite::lasserre_dual_certificate(c5, 1));
  EXPECT_EQ(verify_certificate(c), c);
  for (const auto& m : support::digit_mutations(to_json(c))) EXPECT_TRUE(support::mutation_rejected(m));
}

TEST(CertificateMutation, EveryDigitOfAvoidCertificate) {
  const Certificate c = sphere::certify_avoid_orthogonal(sphere::avoid_orthogonal(4, 6));
  for (const auto& m : support::digit_mutations(to_json(c))) EXPECT_TRUE(support::mutation_rejected(m));
}
