#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "extremal/verify/exact_matrix.hpp"

namespace extremal::verify {

inline constexpr std::string_view kCertificateSchema = "extremal-conic/cert-v1";
inline constexpr std::string_view kToolkitVersion = "extremal 0.1.0";

/// Exact data proving an upper bound, plus the transcript of the run that
/// checked it.  Everything needed to re-check is in the data; the transcript
/// is reproduced, not trusted.
struct Certificate {
  std::string problem;
  int n = 0;
  int d = 0;
  Rational certified_bound;
  std::map<std::string, RationalVector> vectors;
  std::map<std::string, RationalMatrix> matrices;
  std::map<std::string, std::vector<std::vector<int>>> integers;
  std::string method;
  std::map<std::string, std::string> transcript;
  std::string version{kToolkitVersion};

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Serialized form; rationals are {"num", "den"} decimal string pairs.
std::string to_json(const Certificate& certificate);
/// Throws CertificationError(Malformed) on any schema violation.
Certificate certificate_from_json(std::string_view text);

/// SHA-256 (hex) of the canonical serialization of the data section.
std::string data_digest(const Certificate& certificate);

/// Stores the digest of the data in the transcript.
void seal(Certificate& certificate);

/// Re-derives the certificate from its data alone and returns the result.
/// Throws CertificationError when the data does not prove the bound or when
/// any stored field differs from the re-derived one.
Certificate verify_certificate(const Certificate& certificate);

/// floor(certified_bound) as a decimal string.
std::string certified_integer(const Certificate& certificate);

/// Witness encoding used by all certificates: pivot order and diagonal.
void store_ldlt(Certificate& c, const std::string& name, const LdltWitness& w);
LdltWitness load_ldlt(const Certificate& c, const std::string& name);

}  // namespace extremal::verify
