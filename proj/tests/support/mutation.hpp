#pragma once

#include <regex>
#include <string>
#include <vector>

#include "extremal/verify/certificate.hpp"
#include "extremal/verify/errors.hpp"

namespace extremal::support {

// Every copy of the JSON text with one digit of one rational changed.
inline std::vector<std::string> digit_mutations(const std::string& json, std::size_t stride = 1) {
  static const std::regex rational_field("\"(num|den)\": \"-?([0-9]+)\"");
  std::vector<std::string> out;
  std::size_t counter = 0;
  for (auto it = std::sregex_iterator(json.begin(), json.end(), rational_field); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    const std::size_t start = static_cast<std::size_t>(m.position(2));
    for (std::size_t i = 0; i < static_cast<std::size_t>(m.length(2)); ++i, ++counter) {
      if (counter % stride != 0) continue;
      std::string copy = json;
      copy[start + i] = static_cast<char>('0' + (copy[start + i] - '0' + 1) % 10);
      out.push_back(std::move(copy));
    }
  }
  return out;
}

// True when the text is rejected as is and also after resealing its digest.
inline bool mutation_rejected(const std::string& text) {
  verify::Certificate c;
  try {
    c = verify::certificate_from_json(text);
  } catch (const verify::CertificationError&) {
    return true;
  }
  try {
    verify::verify_certificate(c);
    return false;
  } catch (const verify::CertificationError&) {
  }
  verify::seal(c);
  try {
    verify::verify_certificate(c);
    return false;
  } catch (const verify::CertificationError&) {
    return true;
  }
}

}  // namespace extremal::support
