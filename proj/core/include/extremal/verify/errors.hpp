#pragma once

#include <stdexcept>
#include <string>

#include "extremal/rational.hpp"

namespace extremal::verify {

enum class FailureKind { SignViolation, BudgetExhausted, NotPsd, InconsistentSystem, Mismatch, Malformed };

const char* to_string(FailureKind kind);
using extremal::to_string;

/// Raised when exact verification rejects candidate data.  witness() carries a
/// human-readable rational point, box or vector that demonstrates the failure.
class CertificationError : public std::runtime_error {
 public:
  CertificationError(FailureKind kind, const std::string& message, std::string witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), witness_(std::move(witness)) {}

  FailureKind kind() const { return kind_; }
  const std::string& witness() const { return witness_; }

 private:
  FailureKind kind_;
  std::string witness_;
};

}  // namespace extremal::verify
