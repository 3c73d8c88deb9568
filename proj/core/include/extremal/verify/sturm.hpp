#pragma once

#include <vector>

#include "extremal/orthopoly/polynomial.hpp"

namespace extremal::verify {

using orthopoly::Polynomial;

/// p / gcd(p, p'): same real roots as p, all simple.
Polynomial square_free_part(const Polynomial& p);

/// Sturm sequence of a square-free polynomial.
std::vector<Polynomial> sturm_sequence(const Polynomial& p);

/// Sign changes of the sequence at x, zeros skipped.
int sign_variations(const std::vector<Polynomial>& sequence, const Rational& x);

/// Number of distinct real roots of p in the closed interval [a, b].
int count_roots(const Polynomial& p, const Rational& a, const Rational& b);

struct NonPositivityProof {
  bool holds = false;
  Rational witness;        // p(witness) > 0 when !holds
  int distinct_roots = 0;  // roots of p in [a, b]
  int evaluations = 0;     // exact sign evaluations performed
  int segments = 0;        // root-isolating segments examined
};

/// Decides p <= 0 on [a, b] exactly: the interval is split at rational points
/// until every segment holds at most one root, and p is evaluated at one
/// point of each root-free open interval.
NonPositivityProof prove_nonpositive(const Polynomial& p, const Rational& a, const Rational& b);

}  // namespace extremal::verify
