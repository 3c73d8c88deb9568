#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "extremal/orthopoly/tripolynomial.hpp"

namespace extremal::verify {

using orthopoly::TriPolynomial;

struct Box {
  std::array<Rational, 3> lo;
  std::array<Rational, 3> hi;

  std::array<Rational, 3> center() const;
  std::string to_string() const;
};

struct Enclosure {
  Rational lower;
  Rational upper;
};

/// Exact enclosure of p over the box from its Taylor expansion at the center:
/// value at the center plus/minus the absolute coefficient mass, with
/// all-even monomials contributing one-sided.
Enclosure enclose(const TriPolynomial& p, const Box& box);

/// Fixed-point Taylor model of a polynomial on a box: on the box,
/// p(center + halfwidth * x) = 2^scale_exponent * (q(x) + e(x)) for x in
/// [-1, 1]^3, with q having 128-bit integer coefficients and |e| <= error.
/// Every decision derived from it is exact integer arithmetic.
class TaylorModel {
 public:
  static TaylorModel from_polynomial(const TriPolynomial& p, const Box& box);

  /// Model of the lower (upper == false) or upper half along one axis.
  TaylorModel split(int axis, bool upper) const;

  /// Integer upper bound of q + e over [-1, 1]^3.
  __int128 upper_bound() const;
  /// Rigorous bounds for the value at the box center, scaled.
  __int128 center_lower() const { return coef_[0] - error_; }

  /// upper_bound() in true units, for diagnostics and tests.
  Rational upper_bound_exact() const;
  /// True when some lambda >= 0 makes the bound of this + lambda * g
  /// nonpositive, g being a model on the same box.  The bound is convex and
  /// piecewise linear in lambda, so only its breakpoints need checking.
  bool multiplier_discharges(const TaylorModel& g) const;

  const std::array<int, 3>& degrees() const { return deg_; }
  __int128 coefficient(int a, int b, int c) const { return coef_[index(a, b, c)]; }
  __int128 error() const { return error_; }
  int scale_exponent() const { return scale_exponent_; }

 private:
  std::size_t index(int a, int b, int c) const { return (static_cast<std::size_t>(a) * (deg_[1] + 1) + b) * (deg_[2] + 1) + c; }
  void renormalize(int extra_shift);

  std::array<int, 3> deg_{};
  std::vector<__int128> coef_;
  __int128 error_ = 0;
  int scale_exponent_ = 0;
};

/// Exact expansion of p(center + halfwidth * x) in the local coordinates x.
TriPolynomial local_expansion(const TriPolynomial& p, const Box& box);

struct RegionProof {
  bool holds = false;
  bool budget_exhausted = false;
  std::int64_t boxes = 0;
  std::int64_t discharged_bound = 0;
  std::int64_t discharged_outside = 0;
  std::int64_t discharged_multiplier = 0;
  std::int64_t pruned_symmetry = 0;
  std::int64_t unresolved = 0;  // boxes that reached the resolution limit
  int max_depth = 0;
  Box failure_box;                  // first undischarged box when exhausted
  std::array<Rational, 3> witness;  // point with p > 0 and g >= 0 when violated
};

/// Proves p <= 0 on {x in root : g(x) >= 0} by exact branch and bound.  When
/// p and g are invariant under permuting the variables (checked exactly) and
/// the root box is a cube, only boxes meeting u <= v <= t are explored.  Boxes
/// are halved at most max_level times per axis.
RegionProof prove_nonpositive_on_region(const TriPolynomial& p, const TriPolynomial& g, const Box& root,
                                        std::int64_t budget, int max_level = 40);

}  // namespace extremal::verify
