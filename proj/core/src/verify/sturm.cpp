#include "extremal/verify/sturm.hpp"

#include <stdexcept>

namespace extremal::verify {

Polynomial square_free_part(const Polynomial& p) {
  if (p.degree() <= 0) return p;
  const Polynomial g = gcd(p, p.derivative());
  return orthopoly::divide(p, g).first;
}

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  Polynomial next = p.derivative();
  while (!next.is_zero()) {
    seq.push_back(next);
    const auto& a = seq[seq.size() - 2];
    const auto& b = seq.back();
    Polynomial r = -orthopoly::divide(a, b).second;
    // Positive rescaling keeps signs while limiting coefficient growth.
    if (!r.is_zero()) r *= 1 / abs(r.leading());
    next = std::move(r);
  }
  return seq;
}

int sign_variations(const std::vector<Polynomial>& sequence, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : sequence) {
    const int s = sign(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

namespace {

struct Counter {
  Polynomial q;
  std::vector<Polynomial> seq;

  explicit Counter(const Polynomial& p) : q(square_free_part(p)), seq(sturm_sequence(q)) {}
  // Distinct roots in (a, b].
  int half_open(const Rational& a, const Rational& b) const { return sign_variations(seq, a) - sign_variations(seq, b); }
  bool root_at(const Rational& x) const { return q(x) == 0; }
};

}  // namespace

int count_roots(const Polynomial& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw std::invalid_argument("count_roots: zero polynomial");
  if (b < a) throw std::invalid_argument("count_roots: empty interval");
  const Counter c(p);
  return c.half_open(a, b) + (c.root_at(a) ? 1 : 0);
}

NonPositivityProof prove_nonpositive(const Polynomial& p, const Rational& a, const Rational& b) {
  if (b < a) throw std::invalid_argument("prove_nonpositive: empty interval");
  NonPositivityProof proof;
  if (p.is_zero()) {
    proof.holds = true;
    return proof;
  }
  const Counter counter(p);

  auto positive_at = [&](const Rational& x) {
    ++proof.evaluations;
    if (p(x) > 0) {
      proof.witness = x;
      return true;
    }
    return false;
  };

  if (positive_at(a) || positive_at(b)) return proof;
  const int total = counter.half_open(a, b);
  proof.distinct_roots = total + (counter.root_at(a) ? 1 : 0);

  // Each pending segment (l, r] has its root count; p(l), p(r) are known <= 0.
  struct Segment {
    Rational l, r;
    int roots;
  };
  std::vector<Segment> stack{{a, b, total}};
  while (!stack.empty()) {
    Segment s = stack.back();
    stack.pop_back();
    ++proof.segments;
    if (s.l == s.r) continue;
    const bool l_root = counter.root_at(s.l), r_root = counter.root_at(s.r);
    if (s.roots == 0) {
      // p has no root in (l, r]: its sign there is that of p(r) (nonzero).
      continue;
    }
    if (s.roots == 1 && r_root) {
      // (l, r) is root-free.
      const Rational m = (s.l + s.r) / 2;
      if (positive_at(m)) return proof;
      continue;
    }
    if (s.roots == 1 && !l_root) {
      // Root strictly inside: [l, root) and (root, r] are covered by p(l), p(r) < 0.
      continue;
    }
    const Rational m = (s.l + s.r) / 2;
    if (positive_at(m)) return proof;
    const int left = counter.half_open(s.l, m);
    stack.push_back({m, s.r, s.roots - left});
    stack.push_back({s.l, m, left});
  }
  proof.holds = true;
  return proof;
}

}  // namespace extremal::verify
