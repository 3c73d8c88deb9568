#include "extremal/verify/box_bound.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace extremal::verify {

namespace {

using i128 = __int128;

constexpr int kCoefficientBits = 60;

Integer to_integer(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 m = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Integer hi = static_cast<unsigned long>(static_cast<std::uint64_t>(m >> 64));
  Integer lo = static_cast<unsigned long>(static_cast<std::uint64_t>(m));
  Integer out = (hi << 64) + lo;
  return neg ? Integer(-out) : out;
}

i128 from_integer(const Integer& z) {
  const bool neg = sgn(z) < 0;
  Integer m = abs(z);
  if (mpz_sizeinbase(m.get_mpz_t(), 2) > 126) throw std::overflow_error("TaylorModel: coefficient too large");
  Integer hi = m >> 64;
  Integer lo = m - (hi << 64);
  const unsigned __int128 v = (static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t())) << 64) | mpz_get_ui(lo.get_mpz_t());
  return neg ? -static_cast<i128>(v) : static_cast<i128>(v);
}

int bit_length(unsigned __int128 v) {
  int n = 0;
  while (v) {
    v >>= 1;
    ++n;
  }
  return n;
}

i128 abs128(i128 v) { return v < 0 ? -v : v; }

bool all_even(int a, int b, int c) { return a % 2 == 0 && b % 2 == 0 && c % 2 == 0; }

// Rational c * 2^e exactly.
Rational times_pow2(const Rational& c, int e) {
  Rational out = c;
  if (e > 0)
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), e);
  else if (e < 0)
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), -e);
  return out;
}

// Dense Taylor shift x -> c + h x of one axis of a dense trivariate array.
void shift_axis(std::vector<Rational>& a, const std::array<int, 3>& deg, int axis, const Rational& c, const Rational& h) {
  const int n = deg[axis];
  const int s1 = deg[1] + 1, s2 = deg[2] + 1;
  auto at = [&](int i, int j, int k) -> Rational& { return a[(static_cast<std::size_t>(i) * s1 + j) * s2 + k]; };
  std::array<int, 3> other{};
  std::vector<Rational> line(n + 1);
  const int o1 = axis == 0 ? 1 : 0, o2 = axis == 2 ? 1 : 2;
  for (int x = 0; x <= deg[o1]; ++x)
    for (int y = 0; y <= deg[o2]; ++y) {
      other[o1] = x;
      other[o2] = y;
      auto ref = [&](int j) -> Rational& {
        std::array<int, 3> idx = other;
        idx[axis] = j;
        return at(idx[0], idx[1], idx[2]);
      };
      bool any = false;
      for (int j = 0; j <= n; ++j) {
        line[j] = ref(j);
        any = any || line[j] != 0;
      }
      if (!any) continue;
      // p(c + h x): Taylor shift by c, then scale by powers of h.
      for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) line[j] += c * line[j + 1];
      Rational hp = 1;
      for (int j = 0; j <= n; ++j) {
        ref(j) = line[j] * hp;
        hp *= h;
      }
    }
}

}  // namespace

std::array<Rational, 3> Box::center() const {
  return {(lo[0] + hi[0]) / 2, (lo[1] + hi[1]) / 2, (lo[2] + hi[2]) / 2};
}

std::string Box::to_string() const {
  std::ostringstream out;
  for (int i = 0; i < 3; ++i) out << (i ? " x " : "") << "[" << extremal::to_string(lo[i]) << ", " << extremal::to_string(hi[i]) << "]";
  return out.str();
}

TriPolynomial local_expansion(const TriPolynomial& p, const Box& box) {
  const std::array<int, 3> deg{std::max(0, p.degree(0)), std::max(0, p.degree(1)), std::max(0, p.degree(2))};
  std::vector<Rational> a(static_cast<std::size_t>(deg[0] + 1) * (deg[1] + 1) * (deg[2] + 1));
  for (const auto& [e, c] : p.terms()) a[(static_cast<std::size_t>(e.u) * (deg[1] + 1) + e.v) * (deg[2] + 1) + e.t] = c;
  const auto c = box.center();
  for (int axis = 0; axis < 3; ++axis) shift_axis(a, deg, axis, c[axis], (box.hi[axis] - box.lo[axis]) / 2);
  TriPolynomial out;
  for (int i = 0; i <= deg[0]; ++i)
    for (int j = 0; j <= deg[1]; ++j)
      for (int k = 0; k <= deg[2]; ++k) out.add_term({i, j, k}, a[(static_cast<std::size_t>(i) * (deg[1] + 1) + j) * (deg[2] + 1) + k]);
  return out;
}

Enclosure enclose(const TriPolynomial& p, const Box& box) {
  const TriPolynomial q = local_expansion(p, box);
  Enclosure e{q.coefficient({0, 0, 0}), q.coefficient({0, 0, 0})};
  for (const auto& [ex, c] : q.terms()) {
    if (ex.total() == 0) continue;
    if (all_even(ex.u, ex.v, ex.t)) {
      (c > 0 ? e.upper : e.lower) += c;
    } else {
      e.upper += abs(c);
      e.lower -= abs(c);
    }
  }
  return e;
}

TaylorModel TaylorModel::from_polynomial(const TriPolynomial& p, const Box& box) {
  TaylorModel m;
  m.deg_ = {std::max(0, p.degree(0)), std::max(0, p.degree(1)), std::max(0, p.degree(2))};
  m.coef_.assign(static_cast<std::size_t>(m.deg_[0] + 1) * (m.deg_[1] + 1) * (m.deg_[2] + 1), 0);
  const TriPolynomial q = local_expansion(p, box);
  Rational biggest = 0;
  for (const auto& [e, c] : q.terms()) biggest = std::max(biggest, Rational(abs(c)));
  if (biggest == 0) return m;
  // Choose s with 2^s * biggest just below 2^kCoefficientBits.
  const long lognum = static_cast<long>(mpz_sizeinbase(biggest.get_num_mpz_t(), 2));
  const long logden = static_cast<long>(mpz_sizeinbase(biggest.get_den_mpz_t(), 2));
  const int s = static_cast<int>(kCoefficientBits - 1 - (lognum - logden + 1));
  for (const auto& [e, c] : q.terms()) m.coef_[m.index(e.u, e.v, e.t)] = from_integer(floor(times_pow2(c, s)));
  m.error_ = q.terms().empty() ? 0 : static_cast<i128>(m.coef_.size());
  m.scale_exponent_ = -s;
  return m;
}

void TaylorModel::renormalize(int extra_shift) {
  unsigned __int128 biggest = 0;
  for (i128 v : coef_) biggest = std::max(biggest, static_cast<unsigned __int128>(abs128(v)));
  const int r = std::max(0, bit_length(biggest) - kCoefficientBits);
  scale_exponent_ += r - extra_shift;
  if (r == 0) return;
  for (i128& v : coef_) v >>= r;  // arithmetic shift: floor division
  // ceil(error / 2^r) plus one unit per truncated coefficient.
  error_ = ((error_ + ((static_cast<i128>(1) << r) - 1)) >> r) + static_cast<i128>(coef_.size());
}

TaylorModel TaylorModel::split(int axis, bool upper) const {
  TaylorModel m = *this;
  const int n = deg_[axis];
  const int sigma = upper ? 1 : -1;
  const int s1 = deg_[1] + 1, s2 = deg_[2] + 1;
  const std::size_t stride = axis == 0 ? static_cast<std::size_t>(s1) * s2 : axis == 1 ? s2 : 1;
  std::vector<i128> line(n + 1);
  for (std::size_t base = 0; base < coef_.size(); ++base) {
    // Visit each line once, from its zero-index element.
    const std::size_t pos = axis == 0 ? base / (static_cast<std::size_t>(s1) * s2)
                            : axis == 1 ? (base / s2) % s1
                                        : base % s2;
    if (pos != 0) continue;
    bool any = false;
    for (int j = 0; j <= n; ++j) {
      line[j] = coef_[base + j * stride];
      any = any || line[j] != 0;
    }
    if (!any) continue;
    // 2^n q((x' + sigma) / 2): scale, then Taylor shift by sigma.
    for (int j = 0; j <= n; ++j) line[j] <<= (n - j);
    for (int i = 0; i < n; ++i)
      for (int j = n - 1; j >= i; --j) line[j] += sigma * line[j + 1];
    for (int j = 0; j <= n; ++j) m.coef_[base + j * stride] = line[j];
  }
  m.error_ = error_ << n;
  m.renormalize(n);
  return m;
}

i128 TaylorModel::upper_bound() const {
  i128 u = coef_.empty() ? 0 : coef_[0];
  for (int a = 0; a <= deg_[0]; ++a)
    for (int b = 0; b <= deg_[1]; ++b)
      for (int c = 0; c <= deg_[2]; ++c) {
        if (a + b + c == 0) continue;
        const i128 v = coef_[index(a, b, c)];
        if (v == 0) continue;
        u += all_even(a, b, c) ? std::max<i128>(v, 0) : abs128(v);
      }
  return u + error_;
}

Rational TaylorModel::upper_bound_exact() const {
  return times_pow2(Rational(to_integer(upper_bound())), scale_exponent_);
}

bool TaylorModel::multiplier_discharges(const TaylorModel& g) const {
  // Terms shared with g vary with lambda; the rest are a constant.
  struct Term {
    Rational b, g;
    bool one_sided;
    bool constant;
  };
  std::vector<Term> terms;
  std::vector<bool> touched(coef_.size(), false);
  for (int a = 0; a <= g.deg_[0]; ++a)
    for (int b = 0; b <= g.deg_[1]; ++b)
      for (int c = 0; c <= g.deg_[2]; ++c) {
        const i128 gv = g.coef_[g.index(a, b, c)];
        if (gv == 0) continue;
        i128 bv = 0;
        if (a <= deg_[0] && b <= deg_[1] && c <= deg_[2]) {
          touched[index(a, b, c)] = true;
          bv = coef_[index(a, b, c)];
        }
        terms.push_back({Rational(to_integer(bv)), Rational(to_integer(gv)), all_even(a, b, c), a + b + c == 0});
      }
  if (terms.empty()) return false;
  i128 rest = error_;
  if (!touched[0]) rest += coef_[0];
  for (int a = 0; a <= deg_[0]; ++a)
    for (int b = 0; b <= deg_[1]; ++b)
      for (int c = 0; c <= deg_[2]; ++c) {
        const std::size_t i = index(a, b, c);
        if (touched[i] || a + b + c == 0) continue;
        const i128 v = coef_[i];
        rest += all_even(a, b, c) ? std::max<i128>(v, 0) : abs128(v);
      }
  const Rational constant(to_integer(rest));
  const Rational g_error(to_integer(g.error_));
  auto bound = [&](const Rational& lambda) {
    Rational acc = constant + lambda * g_error;
    for (const auto& t : terms) {
      const Rational v = t.b + lambda * t.g;
      if (t.constant)
        acc += v;
      else if (t.one_sided)
        acc += v > 0 ? v : Rational(0);
      else
        acc += abs(v);
    }
    return acc;
  };
  // The lambda = 0 case is the plain bound, already tried by the caller.
  for (const auto& t : terms) {
    if (t.constant || t.g == 0) continue;
    const Rational lambda = -t.b / t.g;
    if (lambda > 0 && bound(lambda) <= 0) return true;
  }
  return false;
}

namespace {

bool symmetric(const TriPolynomial& p) {
  for (const auto& perm : orthopoly::all_permutations())
    if (!(p.permuted(perm) == p)) return false;
  return true;
}

// Sub-box of the root: axis i spans [k_i, k_i + 1] / 2^level_i of the root side.
struct Node {
  TaylorModel p, g;
  std::array<std::uint64_t, 3> k{};
  std::array<int, 3> level{};
};

Box to_box(const Box& root, const Node& n) {
  Box b;
  for (int i = 0; i < 3; ++i) {
    const Rational w = root.hi[i] - root.lo[i];
    const Rational scale = times_pow2(w, -n.level[i]);
    b.lo[i] = root.lo[i] + scale * Rational(Integer(static_cast<unsigned long>(n.k[i])));
    b.hi[i] = b.lo[i] + scale;
  }
  return b;
}

// k_a / 2^la > (k_b + 1) / 2^lb, i.e. the box lies beyond the other one.
bool beyond(std::uint64_t ka, int la, std::uint64_t kb, int lb) {
  const unsigned __int128 lhs = static_cast<unsigned __int128>(ka) << lb;
  const unsigned __int128 rhs = static_cast<unsigned __int128>(kb + 1) << la;
  return lhs > rhs;
}

}  // namespace

RegionProof prove_nonpositive_on_region(const TriPolynomial& p, const TriPolynomial& g, const Box& root,
                                        std::int64_t budget, int max_level) {
  for (int i = 0; i < 3; ++i)
    if (!(root.lo[i] < root.hi[i])) throw std::invalid_argument("prove_nonpositive_on_region: degenerate root box");
  if (max_level < 1 || max_level > 60) throw std::invalid_argument("prove_nonpositive_on_region: max_level out of range");
  const bool cube = root.lo[0] == root.lo[1] && root.lo[1] == root.lo[2] && root.hi[0] == root.hi[1] && root.hi[1] == root.hi[2];
  const bool use_symmetry = cube && symmetric(p) && symmetric(g);

  RegionProof proof;
  bool have_failure = false;
  std::vector<Node> stack;
  stack.push_back({TaylorModel::from_polynomial(p, root), TaylorModel::from_polynomial(g, root), {}, {}});
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    ++proof.boxes;
    proof.max_depth = std::max(proof.max_depth, node.level[0] + node.level[1] + node.level[2]);

    if (use_symmetry && (beyond(node.k[0], node.level[0], node.k[1], node.level[1]) ||
                         beyond(node.k[1], node.level[1], node.k[2], node.level[2]))) {
      ++proof.pruned_symmetry;
      continue;
    }
    if (node.p.upper_bound() <= 0) {
      ++proof.discharged_bound;
      continue;
    }
    if (node.g.upper_bound() < 0) {
      ++proof.discharged_outside;
      continue;
    }
    if (node.p.multiplier_discharges(node.g)) {
      ++proof.discharged_multiplier;
      continue;
    }
    if (node.p.center_lower() > 0) {
      const Box b = to_box(root, node);
      const auto c = b.center();
      if (g(c[0], c[1], c[2]) >= 0) {
        proof.witness = c;
        proof.failure_box = b;
        return proof;
      }
    }
    int axis = 0;
    for (int i = 1; i < 3; ++i)
      if (node.level[i] < node.level[axis]) axis = i;
    if (proof.boxes >= budget || node.level[axis] >= max_level) {
      if (!have_failure) proof.failure_box = to_box(root, node);
      have_failure = true;
      ++proof.unresolved;
      if (proof.boxes >= budget) break;
      continue;
    }
    Node lower{node.p.split(axis, false), node.g.split(axis, false), node.k, node.level};
    Node upper{node.p.split(axis, true), node.g.split(axis, true), node.k, node.level};
    lower.k[axis] = 2 * node.k[axis];
    upper.k[axis] = 2 * node.k[axis] + 1;
    ++lower.level[axis];
    ++upper.level[axis];
    stack.push_back(std::move(upper));
    stack.push_back(std::move(lower));
  }
  proof.budget_exhausted = have_failure;
  proof.holds = !have_failure;
  return proof;
}

}  // namespace extremal::verify
