#include "extremal/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace extremal {

Rational exact(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("exact: non-finite value");
  Rational q(x);  // mpq_set_d is exact
  return q;
}

Rational rationalize(double x, const Integer& max_denominator) {
  if (max_denominator < 1) throw std::invalid_argument("rationalize: denominator cap must be >= 1");
  Rational value = exact(x);
  if (value.get_den() <= max_denominator) return value;

  // Convergents p_k/q_k of the continued fraction of value.
  Integer p_prev = 0, q_prev = 1, p = 1, q = 0;
  Integer num = value.get_num(), den = value.get_den();
  while (den != 0) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Integer q_next = a * q + q_prev;
    if (q_next > max_denominator) {
      // Best semiconvergent within the cap, compared against the last convergent.
      Integer k = (max_denominator - q_prev) / q;
      Rational semi(k * p + p_prev, k * q + q_prev);
      semi.canonicalize();
      Rational conv(p, q);
      conv.canonicalize();
      return abs(semi - value) < abs(conv - value) ? semi : conv;
    }
    Integer p_next = a * p + p_prev;
    p_prev = p; q_prev = q; p = p_next; q = q_next;
    Integer r = num - a * den;
    num = den;
    den = r;
  }
  Rational result(p, q);
  result.canonicalize();
  return result;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
  auto valid_int = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("parse_rational: malformed rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("parse_rational: zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace extremal
