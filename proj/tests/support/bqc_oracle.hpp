#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "extremal/rational.hpp"
#include "exact_lp.hpp"

namespace extremal::support {

using RationalSquare = std::vector<std::vector<Rational>>;

// Exact membership over all extreme rays: m = sum_f lambda_f f f^T with
// f in {0,1}^s \ {0} and lambda >= 0.
inline bool bqc_member_exact(const RationalSquare& m) {
  const int s = static_cast<int>(m.size());
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j) {
      std::vector<Rational> row;
      for (int f = 1; f < (1 << s); ++f) row.push_back((f >> i & 1) && (f >> j & 1) ? 1 : 0);
      a.push_back(row);
      b.push_back(m[i][j]);
    }
  return exact_feasible(a, b);
}

inline Eigen::MatrixXd to_double(const RationalSquare& m) {
  const int s = static_cast<int>(m.size());
  Eigen::MatrixXd out(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) out(i, j) = m[i][j].get_d();
  return out;
}

// A random nonnegative combination of generators on 2..5 points; when
// perturb is set one off-diagonal pair is lowered by 1/20.
inline RationalSquare random_bqc_instance(std::mt19937_64& rng, bool perturb) {
  const int s = 2 + static_cast<int>(rng() % 4);
  RationalSquare m(s, std::vector<Rational>(s));
  const int terms = 1 + static_cast<int>(rng() % 5);
  for (int k = 0; k < terms; ++k) {
    const unsigned f = 1 + static_cast<unsigned>(rng() % ((1u << s) - 1));
    const Rational w = ratio(1 + static_cast<long>(rng() % 10), 10);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j)
        if ((f >> i & 1) && (f >> j & 1)) m[i][j] += w;
  }
  if (perturb) {
    const int i = static_cast<int>(rng() % s);
    const int j = (i + 1 + static_cast<int>(rng() % (s - 1))) % s;
    m[i][j] -= ratio(1, 20);
    m[j][i] -= ratio(1, 20);
  }
  return m;
}

}  // namespace extremal::support
