#include "extremal/finite/theta.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "extremal/conic/solver.hpp"

namespace extremal::finite {

using conic::ConeBlock;
using conic::ConeKind;
using conic::ConicProgram;

namespace {

constexpr double kUsableResidual = 1e-7;

void require_solved(const conic::SolveReport& r, const char* what) {
  if (r.status != conic::SolveStatus::Optimal &&
      std::max({r.final_gap, r.primal_infeasibility, r.dual_infeasibility}) > kUsableResidual)
    throw std::runtime_error(std::string(what) + ": solver failed (" + std::string(conic::to_string(r.status)) + ")");
}

double theta_program(const Graph& g, bool prime, const std::vector<BqcCut>& cuts) {
  const int n = g.vertex_count();
  if (n < 1 || n > 200) throw std::invalid_argument("theta: vertex count must be in 1..200");
  std::vector<std::pair<int, int>> nonedges;
  if (prime)
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (!g.adjacent(u, v)) nonedges.emplace_back(u, v);

  const int slacks = static_cast<int>(nonedges.size() + cuts.size());
  std::vector<ConeBlock> blocks{{ConeKind::Psd, n}};
  if (slacks > 0) blocks.push_back({ConeKind::Nonneg, slacks});
  const int m = 1 + g.edge_count() + slacks;
  ConicProgram p(blocks, m);

  for (int i = 0; i < n; ++i) {
    p.add_coefficient(0, 0, i, i, 1.0);
    for (int j = i; j < n; ++j) p.add_objective(0, i, j, 1.0);
  }
  p.set_rhs(0, 1.0);
  int row = 1;
  for (const auto& [u, v] : g.edges()) p.add_coefficient(row++, 0, u, v, 1.0);
  int slack = 0;
  for (const auto& [u, v] : nonedges) {
    p.add_coefficient(row, 0, u, v, 0.5);
    p.add_coefficient(row++, 1, slack++, -1.0);
  }
  for (const auto& cut : cuts) {
    const int s = static_cast<int>(cut.u.size());
    for (int a = 0; a < s; ++a)
      for (int b = a; b < s; ++b)
        if (cut.h(a, b) != 0.0) p.add_coefficient(row, 0, cut.u[a], cut.u[b], cut.h(a, b));
    p.add_coefficient(row++, 1, slack++, -1.0);
  }

  const auto r = conic::solve(p, 1e-9, 150);
  require_solved(r, "theta");
  return 0.5 * (r.primal_value + r.dual_value);
}

int packed_index(int i, int j, int s) { return i * s - i * (i - 1) / 2 + (j - i); }

}  // namespace

double theta_finite(const Graph& g, ThetaVariant variant) { return theta_program(g, variant == ThetaVariant::Prime, {}); }

double bqc_min_generator_value(const Eigen::MatrixXd& h) {
  const int s = static_cast<int>(h.rows());
  if (s < 1 || s > 16 || h.cols() != s) throw std::invalid_argument("bqc: ground set size must be in 1..16");
  double best = INFINITY;
  for (std::uint32_t f = 1; f < (1u << s); ++f) {
    double v = 0.0;
    for (int i = 0; i < s; ++i) {
      if (!(f >> i & 1)) continue;
      for (int j = 0; j < s; ++j)
        if (f >> j & 1) v += h(i, j);
    }
    best = std::min(best, v);
  }
  return best;
}

BqcResult bqc_separate(const Eigen::MatrixXd& m, double tolerance) {
  const int s = static_cast<int>(m.rows());
  if (s < 1 || s > 16 || m.cols() != s) throw std::invalid_argument("bqc: ground set size must be in 1..16");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + m.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("bqc: matrix is not symmetric");

  // min <H, m> over -1 <= H <= 1 with <H, f f^T> >= 0 on every generator.
  const int vars = s * (s + 1) / 2;
  const int generators = (1 << s) - 1;
  ConicProgram p({{ConeKind::Nonneg, generators + 2 * vars}}, vars);
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j) {
      const int var = packed_index(i, j, s);
      p.set_rhs(var, i == j ? m(i, i) : 2.0 * m(i, j));
      for (int f = 1; f <= generators; ++f)
        if ((f >> i & 1) && (f >> j & 1)) p.add_coefficient(var, 0, f - 1, i == j ? 1.0 : 2.0);
      p.add_coefficient(var, 0, generators + var, 1.0);
      p.add_coefficient(var, 0, generators + vars + var, -1.0);
    }
  for (int k = 0; k < 2 * vars; ++k) p.add_objective(0, generators + k, -1.0);

  const auto r = conic::solve(p, 1e-10, 150);
  require_solved(r, "bqc_separate");
  Eigen::MatrixXd h(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j) h(i, j) = h(j, i) = r.y(packed_index(i, j, s));
  // Tiny generator violations are absorbed by a multiple of the identity,
  // which is nonnegative on every nonzero 0/1 vector.
  const double low = bqc_min_generator_value(h);
  if (low < 0) h.diagonal().array() -= low;
  const double value = (h.array() * m.array()).sum();
  if (value < -tolerance) return BqcViolated{h, value};
  return BqcInside{};
}

double theta_with_cuts(const Graph& g, const std::vector<BqcCut>& cuts) {
  std::vector<BqcCut> scaled;
  for (const auto& cut : cuts) {
    const int s = static_cast<int>(cut.u.size());
    if (cut.h.rows() != s || cut.h.cols() != s) throw std::invalid_argument("cut matrix does not match its vertex subset");
    for (int a = 0; a < s; ++a) {
      if (cut.u[a] < 0 || cut.u[a] >= g.vertex_count()) throw std::invalid_argument("cut vertex out of range");
      for (int b = a + 1; b < s; ++b)
        if (cut.u[a] == cut.u[b]) throw std::invalid_argument("cut vertex repeated");
    }
    const double scale = cut.h.cwiseAbs().maxCoeff();
    if (scale == 0) continue;
    BqcCut c{cut.u, 0.5 * (cut.h + cut.h.transpose()) / scale};
    if (bqc_min_generator_value(c.h) < -1e-12) throw std::invalid_argument("cut is not valid for the Boolean-quadratic cone");
    scaled.push_back(std::move(c));
  }
  return theta_program(g, true, scaled);
}

Eigen::MatrixXd pentagon_inequality() {
  Eigen::VectorXd b(5);
  b << 1, 1, 1, -1, -1;
  Eigen::MatrixXd h = b * b.transpose();
  h.diagonal() -= b;
  return h;
}

}  // namespace extremal::finite
