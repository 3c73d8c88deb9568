#include "extremal/sphere/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "extremal/orthopoly/bessel.hpp"
#include "extremal/orthopoly/gegenbauer.hpp"
#include "extremal/orthopoly/three_point.hpp"

namespace extremal::sphere {

namespace {

using conic::ConeBlock;
using conic::ConeKind;
using conic::ConicProgram;

SolverSummary summarize(const conic::SolveReport& r, int solves) {
  return {r.status, r.iterations, r.final_gap, solves};
}

// Stalled solves are still usable when their residuals are small; every
// bound is certified or rechecked downstream anyway.
constexpr double kUsableResidual = 1e-7;
constexpr double kUsableGap = 1e-4;

void require_optimal(const conic::SolveReport& r, const char* what) {
  if (r.status != conic::SolveStatus::Optimal && std::max({r.final_gap, r.primal_infeasibility, r.dual_infeasibility}) > kUsableResidual)
    throw std::runtime_error(std::string(what) + ": solver failed (" + std::string(conic::to_string(r.status)) + ", gap " +
                             std::to_string(r.final_gap) + ", infeasibility " +
                             std::to_string(std::max(r.primal_infeasibility, r.dual_infeasibility)) + ")");
}

// The minimization side is what gets certified: a dual-feasible iterate with a
// small gap is usable even when the multipliers stall.
bool dual_usable(const conic::SolveReport& r) {
  return r.status == conic::SolveStatus::Optimal ||
         (r.dual_infeasibility <= kUsableResidual && r.final_gap <= kUsableGap && r.primal_infeasibility <= kUsableGap);
}

void require_dual_usable(const conic::SolveReport& r, const char* what) {
  if (!dual_usable(r)) require_optimal(r, what);
}

template <class F>
double golden_maximize(F f, double a, double b, double tol = 1e-12) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  return (a + b) / 2;
}

// Local maxima of f over [a, b] located on a uniform scan and polished.
template <class F>
std::vector<double> local_maxima(F f, double a, double b, int scan) {
  std::vector<double> x(scan + 1), v(scan + 1);
  for (int i = 0; i <= scan; ++i) {
    x[i] = a + (b - a) * i / scan;
    v[i] = f(x[i]);
  }
  std::vector<double> out;
  for (int i = 0; i <= scan; ++i) {
    const bool left = i == 0 || v[i] >= v[i - 1];
    const bool right = i == scan || v[i] >= v[i + 1];
    if (!(left && right)) continue;
    if (i == 0 || i == scan)
      out.push_back(x[i]);
    else
      out.push_back(golden_maximize(f, x[i - 1], x[i + 1]));
  }
  return out;
}

double lp_polynomial(int n, const std::vector<double>& f, double t) {
  const auto p = orthopoly::gegenbauer_values(n, static_cast<int>(f.size()), t);
  double s = 1.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * p[k + 1];
  return s;
}

}  // namespace

std::string to_string(Problem problem) {
  switch (problem) {
    case Problem::KissingLP: return "kissing-lp";
    case Problem::KissingThreePoint: return "kissing-three-point";
    case Problem::AvoidOrthogonalSphere: return "avoid-orthogonal-sphere";
    case Problem::AvoidDistancePlane: return "avoid-distance-plane";
  }
  return "unknown";
}

std::vector<double> chebyshev_points(double a, double b, int count) {
  if (count < 2) throw std::invalid_argument("chebyshev_points: need at least two points");
  std::vector<double> x(count);
  for (int i = 0; i < count; ++i)
    x[i] = (a + b) / 2 - (b - a) / 2 * std::cos(std::numbers::pi * i / (count - 1));
  x.front() = a;
  x.back() = b;
  return x;
}

int kissing_lower_bound(int n) {
  switch (n) {
    case 1: return 2;
    case 2: return 6;
    case 3: return 12;
    case 4: return 24;
    case 5: return 40;
    case 6: return 72;
    case 7: return 126;
    case 8: return 240;
    case 24: return 196560;
    default: throw std::invalid_argument("kissing_lower_bound: dimension not tabulated");
  }
}

double recompute_value(const BoundResult& r) {
  switch (r.problem) {
    case Problem::KissingLP: {
      double v = 1.0;
      for (double f : r.coefficients) v += f;
      return v;
    }
    case Problem::KissingThreePoint: {
      const orthopoly::KernelEvaluator ev(r.n, *r.d);
      return 1.0 + (r.matrices[0].cwiseProduct(ev.evaluate(1.0, 1.0, 1.0)[0])).sum();
    }
    case Problem::AvoidOrthogonalSphere: return r.coefficients.at(0);
    case Problem::AvoidDistancePlane: return std::abs(r.omega_min) / (1.0 + std::abs(r.omega_min));
  }
  return 0.0;
}

BoundResult kissing_lp(int n, int d, int grid_size) {
  LpOptions o;
  o.grid_size = grid_size;
  return kissing_lp(n, d, o);
}

BoundResult kissing_lp(int n, int d, const LpOptions& o) {
  if (n < 3) throw std::invalid_argument("kissing_lp: dimension must be >= 3");
  if (d < 2 || d > 20) throw std::invalid_argument("kissing_lp: degree must be in [2, 20]");
  if (o.grid_size < 4 * d) throw std::invalid_argument("kissing_lp: grid_size must be >= 4d");
  if (o.margin < 0) throw std::invalid_argument("kissing_lp: negative margin");

  std::vector<double> grid = chebyshev_points(-1.0, 0.5, o.grid_size);
  BoundResult result;
  result.problem = Problem::KissingLP;
  result.n = n;
  result.d = d;
  result.margin = o.margin;
  conic::SolveReport report;
  int solves = 0;
  // Right-hand side 1/value keeps the primal weights of order one.
  double rhs = 1.0;
  for (int round = 0;; ++round) {
    const int g = static_cast<int>(grid.size());
    ConicProgram prog({{ConeKind::Nonneg, g}, {ConeKind::Nonneg, d}}, d);
    for (int p = 0; p < g; ++p) {
      const auto values = orthopoly::gegenbauer_values(n, d, grid[p]);
      for (int k = 1; k <= d; ++k) prog.add_coefficient(k - 1, 0, p, -values[k]);
      prog.add_objective(0, p, 1.0 + o.margin);
    }
    for (int k = 1; k <= d; ++k) {
      prog.add_coefficient(k - 1, 1, k - 1, 1.0);
      prog.set_rhs(k - 1, rhs);
    }
    report = conic::solve(prog, o.tolerance, 100);
    ++solves;
    require_optimal(report, "kissing_lp");
    result.coefficients.assign(report.y.data(), report.y.data() + d);
    rhs = 1.0 / recompute_value(result);
    if (round == o.refinement_rounds) break;

    // Exchange step: add local maxima of the polynomial above half the margin.
    const auto& f = result.coefficients;
    auto s = [&](double t) { return lp_polynomial(n, f, t); };
    std::vector<double> added;
    for (double t : local_maxima(s, -1.0, 0.5, 4000))
      if (s(t) > -o.margin / 2) added.push_back(t);
    if (added.empty()) break;
    grid.insert(grid.end(), added.begin(), added.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  }
  result.grid = grid;
  std::ostringstream desc;
  desc << "chebyshev-lobatto " << o.grid_size << " on [-1,1/2] + " << grid.size() - o.grid_size << " exchange points";
  result.grid_description = desc.str();
  result.solver = summarize(report, solves);
  result.value = recompute_value(result);
  return result;
}

namespace {

struct Sample {
  double u, v, t;
  bool diagonal;
};

struct ThreePointLayout {
  std::vector<int> offset;  // first variable of each block
  int variables = 0;
};

ThreePointLayout layout(int d) {
  ThreePointLayout l;
  for (int k = 0; k <= d; ++k) {
    const int s = d - k + 1;
    l.offset.push_back(l.variables);
    l.variables += s * (s + 1) / 2;
  }
  return l;
}

double constraint_value(const std::vector<Eigen::MatrixXd>& f, const std::vector<Eigen::MatrixXd>& s) {
  double acc = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) acc += f[k].cwiseProduct(s[k]).sum();
  return acc;
}

std::vector<Sample> base_samples(const ThreePointOptions& o, int d, int uv_points, int t_points) {
  std::vector<Sample> samples;
  const int na = o.diagonal_points > 0 ? o.diagonal_points : 2 * d + 50;
  for (double u : chebyshev_points(-1.0, 0.5, na)) samples.push_back({u, u, 1.0, true});
  const auto g = chebyshev_points(-1.0, 0.5, uv_points);
  for (int i = 0; i < uv_points; ++i)
    for (int j = i; j < uv_points; ++j) {
      const double u = g[i], v = g[j];
      const double r = std::sqrt(std::max(0.0, (1 - u * u) * (1 - v * v)));
      const double lo = std::max(-1.0, u * v - r), hi = std::min(0.5, u * v + r);
      if (hi < lo) continue;
      if (hi - lo < 1e-12) {
        samples.push_back({u, v, lo, false});
        continue;
      }
      for (double t : chebyshev_points(lo, hi, t_points)) samples.push_back({u, v, t, false});
    }
  return samples;
}

// Admissible t range for a pair (u, v), empty when hi < lo.
std::pair<double, double> t_range(double u, double v) {
  const double r = std::sqrt(std::max(0.0, (1 - u * u) * (1 - v * v)));
  return {std::max(-1.0, u * v - r), std::min(0.5, u * v + r)};
}

// Compass search over (u, v, s) with t = lo + s (hi - lo), or over u alone on
// the diagonal family.
template <class F>
Sample polish_sample(Sample start, F value) {
  auto build = [&](double u, double v, double s) -> std::optional<Sample> {
    if (u < -1 || u > 0.5 || v < -1 || v > 0.5 || s < 0 || s > 1) return std::nullopt;
    if (start.diagonal) return Sample{u, u, 1.0, true};
    const auto [lo, hi] = t_range(u, v);
    if (hi < lo) return std::nullopt;
    return Sample{u, v, lo + s * (hi - lo), false};
  };
  double x[3] = {start.u, start.v, 0.0};
  if (!start.diagonal) {
    const auto [lo, hi] = t_range(start.u, start.v);
    x[2] = hi > lo ? std::clamp((start.t - lo) / (hi - lo), 0.0, 1.0) : 0.0;
  }
  Sample best = *build(x[0], x[1], x[2]);
  double best_value = value(best);
  const int dims = start.diagonal ? 1 : 3;
  for (double h = 0.02; h > 1e-8;) {
    bool moved = false;
    for (int c = 0; c < dims; ++c)
      for (double sgn : {1.0, -1.0}) {
        double y[3] = {x[0], x[1], x[2]};
        y[c] += sgn * h;
        const auto trial = build(y[0], y[1], y[2]);
        if (!trial) continue;
        const double v = value(*trial);
        if (v > best_value) {
          best_value = v;
          best = *trial;
          std::copy(y, y + 3, x);
          moved = true;
        }
      }
    if (!moved) h /= 2;
  }
  return best;
}

}  // namespace

BoundResult kissing_three_point(int n, int d, const ThreePointOptions& o) {
  if (n < 3) throw std::invalid_argument("kissing_three_point: dimension must be >= 3");
  if (d < 3 || d > 14) throw std::invalid_argument("kissing_three_point: degree must be in [3, 14]");
  if (o.uv_points < 4 || o.t_points < 2) throw std::invalid_argument("kissing_three_point: grid too coarse");
  if (o.margin < 0) throw std::invalid_argument("kissing_three_point: negative margin");

  const orthopoly::KernelEvaluator ev(n, d);
  const ThreePointLayout lay = layout(d);
  std::vector<Sample> samples = base_samples(o, d, o.uv_points, o.t_points);
  const std::size_t base_count = samples.size();

  BoundResult result;
  result.problem = Problem::KissingThreePoint;
  result.n = n;
  result.d = d;
  result.margin = o.margin;
  conic::SolveReport report;
  int solves = 0;
  std::vector<ConeBlock> blocks;
  for (int k = 0; k <= d; ++k) blocks.push_back({ConeKind::Psd, d - k + 1});
  const auto s_one = ev.evaluate(1.0, 1.0, 1.0);
  std::size_t used = 0;

  for (int round = 0;; ++round) {
    auto bl = blocks;
    bl.push_back({ConeKind::Nonneg, static_cast<int>(samples.size())});
    ConicProgram prog(bl, lay.variables);
    const int nb = d + 1;
    for (int k = 0; k <= d; ++k) {
      const int s = d - k + 1;
      int var = lay.offset[k];
      for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j, ++var) {
          prog.add_coefficient(var, k, i, j, 1.0);
          if (k == 0) prog.set_rhs(var, s_one[0](i, j) * (i == j ? 1.0 : 2.0));
        }
    }
    for (std::size_t row = 0; row < samples.size(); ++row) {
      const Sample& sm = samples[row];
      const auto sk = ev.evaluate(sm.u, sm.v, sm.t);
      // Rows are scaled to unit max-norm; feasibility is unchanged.
      double norm = 0.0;
      for (int k = 0; k <= d; ++k) norm = std::max(norm, sk[k].cwiseAbs().maxCoeff());
      const double scale = norm > 0 ? 1.0 / norm : 1.0;
      for (int k = 0; k <= d; ++k) {
        const int s = d - k + 1;
        int var = lay.offset[k];
        for (int i = 0; i < s; ++i)
          for (int j = i; j < s; ++j, ++var)
            prog.add_coefficient(var, nb, static_cast<int>(row), -scale * sk[k](i, j) * (i == j ? 1.0 : 2.0));
      }
      prog.add_objective(nb, static_cast<int>(row), scale * ((sm.diagonal ? 1.0 / 3.0 : 0.0) + o.margin));
    }
    auto attempt = conic::solve(prog, o.tolerance, 200);
    ++solves;
    // A failed refinement round keeps the previous solution.
    if (round > 0 && !dual_usable(attempt)) break;
    require_dual_usable(attempt, "kissing_three_point");
    report = attempt;
    used = samples.size();
    result.matrices.clear();
    for (int k = 0; k <= d; ++k) {
      const int s = d - k + 1;
      Eigen::MatrixXd f(s, s);
      int var = lay.offset[k];
      for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j, ++var) f(i, j) = f(j, i) = report.y(var);
      result.matrices.push_back(f);
    }
    if (round == o.refinement_rounds) break;

    // Exchange step: scan a finer sampling, polish the best points by
    // pattern search and add everything above half the margin.
    const double threshold = -o.margin / 2 + 1e-9;
    auto value_at = [&](const Sample& sm) {
      return constraint_value(result.matrices, ev.evaluate(sm.u, sm.v, sm.t)) + (sm.diagonal ? 1.0 / 3.0 : 0.0);
    };
    std::vector<std::pair<double, Sample>> scanned;
    ThreePointOptions fine = o;
    fine.diagonal_points = 8 * (o.diagonal_points > 0 ? o.diagonal_points : 2 * d + 50);
    for (const Sample& sm : base_samples(fine, d, 2 * o.uv_points + 1, 2 * o.t_points + 1)) scanned.push_back({value_at(sm), sm});
    std::sort(scanned.begin(), scanned.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    // Seeds are the best scanned points at least one fine step apart.
    const double spacing = 1.5 / (2 * o.uv_points);
    auto near = [](const Sample& a, const Sample& b, double r) {
      return a.diagonal == b.diagonal && std::abs(a.u - b.u) + std::abs(a.v - b.v) + std::abs(a.t - b.t) < r;
    };
    std::vector<Sample> seeds;
    for (const auto& [v, sm] : scanned) {
      if (seeds.size() >= 600 || v < threshold - 1e-3) break;
      if (std::none_of(seeds.begin(), seeds.end(), [&](const Sample& a) { return near(a, sm, spacing); })) seeds.push_back(sm);
    }
    std::vector<std::pair<double, Sample>> worst;
    for (const Sample& seed : seeds) {
      const Sample polished = polish_sample(seed, value_at);
      const double v = value_at(polished);
      if (v > threshold) worst.push_back({v, polished});
    }
    if (worst.empty()) break;
    std::sort(worst.begin(), worst.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<Sample> added;
    for (const auto& [v, sm] : worst) {
      if (added.size() >= 600) break;
      if (std::none_of(added.begin(), added.end(), [&](const Sample& a) { return near(a, sm, 1e-9); })) added.push_back(sm);
    }
    samples.insert(samples.end(), added.begin(), added.end());
  }

  samples.resize(used);
  for (const Sample& sm : samples)
    if (sm.diagonal) result.grid.push_back(sm.u);
  std::ostringstream desc;
  desc << "diagonal " << (o.diagonal_points > 0 ? o.diagonal_points : 2 * d + 50) << " chebyshev; region " << o.uv_points << "x"
       << o.uv_points << " (u<=v) x " << o.t_points << " t; " << samples.size() - base_count << " exchange points";
  result.grid_description = desc.str();
  result.solver = summarize(report, solves);
  result.value = recompute_value(result);
  return result;
}

BoundResult avoid_orthogonal(int n, int d) {
  if (n < 2) throw std::invalid_argument("avoid_orthogonal: dimension must be >= 2");
  if (d < 2) throw std::invalid_argument("avoid_orthogonal: degree must be >= 2");
  const auto family = orthopoly::gegenbauer_family(n, d);
  std::vector<Rational> p0(d + 1);
  for (int k = 0; k <= d; ++k) p0[k] = family[k](Rational(0));

  // Two equality constraints: every vertex has at most two nonzero entries.
  std::vector<Rational> best_f;
  Rational best = -1;
  auto consider = [&](std::vector<Rational> f) {
    if (f[0] > best) {
      best = f[0];
      best_f = std::move(f);
    }
  };
  for (int i = 0; i <= d; ++i) {
    if (p0[i] == 0) {
      std::vector<Rational> f(d + 1, Rational(0));
      f[i] = 1;
      consider(std::move(f));
    }
    for (int j = i + 1; j <= d; ++j) {
      if (p0[i] == p0[j]) continue;
      const Rational fi = -p0[j] / (p0[i] - p0[j]), fj = p0[i] / (p0[i] - p0[j]);
      if (fi < 0 || fj < 0) continue;
      std::vector<Rational> f(d + 1, Rational(0));
      f[i] = fi;
      f[j] = fj;
      consider(std::move(f));
    }
  }
  if (best_f.empty()) throw std::runtime_error("avoid_orthogonal: infeasible");

  // Dual: minimize a subject to a + b P_k(0) >= [k == 0].  Take the pair tight
  // on the support of the optimal vertex.
  int partner = -1;
  for (int k = 1; k <= d; ++k)
    if (best_f[k] != 0) partner = k;
  Rational a, b;
  if (partner < 0 || best_f[0] == 0) {
    a = best;
    b = 0;
  } else {
    b = Rational(1) / (1 - p0[partner]);
    a = -p0[partner] * b;
  }
  for (int k = 0; k <= d; ++k)
    if (a + b * p0[k] < (k == 0 ? 1 : 0)) throw std::logic_error("avoid_orthogonal: dual check failed");
  if (a != best) throw std::logic_error("avoid_orthogonal: duality gap");

  BoundResult r;
  r.problem = Problem::AvoidOrthogonalSphere;
  r.n = n;
  r.d = d;
  r.exact_value = best;
  r.exact_coefficients = best_f;
  r.exact_dual = {a, b};
  for (const auto& f : best_f) r.coefficients.push_back(f.get_d());
  r.grid_description = "exact";
  r.solver.solves = 0;
  r.value = best.get_d();
  return r;
}

BoundResult avoid_distance_plane(int n, double horizon) {
  if (n < 2) throw std::invalid_argument("avoid_distance_plane: dimension must be >= 2");
  if (!(horizon >= 20)) throw std::invalid_argument("avoid_distance_plane: search horizon must be >= 20");
  const double step = 1e-2;
  const int count = static_cast<int>(std::ceil(horizon / step));
  int arg = 0;
  double best = 1.0;
  for (int i = 0; i <= count; ++i) {
    const double t = std::min(horizon, i * step);
    const double v = orthopoly::bessel_omega(n, t);
    if (v < best) {
      best = v;
      arg = i;
    }
  }
  if (!(best < 0)) throw std::runtime_error("avoid_distance_plane: no negative value below the horizon");
  const double lo = std::max(0.0, (arg - 1) * step), hi = std::min(horizon, (arg + 1) * step);
  const double t = golden_maximize([&](double x) { return -orthopoly::bessel_omega(n, x); }, lo, hi, 1e-12);

  BoundResult r;
  r.problem = Problem::AvoidDistancePlane;
  r.n = n;
  r.minimizer = t;
  r.omega_min = std::min(best, orthopoly::bessel_omega(n, t));
  std::ostringstream desc;
  desc << "uniform step " << step << " on [0," << horizon << "] + golden section";
  r.grid_description = desc.str();
  r.value = recompute_value(r);
  return r;
}

}  // namespace extremal::sphere
