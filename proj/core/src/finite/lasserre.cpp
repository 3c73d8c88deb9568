#include "extremal/finite/lasserre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "extremal/verify/errors.hpp"
#include "extremal/verify/rounding.hpp"

namespace extremal::finite {

using conic::ConeKind;
using verify::CertificationError;
using verify::FailureKind;
using verify::RationalMatrix;
using verify::RationalVector;

namespace {

constexpr std::size_t kMaxRows = 2000;

std::string set_string(const VertexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

// Column sums over J ∪ J' = S for every moment S, ordered pairs.
RationalVector union_sums(const MomentIndex& index, const RationalMatrix& a) {
  RationalVector sums(index.moments.size());
  for (int i = 0; i < index.size(); ++i)
    for (int j = 0; j < index.size(); ++j) {
      const int k = index.at(i, j);
      if (k >= 0) sums[k] += a(i, j);
    }
  return sums;
}

conic::ConicProgram moment_program(const MomentIndex& index, double margin) {
  const int rows = index.size();
  const int m = static_cast<int>(index.moments.size()) - 1;
  conic::ConicProgram p({{ConeKind::Psd, rows}, {ConeKind::Nonneg, m}}, m);
  p.add_objective(0, 0, 0, -1.0);
  for (int a = 0; a < rows; ++a)
    for (int b = a; b < rows; ++b) {
      const int k = index.at(a, b);
      if (k > 0) p.add_coefficient(k - 1, 0, a, b, 1.0);
    }
  for (int j = 0; j < m; ++j) {
    p.add_coefficient(j, 1, j, 1.0);
    p.set_rhs(j, index.moments[j + 1].size() == 1 ? -1.0 - margin : -margin);
  }
  return p;
}

conic::SolveReport solve_moments(const MomentIndex& index, double margin) {
  const auto r = conic::solve(moment_program(index, margin), 1e-10, 150);
  if (r.status != conic::SolveStatus::Optimal && std::max({r.final_gap, r.primal_infeasibility, r.dual_infeasibility}) > 1e-7)
    throw std::runtime_error("lasserre: solver failed (" + std::string(conic::to_string(r.status)) + ")");
  return r;
}

int packed_index(int i, int j, int s) { return i * s - i * (i - 1) / 2 + (j - i); }

// Smallest dyadic multiple of the identity (at most eps / 2) that makes A
// PSD, followed by the full certificate check.
std::optional<DualCertificateFinite> repair(const Graph& g, const MomentIndex& index, RationalMatrix a, const Rational& eps,
                                            double numeric_value, double margin) {
  const int rows = index.size();
  const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a.to_double(), Eigen::EigenvaluesOnly).eigenvalues()(0);
  Rational shift = 0;
  if (lmin < 0) shift = Rational(1, mpz_class(1) << std::max(0, static_cast<int>(-std::log2(-2 * lmin))));
  for (int attempt = 0; attempt < 40 && shift <= eps / 2; ++attempt) {
    RationalMatrix shifted = a;
    for (int i = 0; i < rows; ++i) shifted(i, i) += shift;
    auto check = verify::check_psd(shifted);
    if (check.psd) {
      DualCertificateFinite c;
      c.t = index.t;
      c.index = index.rows;
      c.a = std::move(shifted);
      c.psd_witness = std::move(check.witness);
      c.bound = c.a(0, 0);
      c.numeric_value = numeric_value;
      c.margin = margin;
      try {
        check_dual_certificate(g, c);
      } catch (const CertificationError&) {
        return std::nullopt;
      }
      return c;
    }
    shift = shift == 0 ? Rational(1, mpz_class(1) << 60) : Rational(2 * shift);
  }
  return std::nullopt;
}

std::optional<DualCertificateFinite> round_dual(const Graph& g, const MomentIndex& index, const conic::SolveReport& r,
                                                double margin) {
  const int rows = index.size();
  const int vars = rows * (rows + 1) / 2;
  const Eigen::MatrixXd& x = r.primal_solution[0];
  const Eigen::VectorXd& slack = r.primal_solution[1];
  const Rational eps = rationalize(margin, 1000000000);

  // Plain dyadic rounding usually keeps every sum inside its margin and gives
  // a compact certificate.
  RationalMatrix a(rows, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = i; j < rows; ++j) a(i, j) = a(j, i) = exact(std::ldexp(std::round(std::ldexp(x(i, j), 36)), -36));
  if (auto c = repair(g, index, a, eps, x(0, 0), margin)) return c;

  // Otherwise active sums are projected exactly onto their margined
  // right-hand side; inactive ones keep at least margin / 2 of room.
  Eigen::VectorXd packed(vars);
  for (int i = 0; i < rows; ++i)
    for (int j = i; j < rows; ++j) packed(packed_index(i, j, rows)) = x(i, j);
  std::vector<int> active;
  for (int k = 0; k < slack.size(); ++k)
    if (slack(k) < margin / 2) active.push_back(k);
  RationalMatrix lhs(static_cast<int>(active.size()), vars);
  RationalVector rhs(active.size());
  std::vector<int> row_of(slack.size(), -1);
  for (std::size_t k = 0; k < active.size(); ++k) {
    row_of[active[k]] = static_cast<int>(k);
    rhs[k] = index.moments[active[k] + 1].size() == 1 ? Rational(-1 - eps) : Rational(-eps);
  }
  for (int i = 0; i < rows; ++i)
    for (int j = i; j < rows; ++j) {
      const int k = index.at(i, j);
      if (k > 0 && row_of[k - 1] >= 0) lhs(row_of[k - 1], packed_index(i, j, rows)) = i == j ? 1 : 2;
    }
  const RationalVector rounded = verify::round_least_squares(packed, lhs, rhs, Integer(1000000000));
  for (int i = 0; i < rows; ++i)
    for (int j = i; j < rows; ++j) a(i, j) = a(j, i) = rounded[packed_index(i, j, rows)];
  return repair(g, index, a, eps, x(0, 0), margin);
}

}  // namespace

MomentIndex moment_index(const Graph& g, int t) {
  if (t < 1) throw std::invalid_argument("lasserre: step must be at least 1");
  MomentIndex index;
  index.t = t;
  index.rows = enumerate_independent_sets(g, t);
  if (index.rows.size() > kMaxRows) throw std::length_error("lasserre: more than 2000 independent sets of size <= t");
  index.moments = enumerate_independent_sets(g, 2 * t);
  std::map<VertexSet, int> position;
  for (std::size_t k = 0; k < index.moments.size(); ++k) position.emplace(index.moments[k], static_cast<int>(k));
  const std::size_t n = index.rows.size();
  index.union_index.assign(n * n, -1);
  VertexSet u;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      u.clear();
      std::set_union(index.rows[a].begin(), index.rows[a].end(), index.rows[b].begin(), index.rows[b].end(), std::back_inserter(u));
      auto it = position.find(u);
      if (it != position.end()) index.union_index[a * n + b] = index.union_index[b * n + a] = it->second;
    }
  return index;
}

Eigen::MatrixXd moment_matrix(const MomentIndex& index, const MomentVector& y) {
  const int n = index.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (const int k = index.at(a, b); k >= 0) m(a, b) = y.at(index.moments[k]);
  return m;
}

RationalMatrix moment_matrix(const MomentIndex& index, const ExactMomentVector& y) {
  const int n = index.size();
  RationalMatrix m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (const int k = index.at(a, b); k >= 0) m(a, b) = y.at(index.moments[k]);
  return m;
}

bool moment_feasible(const MomentIndex& index, const ExactMomentVector& y) {
  if (y.size() != index.moments.size()) return false;
  for (const auto& s : index.moments) {
    auto it = y.find(s);
    if (it == y.end() || it->second < 0) return false;
  }
  if (y.at(VertexSet{}) != 1) return false;
  return verify::check_psd(moment_matrix(index, y)).psd;
}

ExactMomentVector characteristic_moments(const MomentIndex& index, const VertexSet& independent) {
  ExactMomentVector y;
  for (const auto& s : index.moments)
    y[s] = std::includes(independent.begin(), independent.end(), s.begin(), s.end()) ? 1 : 0;
  return y;
}

LasserreResult lasserre_solve(const Graph& g, int t) {
  const MomentIndex index = moment_index(g, t);
  LasserreResult out;
  if (index.moments.size() == 1) {
    out.y[VertexSet{}] = 1.0;
    return out;
  }
  const auto r = solve_moments(index, 0.0);
  out.value = -0.5 * (r.primal_value + r.dual_value);
  out.status = r.status;
  out.iterations = r.iterations;
  out.gap = r.final_gap;
  out.y[VertexSet{}] = 1.0;
  for (std::size_t k = 1; k < index.moments.size(); ++k) out.y[index.moments[k]] = r.y(static_cast<Eigen::Index>(k - 1));
  return out;
}

double lasserre_bound(const Graph& g, int t) { return lasserre_solve(g, t).value; }

DualCertificateFinite lasserre_dual_certificate(const Graph& g, int t, double margin, int retries) {
  const MomentIndex index = moment_index(g, t);
  if (index.moments.size() == 1) {
    DualCertificateFinite c;
    c.t = t;
    c.index = index.rows;
    c.a = RationalMatrix(1, 1);
    c.psd_witness = verify::check_psd(c.a).witness;
    c.bound = 0;
    return c;
  }
  for (int attempt = 0; attempt <= retries; ++attempt, margin *= 2) {
    const auto r = solve_moments(index, margin);
    if (auto c = round_dual(g, index, r, margin)) return *c;
  }
  throw CertificationError(FailureKind::NotPsd, "rounded dual solution could not be repaired at step " + std::to_string(t));
}

void check_dual_certificate(const Graph& g, const DualCertificateFinite& c) {
  const MomentIndex index = moment_index(g, c.t);
  if (c.index != index.rows) throw CertificationError(FailureKind::Mismatch, "index sets differ from the graph's independent sets");
  if (c.a.rows() != index.size() || c.a.cols() != index.size() || !c.a.is_symmetric())
    throw CertificationError(FailureKind::Malformed, "A must be a symmetric matrix indexed by the independent sets");
  if (!verify::verify_ldlt(c.a, c.psd_witness)) throw CertificationError(FailureKind::NotPsd, "LDL^T witness for A rejected");
  const RationalVector sums = union_sums(index, c.a);
  for (std::size_t k = 1; k < sums.size(); ++k) {
    const Rational limit = index.moments[k].size() == 1 ? -1 : 0;
    if (sums[k] > limit)
      throw CertificationError(FailureKind::SignViolation,
                               "sum over " + set_string(index.moments[k]) + " is " + to_string(sums[k]) + " > " + to_string(limit),
                               set_string(index.moments[k]));
  }
  if (c.bound != c.a(0, 0)) throw CertificationError(FailureKind::Mismatch, "bound differs from A(empty, empty)");
  if (g.vertex_count() <= 40 && c.bound < alpha_bruteforce(g))
    throw CertificationError(FailureKind::Mismatch, "certified bound below the independence number");
}

verify::Certificate to_certificate(const Graph& g, const DualCertificateFinite& dc) {
  verify::Certificate c;
  c.problem = "lasserre-dual";
  c.n = g.vertex_count();
  c.d = dc.t;
  c.certified_bound = dc.bound;
  auto& edges = c.integers["edges"];
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  c.matrices["A"] = dc.a;
  verify::store_ldlt(c, "A", dc.psd_witness);
  c.method = "exact-ldlt-moment-sums";
  const MomentIndex index = moment_index(g, dc.t);
  c.transcript["independent_sets"] = std::to_string(index.rows.size());
  c.transcript["moment_sums_checked"] = std::to_string(index.moments.size() - 1);
  if (g.vertex_count() <= 40) c.transcript["alpha_bruteforce"] = std::to_string(alpha_bruteforce(g));
  c.transcript["certified_integer"] = verify::certified_integer(c);
  verify::seal(c);
  return c;
}

verify::Certificate recertify_lasserre_dual(const verify::Certificate& c) {
  auto malformed = [](const std::string& what) { throw CertificationError(FailureKind::Malformed, what); };
  if (c.n < 0 || c.n > 100000) malformed("vertex count out of range");
  Graph g(c.n);
  auto edges = c.integers.find("edges");
  if (edges == c.integers.end()) malformed("missing edge list");
  for (const auto& e : edges->second) {
    if (e.size() != 2) malformed("edge entries must be pairs");
    try {
      g.add_edge(e[0], e[1]);
    } catch (const std::invalid_argument& err) {
      malformed(err.what());
    }
  }
  auto a = c.matrices.find("A");
  if (a == c.matrices.end()) malformed("missing matrix 'A'");
  DualCertificateFinite dc;
  dc.t = c.d;
  dc.index = moment_index(g, c.d).rows;
  dc.a = a->second;
  dc.psd_witness = verify::load_ldlt(c, "A");
  if (dc.a.rows() < 1) malformed("empty matrix 'A'");
  dc.bound = dc.a(0, 0);
  check_dual_certificate(g, dc);
  return to_certificate(g, dc);
}

}  // namespace extremal::finite
