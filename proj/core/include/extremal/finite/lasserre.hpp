#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "extremal/conic/solver.hpp"
#include "extremal/finite/graph.hpp"
#include "extremal/verify/certificate.hpp"
#include "extremal/verify/exact_matrix.hpp"

namespace extremal::finite {

using MomentVector = std::map<VertexSet, double>;
using ExactMomentVector = std::map<VertexSet, Rational>;

/// Index structure of M_t: rows and columns follow ℐ_t, entry (a, b) refers
/// to moments[union_index(a, b)] or is fixed to zero when the union is not
/// independent (index -1).
struct MomentIndex {
  int t = 0;
  std::vector<VertexSet> rows;     // ℐ_t
  std::vector<VertexSet> moments;  // ℐ_2t
  std::vector<int> union_index;    // rows.size()^2, row-major

  int size() const { return static_cast<int>(rows.size()); }
  int at(int a, int b) const { return union_index[static_cast<std::size_t>(a) * rows.size() + b]; }
};

MomentIndex moment_index(const Graph& g, int t);

Eigen::MatrixXd moment_matrix(const MomentIndex& index, const MomentVector& y);
verify::RationalMatrix moment_matrix(const MomentIndex& index, const ExactMomentVector& y);

/// Exact primal feasibility: domain ℐ_2t, y(∅) = 1, y >= 0, M_t(y) PSD.
bool moment_feasible(const MomentIndex& index, const ExactMomentVector& y);

/// y(S) = 1 if S ⊆ I, else 0, over ℐ_2t.
ExactMomentVector characteristic_moments(const MomentIndex& index, const VertexSet& independent);

struct LasserreResult {
  double value = 0.0;
  MomentVector y;
  conic::SolveStatus status = conic::SolveStatus::Optimal;
  int iterations = 0;
  double gap = 0.0;
};

/// max sum_i y({i}) over y >= 0, y(∅) = 1, M_t(y) PSD.  |ℐ_t| <= 2000.
LasserreResult lasserre_solve(const Graph& g, int t);
double lasserre_bound(const Graph& g, int t);

/// Dual solution A indexed by ℐ_t with exactly checked PSD witness and sum
/// conditions; bound = A(∅, ∅) >= α(G).
struct DualCertificateFinite {
  int t = 0;
  std::vector<VertexSet> index;  // ℐ_t
  verify::RationalMatrix a;
  verify::LdltWitness psd_witness;
  Rational bound;
  double numeric_value = 0.0;  // solver optimum before rounding
  double margin = 0.0;
};

/// Throws verify::CertificationError when the exact checks fail after all
/// margin retries.
DualCertificateFinite lasserre_dual_certificate(const Graph& g, int t, double margin = 1e-6, int retries = 4);

/// Exact check of A; throws verify::CertificationError on failure.
void check_dual_certificate(const Graph& g, const DualCertificateFinite& c);

verify::Certificate to_certificate(const Graph& g, const DualCertificateFinite& c);
verify::Certificate recertify_lasserre_dual(const verify::Certificate& c);

}  // namespace extremal::finite
