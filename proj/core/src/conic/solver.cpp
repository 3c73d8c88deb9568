#include "extremal/conic/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace extremal::conic {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::MaxIterations: return "MaxIterations";
    case SolveStatus::NumericalFailure: return "NumericalFailure";
  }
  return "?";
}

double cone_margin(ConeKind kind, const Eigen::MatrixXd& value) {
  if (value.size() == 0) return 0.0;
  if (kind == ConeKind::Nonneg) return value.minCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (value + value.transpose()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

namespace {

using Blocks = std::vector<Eigen::MatrixXd>;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PsdData {
  std::vector<std::vector<SparseEntry>> a;
  std::vector<int> touching;
  Eigen::MatrixXd c;
};

struct Prepared {
  const ConicProgram& program;
  int m;
  std::vector<PsdData> psd;  // indexed by block; empty for Nonneg blocks
  double b_norm;
  double c_norm;
  double nu;

  explicit Prepared(const ConicProgram& p) : program(p), m(p.num_constraints()), psd(p.num_blocks()) {
    double c2 = 0.0;
    nu = 0.0;
    for (int k = 0; k < p.num_blocks(); ++k) {
      const int s = p.block(k).size;
      nu += s;
      if (p.block(k).kind == ConeKind::Psd) {
        auto& d = psd[k];
        d.c = Eigen::MatrixXd::Zero(s, s);
        for (const auto& e : p.psd_entries(k, -1)) {
          d.c(e.row, e.col) += e.value;
          if (e.row != e.col) d.c(e.col, e.row) += e.value;
        }
        c2 += d.c.squaredNorm();
        d.a.resize(m);
        for (int j = 0; j < m; ++j) {
          d.a[j] = p.psd_entries(k, j);
          if (!d.a[j].empty()) d.touching.push_back(j);
        }
      } else {
        c2 += p.nonneg_objective(k).squaredNorm();
      }
    }
    b_norm = p.rhs().norm();
    c_norm = std::sqrt(c2);
  }

  bool is_psd(int k) const { return program.block(k).kind == ConeKind::Psd; }

  Eigen::VectorXd apply(const Blocks& x) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(m);
    for (int k = 0; k < program.num_blocks(); ++k) {
      if (is_psd(k)) {
        for (int j : psd[k].touching) out(j) += entry_dot(psd[k].a[j], x[k]);
      } else {
        out.noalias() += program.nonneg_matrix(k).transpose() * x[k].col(0);
      }
    }
    return out;
  }

  Blocks adjoint(const Eigen::VectorXd& y) const {
    Blocks out;
    for (int k = 0; k < program.num_blocks(); ++k) {
      const int s = program.block(k).size;
      if (is_psd(k)) {
        Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(s, s);
        for (int j : psd[k].touching)
          for (const auto& e : psd[k].a[j]) {
            mat(e.row, e.col) += y(j) * e.value;
            if (e.row != e.col) mat(e.col, e.row) += y(j) * e.value;
          }
        out.push_back(std::move(mat));
      } else {
        out.push_back(program.nonneg_matrix(k) * y);
      }
    }
    return out;
  }

  Blocks objective_blocks() const {
    Blocks out;
    for (int k = 0; k < program.num_blocks(); ++k)
      out.push_back(is_psd(k) ? psd[k].c : Eigen::MatrixXd(program.nonneg_objective(k)));
    return out;
  }
};

double dot(const Blocks& a, const Blocks& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k].cwiseProduct(b[k]).sum();
  return acc;
}

double norm(const Blocks& a) { return std::sqrt(dot(a, a)); }

// Nesterov-Todd scaling of one block: W = G G^T, G^{-1} X G^{-T} = G^T Z G = diag(v).
struct Scaling {
  Eigen::MatrixXd g, g_inv, w;
  Eigen::VectorXd v;
  Eigen::MatrixXd chol_x;  // lower Cholesky factor of X (PSD only)
};

bool compute_scaling(bool psd, const Eigen::MatrixXd& x, const Eigen::MatrixXd& z, Scaling& sc) {
  if (!psd) {
    const Eigen::ArrayXd xa = x.col(0).array(), za = z.col(0).array();
    if ((xa <= 0).any() || (za <= 0).any()) return false;
    // w holds W^2 = x / z; g = W^{1/2}.
    sc.w = (xa / za).matrix();
    sc.g = sc.w.array().pow(0.25).matrix();
    sc.v = (xa * za).sqrt().matrix();
    return true;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(x);
  if (llt.info() != Eigen::Success) return false;
  sc.chol_x = llt.matrixL();
  const Eigen::MatrixXd s = sc.chol_x.transpose() * z * sc.chol_x;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (s + s.transpose()));
  if (eig.info() != Eigen::Success || eig.eigenvalues()(0) <= 0.0) return false;
  const Eigen::VectorXd lam = eig.eigenvalues();
  const Eigen::MatrixXd& q = eig.eigenvectors();
  const Eigen::VectorXd quarter = lam.array().pow(-0.25).matrix();
  sc.g = sc.chol_x * q * quarter.asDiagonal();
  const Eigen::MatrixXd l_inv =
      sc.chol_x.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(x.rows(), x.rows()));
  sc.g_inv = lam.array().pow(0.25).matrix().asDiagonal() * q.transpose() * l_inv;
  sc.w = sc.g * sc.g.transpose();
  sc.v = lam.array().sqrt().matrix();
  return true;
}

Eigen::MatrixXd sym(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Largest alpha with x + alpha dx in the cone (kInf if unbounded).
double max_step(bool psd, const Eigen::MatrixXd& x, const Eigen::MatrixXd& dx, const Eigen::MatrixXd* chol) {
  if (!psd) {
    double a = kInf;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      if (dx(i, 0) < 0) a = std::min(a, -x(i, 0) / dx(i, 0));
    return a;
  }
  Eigen::MatrixXd l;
  if (chol) {
    l = *chol;
  } else {
    Eigen::LLT<Eigen::MatrixXd> llt(x);
    if (llt.info() != Eigen::Success) return 0.0;
    l = llt.matrixL();
  }
  const auto tri = l.triangularView<Eigen::Lower>();
  Eigen::MatrixXd t = tri.solve(dx);
  t = tri.solve(t.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym(t), Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues()(0);
  return lmin >= 0 ? kInf : -1.0 / lmin;
}

class Solver {
 public:
  Solver(const ConicProgram& program, double tol, int max_iter)
      : prep_(program), tol_(tol), max_iter_(max_iter), nb_(program.num_blocks()) {}

  SolveReport run();

 private:
  void initial_point();
  bool build_schur();
  bool factor_schur();
  Eigen::VectorXd solve_schur(const Eigen::VectorXd& rhs) const;
  // Direction from the scaled complementarity right-hand sides r (one per block).
  void direction(const Blocks& r, Blocks& dx, Blocks& dz, Eigen::VectorXd& dy) const;

  Prepared prep_;
  double tol_;
  int max_iter_;
  int nb_;

  Blocks x_, z_, c_;
  Eigen::VectorXd y_;
  Eigen::VectorXd rp_;
  Blocks rd_;
  std::vector<Scaling> sc_;
  Eigen::MatrixXd schur_;
  Eigen::LLT<Eigen::MatrixXd> schur_llt_;
};

void Solver::initial_point() {
  const auto& p = prep_.program;
  const int m = prep_.m;
  x_.clear();
  z_.clear();
  for (int k = 0; k < nb_; ++k) {
    const int s = p.block(k).size;
    double xi = std::max(10.0, std::sqrt(static_cast<double>(s)));
    double eta = xi;
    double cnorm;
    std::vector<double> anorm(m, 0.0);
    if (prep_.is_psd(k)) {
      cnorm = prep_.psd[k].c.norm();
      for (int j : prep_.psd[k].touching) {
        double a2 = 0.0;
        for (const auto& e : prep_.psd[k].a[j]) a2 += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
        anorm[j] = std::sqrt(a2);
      }
    } else {
      cnorm = p.nonneg_objective(k).norm();
      for (int j = 0; j < m; ++j) anorm[j] = p.nonneg_matrix(k).col(j).norm();
    }
    for (int j = 0; j < m; ++j) {
      xi = std::max(xi, s * (1.0 + std::abs(p.rhs()(j))) / (1.0 + anorm[j]));
      eta = std::max(eta, anorm[j]);
    }
    eta = std::max(eta, cnorm);
    if (prep_.is_psd(k)) {
      x_.push_back(xi * Eigen::MatrixXd::Identity(s, s));
      z_.push_back(eta * Eigen::MatrixXd::Identity(s, s));
    } else {
      x_.push_back(Eigen::MatrixXd::Constant(s, 1, xi));
      z_.push_back(Eigen::MatrixXd::Constant(s, 1, eta));
    }
  }
  y_ = Eigen::VectorXd::Zero(m);
}

bool Solver::build_schur() {
  const auto& p = prep_.program;
  const int m = prep_.m;
  schur_ = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < nb_; ++k) {
    const Eigen::MatrixXd& w = sc_[k].w;
    if (!prep_.is_psd(k)) {
      const Eigen::MatrixXd& a = p.nonneg_matrix(k);
      const Eigen::MatrixXd scaled = w.col(0).array().sqrt().matrix().asDiagonal() * a;
      schur_.selfadjointView<Eigen::Lower>().rankUpdate(scaled.transpose());
      continue;
    }
    const auto& d = prep_.psd[k];
    const int s = p.block(k).size;
    for (std::size_t jj = 0; jj < d.touching.size(); ++jj) {
      const int j = d.touching[jj];
      const auto& aj = d.a[j];
      Eigen::MatrixXd b;
      if (static_cast<double>(aj.size()) * s < 2.0 * s * s) {
        b = Eigen::MatrixXd::Zero(s, s);
        for (const auto& e : aj) {
          if (e.row == e.col) {
            b.noalias() += e.value * w.col(e.row) * w.row(e.row);
          } else {
            b.noalias() += e.value * w.col(e.row) * w.row(e.col);
            b.noalias() += e.value * w.col(e.col) * w.row(e.row);
          }
        }
      } else {
        Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(s, s);
        for (const auto& e : aj) {
          dense(e.row, e.col) += e.value;
          if (e.row != e.col) dense(e.col, e.row) += e.value;
        }
        b.noalias() = w * dense * w;
      }
      for (std::size_t ii = jj; ii < d.touching.size(); ++ii) {
        const int i = d.touching[ii];
        const double val = entry_dot(d.a[i], b);
        schur_(std::max(i, j), std::min(i, j)) += val;
      }
    }
  }
  schur_.triangularView<Eigen::StrictlyUpper>() = schur_.transpose();
  return schur_.allFinite();
}

bool Solver::factor_schur() {
  schur_llt_.compute(schur_);
  if (schur_llt_.info() == Eigen::Success) return true;
  const double scale = std::max(schur_.diagonal().cwiseAbs().maxCoeff(), 1e-300);
  for (int attempt = 0; attempt < 6; ++attempt) {
    Eigen::MatrixXd reg = schur_;
    reg.diagonal().array() += scale * std::pow(10.0, -14 + 2 * attempt);
    schur_llt_.compute(reg);
    if (schur_llt_.info() == Eigen::Success) return true;
  }
  return false;
}

Eigen::VectorXd Solver::solve_schur(const Eigen::VectorXd& rhs) const {
  Eigen::VectorXd dy = schur_llt_.solve(rhs);
  for (int refine = 0; refine < 2; ++refine) {
    const Eigen::VectorXd res = rhs - schur_ * dy;
    dy += schur_llt_.solve(res);
  }
  return dy;
}

void Solver::direction(const Blocks& r, Blocks& dx, Blocks& dz, Eigen::VectorXd& dy) const {
  Blocks rc(nb_), h(nb_);
  for (int k = 0; k < nb_; ++k) {
    const Scaling& sc = sc_[k];
    if (!prep_.is_psd(k)) {
      const Eigen::ArrayXd dd = r[k].col(0).array() / (2.0 * sc.v.array());
      rc[k] = (sc.g.col(0).array().square() * dd).matrix();
      h[k] = rc[k] - (sc.w.col(0).array() * rd_[k].col(0).array()).matrix();
      continue;
    }
    const int s = static_cast<int>(sc.v.size());
    Eigen::MatrixXd dd(s, s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) dd(i, j) = r[k](i, j) / (sc.v(i) + sc.v(j));
    rc[k] = sym(sc.g * dd * sc.g.transpose());
    h[k] = rc[k] - sym(sc.w * rd_[k] * sc.w);
  }
  const Eigen::VectorXd rhs = prep_.apply(h) - rp_;
  dy = solve_schur(rhs);
  dz = prep_.adjoint(dy);
  dx.assign(nb_, Eigen::MatrixXd());
  for (int k = 0; k < nb_; ++k) {
    dz[k] += rd_[k];
    if (prep_.is_psd(k))
      dx[k] = rc[k] - sym(sc_[k].w * dz[k] * sc_[k].w);
    else
      dx[k] = rc[k] - (sc_[k].w.col(0).array() * dz[k].col(0).array()).matrix();
  }
}

SolveReport Solver::run() {
  const auto& p = prep_.program;
  c_ = prep_.objective_blocks();
  initial_point();
  sc_.assign(nb_, Scaling{});

  SolveReport report;
  report.status = SolveStatus::MaxIterations;
  double gamma = 0.9;
  int stalled = 0;

  auto measure = [&](double& pobj, double& dobj, double& relgap, double& pinf, double& dinf) {
    rp_ = p.rhs() - prep_.apply(x_);
    rd_ = prep_.adjoint(y_);
    for (int k = 0; k < nb_; ++k) rd_[k] -= c_[k] + z_[k];
    pobj = dot(c_, x_);
    dobj = p.rhs().dot(y_);
    relgap = std::abs(dobj - pobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    pinf = rp_.norm() / (1.0 + prep_.b_norm);
    dinf = norm(rd_) / (1.0 + prep_.c_norm);
#ifndef NDEBUG
    // b^T y - <C, X> = <X, Z> + <X, Rd> + rp^T y, and <X, Z> >= 0 on interior iterates.
    const double scale = 1.0 + std::abs(pobj) + std::abs(dobj) + std::abs(dot(x_, rd_)) + std::abs(rp_.dot(y_));
    assert(dobj - pobj - dot(x_, rd_) - rp_.dot(y_) >= -10.0 * std::numeric_limits<double>::epsilon() * scale * prep_.nu);
#endif
  };

  double pobj = 0, dobj = 0, relgap = 0, pinf = 0, dinf = 0;
  Blocks best_x, best_z;
  Eigen::VectorXd best_y;
  double best_err = kInf;
  int iter = 0;
  for (;; ++iter) {
    measure(pobj, dobj, relgap, pinf, dinf);
    const double err = std::max({relgap, pinf, dinf});
    if (err < best_err) {
      best_err = err;
      best_x = x_;
      best_z = z_;
      best_y = y_;
    }
    if (err <= tol_) {
      report.status = SolveStatus::Optimal;
      break;
    }
    if (iter >= max_iter_) break;

    for (int k = 0; k < nb_; ++k)
      if (!compute_scaling(prep_.is_psd(k), x_[k], z_[k], sc_[k])) {
        report.status = SolveStatus::NumericalFailure;
        goto done;
      }
    if (!build_schur() || !factor_schur()) {
      report.status = SolveStatus::NumericalFailure;
      break;
    }

    {
      const double mu = dot(x_, z_) / prep_.nu;
      // Predictor: r = -2 V^2.
      Blocks r(nb_);
      for (int k = 0; k < nb_; ++k) {
        const Eigen::VectorXd v2 = sc_[k].v.array().square().matrix();
        r[k] = prep_.is_psd(k) ? Eigen::MatrixXd(-2.0 * v2.asDiagonal()) : Eigen::MatrixXd(-2.0 * v2);
      }
      Blocks dx, dz;
      Eigen::VectorXd dy;
      direction(r, dx, dz, dy);

      auto steps = [&](const Blocks& ddx, const Blocks& ddz, double& ap, double& ad) {
        ap = kInf;
        ad = kInf;
        for (int k = 0; k < nb_; ++k) {
          const bool psd = prep_.is_psd(k);
          ap = std::min(ap, max_step(psd, x_[k], ddx[k], psd ? &sc_[k].chol_x : nullptr));
          ad = std::min(ad, max_step(psd, z_[k], ddz[k], nullptr));
        }
      };
      double ap, ad;
      steps(dx, dz, ap, ad);
      ap = std::min(1.0, ap);
      ad = std::min(1.0, ad);

      double mu_aff = 0.0;
      for (int k = 0; k < nb_; ++k) mu_aff += (x_[k] + ap * dx[k]).cwiseProduct(z_[k] + ad * dz[k]).sum();
      mu_aff /= prep_.nu;
      double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);
      const double infeas = std::max(pinf, dinf);
      if (infeas > relgap && infeas > 1e-3) sigma = std::max(sigma, 0.1);

      // Corrector: r = 2 sigma mu I - 2 V^2 - (dXs dZs + dZs dXs).
      for (int k = 0; k < nb_; ++k) {
        const Scaling& sc = sc_[k];
        if (!prep_.is_psd(k)) {
          const Eigen::ArrayXd dxs = dx[k].col(0).array() / sc.g.col(0).array();
          const Eigen::ArrayXd dzs = dz[k].col(0).array() * sc.g.col(0).array();
          r[k] = (2.0 * sigma * mu - 2.0 * sc.v.array().square() - 2.0 * dxs * dzs).matrix();
          continue;
        }
        const Eigen::MatrixXd dxs = sc.g_inv * dx[k] * sc.g_inv.transpose();
        const Eigen::MatrixXd dzs = sc.g.transpose() * dz[k] * sc.g;
        Eigen::MatrixXd rk = -(dxs * dzs + dzs * dxs);
        rk.diagonal().array() += 2.0 * sigma * mu - 2.0 * sc.v.array().square();
        r[k] = sym(rk);
      }
      direction(r, dx, dz, dy);
      steps(dx, dz, ap, ad);
      ap = std::min(1.0, gamma * ap);
      ad = std::min(1.0, gamma * ad);
      if (!std::isfinite(ap) || !std::isfinite(ad) || !dy.allFinite()) {
        report.status = SolveStatus::NumericalFailure;
        break;
      }

      for (int k = 0; k < nb_; ++k) {
        x_[k] += ap * dx[k];
        z_[k] += ad * dz[k];
        if (prep_.is_psd(k)) {
          x_[k] = sym(x_[k]);
          z_[k] = sym(z_[k]);
        }
      }
      y_ += ad * dy;
      gamma = 0.9 + 0.09 * std::min(ap, ad);
      stalled = std::max(ap, ad) < 1e-8 ? stalled + 1 : 0;
      if (stalled >= 3) {
        report.status = SolveStatus::NumericalFailure;
        ++iter;
        measure(pobj, dobj, relgap, pinf, dinf);
        break;
      }
    }
  }
done:
  if (report.status != SolveStatus::Optimal && best_err < std::max({relgap, pinf, dinf})) {
    x_ = best_x;
    z_ = best_z;
    y_ = best_y;
    measure(pobj, dobj, relgap, pinf, dinf);
  }
  report.iterations = iter;
  report.primal_value = pobj;
  report.dual_value = dobj;
  report.final_gap = relgap;
  report.primal_infeasibility = pinf;
  report.dual_infeasibility = dinf;
  report.primal_solution = x_;
  report.y = y_;
  report.dual_solution = p.slack(y_);
  return report;
}

}  // namespace

SolveReport solve(const ConicProgram& program, double tolerance, int max_iterations) {
  if (!(tolerance >= 1e-12 && tolerance <= 1e-2)) throw std::invalid_argument("solve: tolerance must lie in [1e-12, 1e-2]");
  if (max_iterations <= 0) throw std::invalid_argument("solve: max_iterations must be positive");
  program.validate();
  Solver solver(program, tolerance, max_iterations);
  return solver.run();
}

KktResiduals check_kkt(const ConicProgram& program, const SolveReport& report) {
  KktResiduals out;
  const int nb = program.num_blocks();
  if (static_cast<int>(report.primal_solution.size()) != nb || report.y.size() != program.num_constraints())
    throw std::invalid_argument("check_kkt: report does not match program");
  for (int j = 0; j < program.num_constraints(); ++j)
    out.primal_residual = std::max(out.primal_residual, std::abs(program.apply(j, report.primal_solution) - program.rhs()(j)));
  const auto z = program.slack(report.y);
  for (int k = 0; k < nb; ++k) {
    const ConeKind kind = program.block(k).kind;
    out.primal_cone_residual = std::max(out.primal_cone_residual, -cone_margin(kind, report.primal_solution[k]));
    out.dual_cone_residual = std::max(out.dual_cone_residual, -cone_margin(kind, z[k]));
  }
  const double pobj = program.objective(report.primal_solution);
  const double dobj = program.rhs().dot(report.y);
  out.gap = dobj - pobj;
  out.relative_gap = std::abs(out.gap) / (1.0 + std::abs(pobj) + std::abs(dobj));
  return out;
}

}  // namespace extremal::conic
