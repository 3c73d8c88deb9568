#include "extremal/conic/program.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace extremal::conic {

namespace {

std::vector<SparseEntry> coalesce(std::vector<SparseEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  std::vector<SparseEntry> out;
  for (const auto& e : entries) {
    if (!out.empty() && out.back().row == e.row && out.back().col == e.col)
      out.back().value += e.value;
    else
      out.push_back(e);
  }
  std::erase_if(out, [](const SparseEntry& e) { return e.value == 0.0; });
  return out;
}

void add_to(Eigen::MatrixXd& m, const std::vector<SparseEntry>& entries, double scale) {
  for (const auto& e : entries) {
    m(e.row, e.col) += scale * e.value;
    if (e.row != e.col) m(e.col, e.row) += scale * e.value;
  }
}

}  // namespace

double entry_dot(const std::vector<SparseEntry>& entries, const Eigen::MatrixXd& x) {
  double acc = 0.0;
  for (const auto& e : entries) acc += e.row == e.col ? e.value * x(e.row, e.col) : e.value * (x(e.row, e.col) + x(e.col, e.row));
  return acc;
}

ConicProgram::ConicProgram(std::vector<ConeBlock> blocks, int num_constraints)
    : blocks_(std::move(blocks)), num_constraints_(num_constraints), b_(Eigen::VectorXd::Zero(num_constraints)) {
  if (blocks_.empty()) throw std::invalid_argument("ConicProgram: no cone blocks");
  if (num_constraints <= 0) throw std::invalid_argument("ConicProgram: constraint list must be nonempty");
  for (const auto& blk : blocks_) {
    if (blk.size <= 0) throw std::invalid_argument("ConicProgram: block size must be positive");
    BlockData data;
    if (blk.kind == ConeKind::Psd) {
      data.a.resize(num_constraints);
    } else {
      data.dense_a = Eigen::MatrixXd::Zero(blk.size, num_constraints);
      data.dense_c = Eigen::VectorXd::Zero(blk.size);
    }
    data_.push_back(std::move(data));
  }
}

void ConicProgram::check_position(int block, int row, int col, ConeKind kind) const {
  if (block < 0 || block >= num_blocks()) throw std::out_of_range("ConicProgram: block index out of range");
  if (blocks_[block].kind != kind) throw std::invalid_argument("ConicProgram: wrong entry kind for block");
  const int s = blocks_[block].size;
  if (row < 0 || col < 0 || row >= s || col >= s) throw std::out_of_range("ConicProgram: entry outside block");
}

void ConicProgram::check_constraint(int constraint) const {
  if (constraint < 0 || constraint >= num_constraints_) throw std::out_of_range("ConicProgram: constraint index out of range");
}

void ConicProgram::add_objective(int block, int row, int col, double value) {
  check_position(block, row, col, ConeKind::Psd);
  data_[block].c.push_back({std::min(row, col), std::max(row, col), value});
}

void ConicProgram::add_objective(int block, int index, double value) {
  check_position(block, index, 0, ConeKind::Nonneg);
  data_[block].dense_c(index) += value;
}

void ConicProgram::add_coefficient(int constraint, int block, int row, int col, double value) {
  check_constraint(constraint);
  check_position(block, row, col, ConeKind::Psd);
  data_[block].a[constraint].push_back({std::min(row, col), std::max(row, col), value});
}

void ConicProgram::add_coefficient(int constraint, int block, int index, double value) {
  check_constraint(constraint);
  check_position(block, index, 0, ConeKind::Nonneg);
  data_[block].dense_a(index, constraint) += value;
}

void ConicProgram::set_rhs(int constraint, double value) {
  check_constraint(constraint);
  b_(constraint) = value;
}

std::vector<SparseEntry> ConicProgram::psd_entries(int block, int constraint) const {
  check_position(block, 0, 0, ConeKind::Psd);
  if (constraint == -1) return coalesce(data_[block].c);
  check_constraint(constraint);
  return coalesce(data_[block].a[constraint]);
}

const Eigen::MatrixXd& ConicProgram::nonneg_matrix(int block) const {
  check_position(block, 0, 0, ConeKind::Nonneg);
  return data_[block].dense_a;
}

const Eigen::VectorXd& ConicProgram::nonneg_objective(int block) const {
  check_position(block, 0, 0, ConeKind::Nonneg);
  return data_[block].dense_c;
}

double ConicProgram::apply(int constraint, const std::vector<Eigen::MatrixXd>& x) const {
  check_constraint(constraint);
  double acc = 0.0;
  for (int k = 0; k < num_blocks(); ++k) {
    if (blocks_[k].kind == ConeKind::Psd)
      acc += entry_dot(data_[k].a[constraint], x[k]);
    else
      acc += data_[k].dense_a.col(constraint).dot(x[k].col(0));
  }
  return acc;
}

double ConicProgram::objective(const std::vector<Eigen::MatrixXd>& x) const {
  double acc = 0.0;
  for (int k = 0; k < num_blocks(); ++k) {
    if (blocks_[k].kind == ConeKind::Psd)
      acc += entry_dot(data_[k].c, x[k]);
    else
      acc += data_[k].dense_c.dot(x[k].col(0));
  }
  return acc;
}

std::vector<Eigen::MatrixXd> ConicProgram::slack(const Eigen::VectorXd& y) const {
  std::vector<Eigen::MatrixXd> z;
  for (int k = 0; k < num_blocks(); ++k) {
    const int s = blocks_[k].size;
    if (blocks_[k].kind == ConeKind::Psd) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(s, s);
      for (int j = 0; j < num_constraints_; ++j)
        if (y(j) != 0.0) add_to(m, data_[k].a[j], y(j));
      add_to(m, data_[k].c, -1.0);
      z.push_back(std::move(m));
    } else {
      z.push_back(data_[k].dense_a * y - data_[k].dense_c);
    }
  }
  return z;
}

void ConicProgram::validate() const {
  if (!b_.allFinite()) throw std::invalid_argument("ConicProgram: right-hand side is not finite");
  for (int k = 0; k < num_blocks(); ++k) {
    const auto& d = data_[k];
    auto finite = [](const std::vector<SparseEntry>& es) {
      return std::all_of(es.begin(), es.end(), [](const SparseEntry& e) { return std::isfinite(e.value); });
    };
    if (blocks_[k].kind == ConeKind::Psd) {
      if (!finite(d.c)) throw std::invalid_argument("ConicProgram: objective is not finite");
      for (const auto& a : d.a)
        if (!finite(a)) throw std::invalid_argument("ConicProgram: coefficient is not finite");
    } else if (!d.dense_a.allFinite() || !d.dense_c.allFinite()) {
      throw std::invalid_argument("ConicProgram: coefficient is not finite");
    }
  }
}

void ConicProgram::write_debug_text(std::ostream& out) const {
  out.precision(17);
  for (int k = 0; k < num_blocks(); ++k)
    out << "block " << k << (blocks_[k].kind == ConeKind::Psd ? " psd " : " nonneg ") << blocks_[k].size << "\n";
  auto dump = [&](int j) {
    for (int k = 0; k < num_blocks(); ++k) {
      if (blocks_[k].kind == ConeKind::Psd) {
        for (const auto& e : psd_entries(k, j)) out << " " << k << ":" << e.row << ":" << e.col << ":" << e.value;
      } else {
        for (int i = 0; i < blocks_[k].size; ++i) {
          const double v = j < 0 ? data_[k].dense_c(i) : data_[k].dense_a(i, j);
          if (v != 0.0) out << " " << k << ":" << i << ":" << v;
        }
      }
    }
  };
  out << "objective";
  dump(-1);
  out << "\n";
  for (int j = 0; j < num_constraints_; ++j) {
    out << "constraint " << j;
    dump(j);
    out << " rhs " << b_(j) << "\n";
  }
}

}  // namespace extremal::conic
