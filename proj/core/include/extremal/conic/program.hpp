#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace extremal::conic {

enum class ConeKind { Psd, Nonneg };

struct ConeBlock {
  ConeKind kind;
  int size;
};

/// One symmetric coefficient: the matrix has value at (row, col) and at
/// (col, row).  row <= col after normalization.
struct SparseEntry {
  int row;
  int col;
  double value;
};

/// Block-structured conic program
///
///   primal:  maximize <C, X>  subject to <A_j, X> = b_j,  X in K
///   dual:    minimize b^T y   subject to sum_j y_j A_j - C in K
///
/// where K is a product of PSD cones and nonnegative orthants.  Coefficients
/// accumulate: adding the same position twice sums the values.
class ConicProgram {
 public:
  ConicProgram(std::vector<ConeBlock> blocks, int num_constraints);

  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int num_constraints() const { return num_constraints_; }
  const ConeBlock& block(int k) const { return blocks_.at(k); }
  const std::vector<ConeBlock>& blocks() const { return blocks_; }

  void add_objective(int block, int row, int col, double value);
  void add_objective(int block, int index, double value);
  void add_coefficient(int constraint, int block, int row, int col, double value);
  void add_coefficient(int constraint, int block, int index, double value);
  void set_rhs(int constraint, double value);

  const Eigen::VectorXd& rhs() const { return b_; }

  /// Coalesced entries of A_j (or C when constraint == -1) on a PSD block.
  std::vector<SparseEntry> psd_entries(int block, int constraint) const;
  /// Nonneg block coefficients: column j is A_j restricted to the block.
  const Eigen::MatrixXd& nonneg_matrix(int block) const;
  const Eigen::VectorXd& nonneg_objective(int block) const;

  /// <A_j, X> over all blocks; X holds one matrix per block, Nonneg blocks as
  /// column vectors.
  double apply(int constraint, const std::vector<Eigen::MatrixXd>& x) const;
  double objective(const std::vector<Eigen::MatrixXd>& x) const;
  /// sum_j y_j A_j - C.
  std::vector<Eigen::MatrixXd> slack(const Eigen::VectorXd& y) const;

  /// Throws std::invalid_argument if the program is malformed.
  void validate() const;

  /// Plain-text dump for bug reports: one header line per block, then one
  /// line per constraint with its triplets and right-hand side.
  void write_debug_text(std::ostream& out) const;

 private:
  struct BlockData {
    std::vector<std::vector<SparseEntry>> a;  // per constraint, PSD only
    std::vector<SparseEntry> c;                // PSD only
    Eigen::MatrixXd dense_a;                   // Nonneg only
    Eigen::VectorXd dense_c;                   // Nonneg only
  };

  void check_position(int block, int row, int col, ConeKind kind) const;
  void check_constraint(int constraint) const;

  std::vector<ConeBlock> blocks_;
  int num_constraints_;
  std::vector<BlockData> data_;
  Eigen::VectorXd b_;
};

/// Inner product with symmetric entries: off-diagonal entries count twice.
double entry_dot(const std::vector<SparseEntry>& entries, const Eigen::MatrixXd& x);

}  // namespace extremal::conic
