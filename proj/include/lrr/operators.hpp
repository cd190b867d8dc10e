#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace lrr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Linear measurement map X -> (<A_1,X>, ..., <A_m,X>) realized by m dense
/// Gaussian sensing matrices. Matrix i is a pure function of (seed, i), so an
/// operator can be regenerated bit-exactly from its metadata. Immutable after
/// construction and safe to share across threads.
class SensingOperator {
 public:
  SensingOperator() = default;  // empty; assign from a factory before use

  /// i.i.d. N(0,1) entries, filled column-major per matrix.
  static SensingOperator gaussian(int n1, int n2, long m, std::uint64_t seed,
                                  bool materialize = true);

  /// Symmetric matrices: i.i.d. N(0,1) on and above the diagonal (drawn
  /// column by column, rows 0..c), mirrored below.
  static SensingOperator symmetric_gaussian(int n, long m, std::uint64_t seed,
                                            bool materialize = true);

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  long m() const { return m_; }
  bool symmetric() const { return symmetric_; }
  std::uint64_t seed() const { return seed_; }
  bool materialized() const { return store_; }

  /// The i-th sensing matrix (regenerated when not materialized).
  Matrix matrix(long i) const;

  /// y_i = <A_i, X>.
  Vector apply(const Matrix& x) const;

  /// sum_i v_i * A_i (unnormalized; callers divide by m where needed).
  Matrix adjoint(const Vector& v) const;

  /// Sub-operator over the kept measurement indices (0-based), order
  /// preserved. Throws if keep is empty or out of range.
  SensingOperator restrict_to(const std::vector<long>& keep) const;

 private:

  void fill_columns();
  void fill_column(long original_index, Eigen::Ref<Vector> col) const;
  long original_index(long i) const {
    return index_map_.empty() ? i : index_map_[static_cast<std::size_t>(i)];
  }

  int n1_ = 0, n2_ = 0;
  long m_ = 0;
  bool symmetric_ = false;
  std::uint64_t seed_ = 0;
  bool store_ = true;
  Matrix cols_;                  // (n1*n2) x m; column i = vec(A_i), column-major vec
  std::vector<long> index_map_;  // nonempty for restricted operators
};

/// Outlier-corrupted measurement set y = A(X*) + s* with its ground truth.
struct ProblemInstance {
  SensingOperator op;
  Matrix ustar;             // n1 x r
  Matrix vstar;             // n2 x r; empty in the PSD case
  Matrix xstar;             // n1 x n2
  Vector sstar;             // length m
  Vector y;                 // length m
  std::vector<long> omega;  // outlier support, 0-based, ascending
  double p = 0.0;
  bool symmetric = true;

  int rank() const { return static_cast<int>(ustar.cols()); }
  bool has_ground_truth() const { return ustar.size() > 0; }
};

/// Draws U* (and V*) with i.i.d. N(0,1) entries, picks floor(p*m) outlier
/// locations uniformly without replacement, fills them with N(0, outlier_std^2)
/// values, and measures y = A(X*) + s*. The sensing matrices have plain i.i.d.
/// Gaussian entries; pass symmetric_op=true for the symmetric ensemble.
ProblemInstance generate_problem(int n1, int n2, int r, double p, long m,
                                 double outlier_std, std::uint64_t seed,
                                 bool symmetric, bool symmetric_op = false,
                                 bool materialize_op = true);

/// Same corruption model with caller-supplied ground-truth factors.
ProblemInstance make_problem_with_truth(SensingOperator op, Matrix ustar,
                                        std::optional<Matrix> vstar, double p,
                                        double outlier_std, std::uint64_t seed);

/// Monte-Carlo probe of the l1/l2 isometry deviation over random unit-Frobenius
/// rank-2r matrices.
struct RipEstimate {
  double delta_hat = 0.0;  // max(sqrt(2/pi) - lo, hi - sqrt(2/pi))
  double lo = 0.0;         // min observed normalized l1 measurement norm
  double hi = 0.0;         // max observed
  double mean = 0.0;       // sample mean of the normalized norms
  long samples = 0;
  int rank_tested = 0;     // 2r
};

/// Normalized measurement norm (1/m)*||A(X)||_1 for one probe matrix.
double rip_sample(const SensingOperator& op, const Matrix& x);

RipEstimate estimate_rip_delta(const SensingOperator& op, int r, long samples,
                               std::uint64_t seed);

/// Directory layout: operator.meta (JSON), xstar.mat, ustar.mat (vstar.mat in
/// the general case), y.vec, sstar.vec, omega.idx (1-based).
void save_instance(const ProblemInstance& inst, const std::filesystem::path& dir);
ProblemInstance load_instance(const std::filesystem::path& dir);

inline constexpr double kSqrt2OverPi = 0.79788456080286541;  // sqrt(2/pi)

}  // namespace lrr
