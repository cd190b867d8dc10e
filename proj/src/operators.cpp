#include "lrr/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "lrr/io.hpp"
#include "lrr/rng.hpp"

namespace lrr {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

SensingOperator SensingOperator::gaussian(int n1, int n2, long m,
                                          std::uint64_t seed, bool materialize) {
  require(n1 >= 1 && n2 >= 1 && m >= 1, "gaussian operator: dims and m must be >= 1");
  SensingOperator op;
  op.n1_ = n1;
  op.n2_ = n2;
  op.m_ = m;
  op.symmetric_ = false;
  op.seed_ = seed;
  op.store_ = materialize;
  if (materialize) op.fill_columns();
  return op;
}

SensingOperator SensingOperator::symmetric_gaussian(int n, long m,
                                                    std::uint64_t seed,
                                                    bool materialize) {
  require(n >= 1 && m >= 1, "symmetric operator: dims and m must be >= 1");
  SensingOperator op;
  op.n1_ = n;
  op.n2_ = n;
  op.m_ = m;
  op.symmetric_ = true;
  op.seed_ = seed;
  op.store_ = materialize;
  if (materialize) op.fill_columns();
  return op;
}

void SensingOperator::fill_column(long original_index, Eigen::Ref<Vector> col) const {
  rng::Stream stream = rng::substream(seed_, rng::kTagSensing,
                                      static_cast<std::uint64_t>(original_index));
  if (!symmetric_) {
    // Column-major fill matches vec(A_i) ordering.
    for (long j = 0; j < static_cast<long>(n1_) * n2_; ++j) col(j) = stream.normal();
    return;
  }
  // Upper triangle including the diagonal, column by column; mirror below.
  const long n = n1_;
  for (long c = 0; c < n; ++c) {
    for (long r = 0; r <= c; ++r) {
      const double v = stream.normal();
      col(c * n + r) = v;
      col(r * n + c) = v;
    }
  }
}

void SensingOperator::fill_columns() {
  cols_.resize(static_cast<long>(n1_) * n2_, m_);
  for (long i = 0; i < m_; ++i) fill_column(original_index(i), cols_.col(i));
}

Matrix SensingOperator::matrix(long i) const {
  require(i >= 0 && i < m_, "matrix index out of range");
  if (store_) {
    return Eigen::Map<const Matrix>(cols_.col(i).data(), n1_, n2_);
  }
  Vector col(static_cast<long>(n1_) * n2_);
  fill_column(original_index(i), col);
  return Eigen::Map<const Matrix>(col.data(), n1_, n2_);
}

Vector SensingOperator::apply(const Matrix& x) const {
  require(x.rows() == n1_ && x.cols() == n2_, "apply: matrix dims do not match operator");
  const Eigen::Map<const Vector> vx(x.data(), x.size());
  Vector y(m_);
  if (store_) {
    // One dot kernel per measurement: coordinate i is bit-identical across
    // restriction and regeneration, which the coherence invariants require.
    for (long i = 0; i < m_; ++i) y(i) = cols_.col(i).dot(vx);
    return y;
  }
  Vector col(static_cast<long>(n1_) * n2_);
  for (long i = 0; i < m_; ++i) {
    fill_column(original_index(i), col);
    y(i) = col.dot(vx);
  }
  return y;
}

Matrix SensingOperator::adjoint(const Vector& v) const {
  require(v.size() == m_, "adjoint: vector length does not match operator");
  // Strict per-column accumulation keeps the sum order independent of m, so a
  // zero-padded weight vector and a restricted operator agree bit for bit.
  Vector flat = Vector::Zero(static_cast<long>(n1_) * n2_);
  if (store_) {
    for (long i = 0; i < m_; ++i) flat += v(i) * cols_.col(i);
    return Eigen::Map<const Matrix>(flat.data(), n1_, n2_);
  }
  Vector col(static_cast<long>(n1_) * n2_);
  for (long i = 0; i < m_; ++i) {
    fill_column(original_index(i), col);
    flat += v(i) * col;
  }
  return Eigen::Map<const Matrix>(flat.data(), n1_, n2_);
}

SensingOperator SensingOperator::restrict_to(const std::vector<long>& keep) const {
  require(!keep.empty(), "restrict_to: keep set must be nonempty");
  for (long i : keep) require(i >= 0 && i < m_, "restrict_to: index out of range");
  SensingOperator sub;
  sub.n1_ = n1_;
  sub.n2_ = n2_;
  sub.m_ = static_cast<long>(keep.size());
  sub.symmetric_ = symmetric_;
  sub.seed_ = seed_;
  sub.store_ = store_;
  sub.index_map_.reserve(keep.size());
  for (long i : keep) sub.index_map_.push_back(original_index(i));
  if (store_) {
    sub.cols_.resize(static_cast<long>(n1_) * n2_, sub.m_);
    for (long j = 0; j < sub.m_; ++j) sub.cols_.col(j) = cols_.col(keep[static_cast<std::size_t>(j)]);
  }
  return sub;
}

namespace {

Matrix draw_gaussian_matrix(int rows, int cols, rng::Stream& stream) {
  Matrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = stream.normal();
  return m;
}

// floor(p*m) locations, uniform without replacement, returned ascending.
std::vector<long> draw_support(long m, long count, rng::Stream& stream) {
  std::vector<long> all(static_cast<std::size_t>(m));
  std::iota(all.begin(), all.end(), 0L);
  for (long i = 0; i < count; ++i) {
    const long j = i + static_cast<long>(stream.below(static_cast<std::uint64_t>(m - i)));
    std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
  }
  std::vector<long> support(all.begin(), all.begin() + count);
  std::sort(support.begin(), support.end());
  return support;
}

}  // namespace

ProblemInstance make_problem_with_truth(SensingOperator op, Matrix ustar,
                                        std::optional<Matrix> vstar, double p,
                                        double outlier_std, std::uint64_t seed) {
  require(p >= 0.0 && p < 1.0, "outlier ratio must satisfy 0 <= p < 1");
  require(outlier_std >= 0.0, "outlier std must be nonnegative");
  require(ustar.rows() == op.n1(), "ustar rows must match operator n1");

  ProblemInstance inst;
  inst.symmetric = !vstar.has_value();
  if (inst.symmetric) {
    require(op.n1() == op.n2(), "PSD instance needs a square operator");
    inst.xstar = ustar * ustar.transpose();
  } else {
    require(vstar->rows() == op.n2(), "vstar rows must match operator n2");
    require(vstar->cols() == ustar.cols(), "factor ranks must agree");
    inst.vstar = *vstar;
    inst.xstar = ustar * vstar->transpose();
  }
  inst.ustar = std::move(ustar);
  inst.p = p;

  const long m = op.m();
  const long outliers = static_cast<long>(std::floor(p * static_cast<double>(m)));
  rng::Stream omega_stream = rng::substream(seed, rng::kTagOmega, 0);
  inst.omega = draw_support(m, outliers, omega_stream);

  inst.sstar = Vector::Zero(m);
  rng::Stream outlier_stream = rng::substream(seed, rng::kTagOutlier, 0);
  for (long idx : inst.omega) inst.sstar(idx) = outlier_std * outlier_stream.normal();

  inst.y = op.apply(inst.xstar) + inst.sstar;
  inst.op = std::move(op);
  return inst;
}

ProblemInstance generate_problem(int n1, int n2, int r, double p, long m,
                                 double outlier_std, std::uint64_t seed,
                                 bool symmetric, bool symmetric_op,
                                 bool materialize_op) {
  require(r >= 1 && r <= std::min(n1, n2), "rank must satisfy 1 <= r <= min(n1,n2)");
  if (symmetric) require(n1 == n2, "PSD instance needs n1 == n2");
  if (symmetric_op) require(symmetric, "symmetric sensing matrices need a square PSD instance");

  const std::uint64_t op_seed = rng::substream_seed(seed, rng::kTagOperatorSeed, 0);
  SensingOperator op = symmetric_op
                           ? SensingOperator::symmetric_gaussian(n1, m, op_seed, materialize_op)
                           : SensingOperator::gaussian(n1, n2, m, op_seed, materialize_op);

  rng::Stream ustream = rng::substream(seed, rng::kTagUStar, 0);
  Matrix ustar = draw_gaussian_matrix(n1, r, ustream);
  std::optional<Matrix> vstar;
  if (!symmetric) {
    rng::Stream vstream = rng::substream(seed, rng::kTagVStar, 0);
    vstar = draw_gaussian_matrix(n2, r, vstream);
  }
  return make_problem_with_truth(std::move(op), std::move(ustar), std::move(vstar), p,
                                 outlier_std, seed);
}

double rip_sample(const SensingOperator& op, const Matrix& x) {
  return op.apply(x).lpNorm<1>() / static_cast<double>(op.m());
}

RipEstimate estimate_rip_delta(const SensingOperator& op, int r, long samples,
                               std::uint64_t seed) {
  require(samples >= 1, "rip probe needs samples >= 1");
  require(2 * r <= std::min(op.n1(), op.n2()), "rip probe: 2r exceeds matrix dims");

  RipEstimate est;
  est.samples = samples;
  est.rank_tested = 2 * r;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  for (long s = 0; s < samples; ++s) {
    rng::Stream stream = rng::substream(seed, rng::kTagRipSample, static_cast<std::uint64_t>(s));
    Matrix g = draw_gaussian_matrix(op.n1(), 2 * r, stream);
    Matrix h = draw_gaussian_matrix(op.n2(), 2 * r, stream);
    Matrix x = g * h.transpose();
    x /= x.norm();
    const double t = rip_sample(op, x);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
    sum += t;
  }
  est.lo = lo;
  est.hi = hi;
  est.mean = sum / static_cast<double>(samples);
  est.delta_hat = std::max(kSqrt2OverPi - lo, hi - kSqrt2OverPi);
  return est;
}

void save_instance(const ProblemInstance& inst, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json meta{{"n1", inst.op.n1()}, {"n2", inst.op.n2()},   {"m", inst.op.m()},
                      {"seed", inst.op.seed()}, {"symmetric", inst.op.symmetric()}};
  io::write_text_file(dir / "operator.meta", meta.dump(2) + "\n");
  io::write_matrix(dir / "xstar.mat", inst.xstar);
  io::write_matrix(dir / "ustar.mat", inst.ustar);
  if (!inst.symmetric) io::write_matrix(dir / "vstar.mat", inst.vstar);
  io::write_vector(dir / "y.vec", inst.y);
  io::write_vector(dir / "sstar.vec", inst.sstar);
  io::write_indices(dir / "omega.idx", inst.omega);
}

ProblemInstance load_instance(const std::filesystem::path& dir) {
  const auto meta = nlohmann::json::parse(io::read_text_file(dir / "operator.meta"));
  const int n1 = meta.at("n1").get<int>();
  const int n2 = meta.at("n2").get<int>();
  const long m = meta.at("m").get<long>();
  const auto seed = meta.at("seed").get<std::uint64_t>();
  const bool op_symmetric = meta.at("symmetric").get<bool>();

  ProblemInstance inst;
  inst.op = op_symmetric ? SensingOperator::symmetric_gaussian(n1, m, seed)
                         : SensingOperator::gaussian(n1, n2, m, seed);
  inst.xstar = io::read_matrix(dir / "xstar.mat");
  inst.ustar = io::read_matrix(dir / "ustar.mat");
  inst.symmetric = !std::filesystem::exists(dir / "vstar.mat");
  if (!inst.symmetric) inst.vstar = io::read_matrix(dir / "vstar.mat");
  inst.y = io::read_vector(dir / "y.vec");
  inst.sstar = io::read_vector(dir / "sstar.vec");
  inst.omega = io::read_indices(dir / "omega.idx");
  inst.p = static_cast<double>(inst.omega.size()) / static_cast<double>(m);
  return inst;
}

}  // namespace lrr
