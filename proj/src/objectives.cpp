#include "lrr/objectives.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lrr {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

Vector sign_of(const Vector& v) {
  Vector s(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    s(i) = v(i) > 0.0 ? 1.0 : (v(i) < 0.0 ? -1.0 : 0.0);
  return s;
}

void check_psd_instance(const ProblemInstance& inst, const Matrix& u, const char* who) {
  require(inst.symmetric, std::string(who) + ": instance is not PSD");
  require(u.rows() == inst.op.n1(), std::string(who) + ": factor rows mismatch");
}

}  // namespace

Matrix FactorPair::stacked() const {
  Matrix w(U.rows() + V.rows(), U.cols());
  w.topRows(U.rows()) = U;
  w.bottomRows(V.rows()) = V;
  return w;
}

FactorPair FactorPair::from_stacked(const Matrix& w, int n1, int n2) {
  require(w.rows() == n1 + n2, "from_stacked: row count mismatch");
  return {w.topRows(n1), w.bottomRows(n2)};
}

double f_value(const ProblemInstance& inst, const Matrix& u) {
  check_psd_instance(inst, u, "f_value");
  const Vector residual = inst.y - inst.op.apply(u * u.transpose());
  return residual.lpNorm<1>() / static_cast<double>(inst.op.m());
}

Matrix f_subgrad(const ProblemInstance& inst, const Matrix& u) {
  check_psd_instance(inst, u, "f_subgrad");
  const Vector sigma = sign_of(inst.op.apply(u * u.transpose()) - inst.y);
  const Matrix astar = inst.op.adjoint(sigma);
  return (astar.transpose() * u + astar * u) / static_cast<double>(inst.op.m());
}

double g_value(const ProblemInstance& inst, const FactorPair& w, double lambda) {
  require(lambda >= 0.0, "g_value: lambda must be >= 0");
  require(w.U.rows() == inst.op.n1() && w.V.rows() == inst.op.n2(),
          "g_value: factor dims mismatch");
  const Vector residual = inst.y - inst.op.apply(w.U * w.V.transpose());
  const double data = residual.lpNorm<1>() / static_cast<double>(inst.op.m());
  const Matrix c = w.U.transpose() * w.U - w.V.transpose() * w.V;
  return data + lambda * c.norm();
}

double g_value(const ProblemInstance& inst, const Matrix& w_stacked, double lambda) {
  return g_value(inst, FactorPair::from_stacked(w_stacked, inst.op.n1(), inst.op.n2()),
                 lambda);
}

Matrix g_subgrad(const ProblemInstance& inst, const FactorPair& w, double lambda) {
  require(lambda >= 0.0, "g_subgrad: lambda must be >= 0");
  require(w.U.rows() == inst.op.n1() && w.V.rows() == inst.op.n2(),
          "g_subgrad: factor dims mismatch");
  const double m = static_cast<double>(inst.op.m());
  const Vector sigma = sign_of(inst.op.apply(w.U * w.V.transpose()) - inst.y);
  const Matrix astar = inst.op.adjoint(sigma);

  Matrix d(w.U.rows() + w.V.rows(), w.U.cols());
  d.topRows(w.U.rows()) = (astar * w.V) / m;
  d.bottomRows(w.V.rows()) = (astar.transpose() * w.U) / m;

  if (lambda > 0.0) {
    const Matrix c = w.U.transpose() * w.U - w.V.transpose() * w.V;
    const double cnorm = c.norm();
    if (cnorm > 0.0) {
      const Matrix psi_sym = (c + c.transpose()) / cnorm;  // Psi + Psi^T
      d.topRows(w.U.rows()) += lambda * (w.U * psi_sym);
      d.bottomRows(w.V.rows()) += lambda * (-w.V * psi_sym);
    }
  }
  return d;
}

Matrix g_subgrad(const ProblemInstance& inst, const Matrix& w_stacked, double lambda) {
  return g_subgrad(inst, FactorPair::from_stacked(w_stacked, inst.op.n1(), inst.op.n2()),
                   lambda);
}

double xi_value(const ProblemInstance& inst, const Matrix& u) {
  check_psd_instance(inst, u, "xi_value");
  const Vector residual = inst.y - inst.op.apply(u * u.transpose());
  return residual.squaredNorm() / static_cast<double>(inst.op.m());
}

Matrix xi_grad(const ProblemInstance& inst, const Matrix& u) {
  check_psd_instance(inst, u, "xi_grad");
  const Vector rho = inst.op.apply(u * u.transpose()) - inst.y;
  const Matrix astar = inst.op.adjoint(rho);
  return 2.0 * (astar.transpose() * u + astar * u) / static_cast<double>(inst.op.m());
}

double max_outlier_ratio(double delta) {
  require(delta >= 0.0 && delta < kSqrt2OverPi, "max_outlier_ratio: need 0 <= delta < sqrt(2/pi)");
  return 0.5 - delta / (kSqrt2OverPi - delta);
}

namespace {

double zeta(double p, double delta) {
  return 2.0 * (1.0 - p) * (kSqrt2OverPi - delta) - (kSqrt2OverPi + delta);
}

}  // namespace

double sharpness_psd(double p, double delta, double sigma_r, SigmaExponent mode) {
  require(delta >= 0.0 && delta < kSqrt2OverPi / 3.0,
          "sharpness_psd: need 0 <= delta < sqrt(2/pi)/3");
  require(p >= 0.0 && p < max_outlier_ratio(delta),
          "sharpness_psd: outlier ratio exceeds the bound 1/2 - delta/(sqrt(2/pi)-delta)");
  require(sigma_r > 0.0, "sharpness_psd: sigma_r must be positive");
  const double sig = mode == SigmaExponent::proof_sqrt ? std::sqrt(sigma_r) : sigma_r;
  return std::sqrt(2.0 * (std::sqrt(2.0) - 1.0)) * zeta(p, delta) * sig;
}

double weakconvexity_psd(double delta) {
  require(delta >= 0.0, "weakconvexity_psd: delta must be >= 0");
  return 2.0 * (kSqrt2OverPi + delta);
}

double kappa_psd(double delta, double ustar_fro, double alpha, double tau) {
  require(delta >= 0.0 && ustar_fro >= 0.0 && alpha >= 0.0 && tau > 0.0,
          "kappa_psd: bad arguments");
  return 2.0 * (kSqrt2OverPi + delta) * (ustar_fro + 2.0 * alpha / tau);
}

double sharpness_general(double p, double delta, double lambda, double sigma_r,
                         SigmaExponent mode) {
  require(delta >= 0.0 && delta < kSqrt2OverPi / 3.0,
          "sharpness_general: need 0 <= delta < sqrt(2/pi)/3");
  require(p >= 0.0 && p < max_outlier_ratio(delta),
          "sharpness_general: outlier ratio exceeds the bound");
  require(lambda >= 0.0, "sharpness_general: lambda must be >= 0");
  require(sigma_r > 0.0, "sharpness_general: sigma_r must be positive");
  const double sig =
      mode == SigmaExponent::proof_sqrt ? std::sqrt(sigma_r) : sigma_r;
  return std::sqrt(std::sqrt(2.0) - 1.0) * std::min(zeta(p, delta), 2.0 * lambda) * sig;
}

double weakconvexity_general(double delta, double lambda) {
  require(delta >= 0.0 && lambda >= 0.0, "weakconvexity_general: bad arguments");
  return kSqrt2OverPi + delta + 2.0 * lambda;
}

double kappa_general(double delta, double lambda, double wstar_fro, double alpha,
                     double tau) {
  require(delta >= 0.0 && lambda >= 0.0 && wstar_fro >= 0.0 && alpha >= 0.0 && tau > 0.0,
          "kappa_general: bad arguments");
  return std::max(kSqrt2OverPi + delta, lambda) * (wstar_fro + 2.0 * alpha / tau);
}

double lambda_recommended(double p, double delta) {
  require(delta >= 0.0 && delta < kSqrt2OverPi, "lambda_recommended: bad delta");
  require(p >= 0.0 && p <= max_outlier_ratio(delta), "lambda_recommended: bad p");
  return zeta(p, delta) / 2.0;
}

RegularityParams psd_regularity(double p, double delta, double sigma_r,
                                double ustar_fro, SigmaExponent mode) {
  RegularityParams reg;
  reg.alpha = sharpness_psd(p, delta, sigma_r, mode);
  reg.mode = mode;
  reg.tau = weakconvexity_psd(delta);
  reg.kappa = kappa_psd(delta, ustar_fro, reg.alpha, reg.tau);
  reg.delta = delta;
  reg.p = p;
  reg.sigma_r = sigma_r;
  reg.general = false;
  return reg;
}

RegularityParams general_regularity(double p, double delta, double lambda,
                                    double sigma_r, double wstar_fro,
                                    SigmaExponent mode) {
  RegularityParams reg;
  reg.alpha = sharpness_general(p, delta, lambda, sigma_r, mode);
  reg.tau = weakconvexity_general(delta, lambda);
  reg.kappa = kappa_general(delta, lambda, wstar_fro, reg.alpha, reg.tau);
  reg.delta = delta;
  reg.p = p;
  reg.sigma_r = sigma_r;
  reg.lambda = lambda;
  reg.mode = mode;
  reg.general = true;
  return reg;
}

LandscapeGrid landscape_slice(const ProblemInstance& inst, const GridSpec& grid,
                              LossKind loss, const Matrix* base) {
  require(inst.symmetric, "landscape_slice: instance must be PSD");
  require(inst.rank() == 1 || base != nullptr, "landscape_slice: r=1 or a base factor required");
  require(grid.u1_steps >= 1 && grid.u2_steps >= 1, "landscape_slice: grid is empty");
  const int n = inst.op.n1();
  require(grid.coord1 >= 0 && grid.coord1 < n && grid.coord2 >= 0 && grid.coord2 < n &&
              grid.coord1 != grid.coord2,
          "landscape_slice: bad slice coordinates");

  Matrix u = base ? *base : Matrix::Zero(n, 1);
  require(u.rows() == n && u.cols() == 1, "landscape_slice: base must be n x 1");

  LandscapeGrid out;
  out.u1.resize(static_cast<std::size_t>(grid.u1_steps));
  out.u2.resize(static_cast<std::size_t>(grid.u2_steps));
  out.value.resize(grid.u1_steps, grid.u2_steps);
  const auto coord = [](double lo, double hi, int steps, int i) {
    return steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  };
  for (int i = 0; i < grid.u1_steps; ++i)
    out.u1[static_cast<std::size_t>(i)] = coord(grid.u1_min, grid.u1_max, grid.u1_steps, i);
  for (int j = 0; j < grid.u2_steps; ++j)
    out.u2[static_cast<std::size_t>(j)] = coord(grid.u2_min, grid.u2_max, grid.u2_steps, j);

  for (int i = 0; i < grid.u1_steps; ++i) {
    u(grid.coord1, 0) = out.u1[static_cast<std::size_t>(i)];
    for (int j = 0; j < grid.u2_steps; ++j) {
      u(grid.coord2, 0) = out.u2[static_cast<std::size_t>(j)];
      const double v = loss == LossKind::l1 ? f_value(inst, u) : xi_value(inst, u);
      out.value(i, j) = v <= 0.0 ? grid.cap : std::min(-std::log(v), grid.cap);
    }
  }
  return out;
}

}  // namespace lrr
