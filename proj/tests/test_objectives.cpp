#include <cmath>

#include "doctest.h"
#include "lrr/metrics.hpp"
#include "lrr/objectives.hpp"
#include "lrr/rng.hpp"

using lrr::FactorPair;
using lrr::Matrix;
using lrr::ProblemInstance;
using lrr::SensingOperator;
using lrr::Vector;

namespace {

Matrix random_matrix(int rows, int cols, std::uint64_t seed) {
  lrr::rng::Stream s(seed);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = s.normal();
  return m;
}

Matrix random_orthogonal(int r, std::uint64_t seed) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(r, r, seed));
  return qr.householderQ() * Matrix::Identity(r, r);
}

// Balanced rectangular ground truth from the SVD of a random product.
ProblemInstance balanced_general_instance(int n1, int n2, int r, double p, long m,
                                          std::uint64_t seed) {
  const Matrix x = random_matrix(n1, r, seed) * random_matrix(n2, r, seed + 1).transpose();
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector roots = svd.singularValues().head(r).cwiseSqrt();
  const Matrix ustar = svd.matrixU().leftCols(r) * roots.asDiagonal();
  const Matrix vstar = svd.matrixV().leftCols(r) * roots.asDiagonal();
  auto op = SensingOperator::gaussian(n1, n2, m, seed + 2);
  return lrr::make_problem_with_truth(std::move(op), ustar, vstar, p, 10.0, seed + 3);
}

// Central-difference directional derivative.
double central_diff(const std::function<double(double)>& line, double h) {
  return (line(h) - line(-h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("psd objective value") {
  SUBCASE("exact fit with no outliers is zero") {
    const auto inst = lrr::generate_problem(6, 6, 2, 0.0, 50, 10.0, 1, true);
    CHECK(lrr::f_value(inst, inst.ustar) == 0.0);
  }
  SUBCASE("at the truth the residual is the outlier vector") {
    const auto inst = lrr::generate_problem(6, 6, 2, 0.3, 50, 10.0, 2, true);
    CHECK(lrr::f_value(inst, inst.ustar) ==
          doctest::Approx(inst.sstar.lpNorm<1>() / 50.0).epsilon(1e-12));
  }
  SUBCASE("single-measurement hand evaluation") {
    auto inst = lrr::generate_problem(1, 1, 1, 0.0, 1, 10.0, 3, true);
    // shift the measurement by one: residual magnitude is exactly 1 at U*
    inst.y(0) += 1.0;
    Matrix u(1, 1);
    u(0, 0) = inst.ustar(0, 0);
    CHECK(lrr::f_value(inst, u) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("general instances are rejected") {
    const auto inst = lrr::generate_problem(4, 5, 2, 0.0, 30, 10.0, 4, false);
    CHECK_THROWS_AS(lrr::f_value(inst, Matrix::Zero(4, 2)), std::invalid_argument);
  }
}

TEST_CASE("psd subgradient") {
  const auto inst = lrr::generate_problem(6, 6, 2, 0.2, 60, 10.0, 5, true);

  SUBCASE("matches central differences at generic points") {
    const Matrix u = random_matrix(6, 2, 50);
    const Matrix d = lrr::f_subgrad(inst, u);
    for (int t = 0; t < 5; ++t) {
      const Matrix dir = random_matrix(6, 2, 60 + static_cast<std::uint64_t>(t));
      const double analytic = (d.array() * dir.array()).sum();
      const double numeric = central_diff(
          [&](double h) { return lrr::f_value(inst, u + h * dir); }, 1e-6);
      CHECK(analytic == doctest::Approx(numeric).epsilon(1e-5));
    }
  }
  SUBCASE("vanishes at zero") {
    CHECK(lrr::f_subgrad(inst, Matrix::Zero(6, 2)).isZero(0.0));
  }
  SUBCASE("symmetric sensing matrices collapse the two terms") {
    const auto sym = lrr::generate_problem(5, 5, 2, 0.2, 40, 10.0, 6, true, true);
    const Matrix u = random_matrix(5, 2, 70);
    const Matrix d = lrr::f_subgrad(sym, u);
    Vector sigma(sym.op.m());
    const Vector residual = sym.op.apply(u * u.transpose()) - sym.y;
    for (long i = 0; i < sym.op.m(); ++i)
      sigma(i) = residual(i) > 0 ? 1.0 : (residual(i) < 0 ? -1.0 : 0.0);
    const Matrix collapsed = 2.0 / static_cast<double>(sym.op.m()) * sym.op.adjoint(sigma) * u;
    CHECK((d - collapsed).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("general objective value") {
  const auto inst = balanced_general_instance(5, 7, 2, 0.0, 60, 11);

  SUBCASE("balanced factors fit exactly") {
    CHECK(lrr::g_value(inst, FactorPair{inst.ustar, inst.vstar}, 1.0) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("zero weight leaves the data term") {
    const FactorPair w{random_matrix(5, 2, 80), random_matrix(7, 2, 81)};
    const Vector residual = inst.y - inst.op.apply(w.U * w.V.transpose());
    CHECK(lrr::g_value(inst, w, 0.0) ==
          doctest::Approx(residual.lpNorm<1>() / 60.0).epsilon(1e-12));
  }
  SUBCASE("imbalanced rescaling pays exactly the regularizer") {
    // U -> 2U*, V -> V*/2 keeps the product: value is ||4S - S/4||_F = 3.75 ||S||_F
    const FactorPair w{2.0 * inst.ustar, 0.5 * inst.vstar};
    const Matrix gram = inst.ustar.transpose() * inst.ustar;
    CHECK(lrr::g_value(inst, w, 1.0) ==
          doctest::Approx(3.75 * gram.norm()).epsilon(1e-10));
  }
}

TEST_CASE("general subgradient") {
  const auto inst = balanced_general_instance(5, 6, 2, 0.2, 70, 13);

  SUBCASE("matches central differences when C is nonzero") {
    const FactorPair w{random_matrix(5, 2, 90), random_matrix(6, 2, 91)};
    const double lambda = 0.7;
    const Matrix d = lrr::g_subgrad(inst, w, lambda);
    const Matrix ws = w.stacked();
    for (int t = 0; t < 5; ++t) {
      const Matrix dir = random_matrix(11, 2, 92 + static_cast<std::uint64_t>(t));
      const double analytic = (d.array() * dir.array()).sum();
      const double numeric = central_diff(
          [&](double h) { return lrr::g_value(inst, (ws + h * dir).eval(), lambda); },
          1e-6);
      CHECK(analytic == doctest::Approx(numeric).epsilon(1e-5));
    }
  }
  SUBCASE("zero weight reduces to the data stack") {
    const FactorPair w{random_matrix(5, 2, 95), random_matrix(6, 2, 96)};
    const Matrix d0 = lrr::g_subgrad(inst, w, 0.0);
    const Vector sigma_arg = inst.op.apply(w.U * w.V.transpose()) - inst.y;
    Vector sigma(inst.op.m());
    for (long i = 0; i < inst.op.m(); ++i)
      sigma(i) = sigma_arg(i) > 0 ? 1.0 : (sigma_arg(i) < 0 ? -1.0 : 0.0);
    const Matrix astar = inst.op.adjoint(sigma);
    CHECK((d0.topRows(5) - astar * w.V / 70.0).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((d0.bottomRows(6) - astar.transpose() * w.U / 70.0).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("exactly balanced factors contribute nothing through the regularizer") {
    // same-matrix factors make C = U^T U - U^T U vanish bitwise
    const auto square = balanced_general_instance(6, 6, 2, 0.1, 50, 15);
    const Matrix u = random_matrix(6, 2, 97);
    const FactorPair w{u, u};
    const Matrix with_reg = lrr::g_subgrad(square, w, 2.5);
    const Matrix without = lrr::g_subgrad(square, w, 0.0);
    CHECK((with_reg - without).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("nearly balanced factors still select a unit-scale regularizer direction") {
    // the Frobenius-norm subdifferential is discontinuous at C = 0; a tiny
    // imbalance keeps Psi on the unit sphere rather than shrinking it
    const FactorPair w{inst.ustar, inst.vstar};  // C ~ machine epsilon, not zero
    const Matrix c = w.U.transpose() * w.U - w.V.transpose() * w.V;
    if (c.norm() > 0.0) {
      const Matrix diff = lrr::g_subgrad(inst, w, 1.0) - lrr::g_subgrad(inst, w, 0.0);
      const Matrix wu = w.stacked();
      CHECK(diff.norm() > 0.1);        // unit-norm Psi, not an epsilon artifact
      CHECK(diff.norm() < 4.0 * wu.norm());
    }
  }
}

TEST_CASE("smooth baseline") {
  const auto clean = lrr::generate_problem(6, 6, 2, 0.0, 50, 10.0, 17, true);
  SUBCASE("zero at the truth with zero gradient") {
    CHECK(lrr::xi_value(clean, clean.ustar) == 0.0);
    CHECK(lrr::xi_grad(clean, clean.ustar).isZero(0.0));
  }
  SUBCASE("outliers contribute their squared norm at the truth") {
    const auto noisy = lrr::generate_problem(6, 6, 2, 0.3, 50, 10.0, 18, true);
    CHECK(lrr::xi_value(noisy, noisy.ustar) ==
          doctest::Approx(noisy.sstar.squaredNorm() / 50.0).epsilon(1e-12));
  }
  SUBCASE("gradient matches central differences") {
    const Matrix u = random_matrix(6, 2, 100);
    const Matrix g = lrr::xi_grad(clean, u);
    for (int t = 0; t < 5; ++t) {
      const Matrix dir = random_matrix(6, 2, 110 + static_cast<std::uint64_t>(t));
      const double analytic = (g.array() * dir.array()).sum();
      const double numeric = central_diff(
          [&](double h) { return lrr::xi_value(clean, u + h * dir); }, 1e-6);
      CHECK(analytic == doctest::Approx(numeric).epsilon(1e-6));
    }
  }
}

TEST_CASE("closed-form regularity parameters") {
  SUBCASE("frozen values") {
    CHECK(lrr::sharpness_psd(0.3, 0.05, 1.0) ==
          doctest::Approx(0.181265772281489).epsilon(1e-12));
    CHECK(lrr::sharpness_psd(0.0, 0.0, 1.0) ==
          doctest::Approx(0.726218347041060).epsilon(1e-12));
    CHECK(lrr::weakconvexity_psd(0.0) == doctest::Approx(1.595769121605731).epsilon(1e-12));
    CHECK(lrr::weakconvexity_psd(0.05) == doctest::Approx(1.695769121605731).epsilon(1e-12));
    CHECK(lrr::kappa_psd(0.0, 1.0, 1.0, 2.0) ==
          doctest::Approx(3.191538243211461).epsilon(1e-12));  // 2 alpha / tau = 1
    CHECK(lrr::max_outlier_ratio(0.05) == doctest::Approx(0.433144762413167).epsilon(1e-12));
    CHECK(lrr::max_outlier_ratio(0.0) == 0.5);
    CHECK(std::abs(lrr::max_outlier_ratio(lrr::kSqrt2OverPi / 3.0)) < 1e-15);
    CHECK(lrr::sharpness_general(0.3, 0.05, 1.0, 1.0) ==
          doctest::Approx(0.128174256777258).epsilon(1e-12));
    CHECK(lrr::weakconvexity_general(0.0, 0.0) ==
          doctest::Approx(0.797884560802865).epsilon(1e-12));
    CHECK(lrr::weakconvexity_general(0.0, 1.0) ==
          doctest::Approx(2.797884560802865).epsilon(1e-12));
    CHECK(lrr::lambda_recommended(0.3, 0.05) ==
          doctest::Approx(0.099576912160573).epsilon(1e-12));
    CHECK(lrr::lambda_recommended(0.0, 0.0) ==
          doctest::Approx(0.398942280401433).epsilon(1e-12));
  }
  SUBCASE("tau is strictly increasing in delta") {
    CHECK(lrr::weakconvexity_psd(0.01) < lrr::weakconvexity_psd(0.02));
  }
  SUBCASE("psd and general tau agree at lambda = (sqrt(2/pi)+delta)/2") {
    const double delta = 0.03;
    const double lambda = (lrr::kSqrt2OverPi + delta) / 2.0;
    CHECK(lrr::weakconvexity_general(delta, lambda) ==
          doctest::Approx(lrr::weakconvexity_psd(delta)).epsilon(1e-14));
  }
  SUBCASE("general sharpness saturates in lambda") {
    const double base = lrr::sharpness_general(0.3, 0.05, 0.12, 1.0);
    CHECK(lrr::sharpness_general(0.3, 0.05, 5.0, 1.0) == base);
    CHECK(lrr::sharpness_general(0.3, 0.05, 0.0, 1.0) == 0.0);  // no regularizer, no sharpness
  }
  SUBCASE("exponent modes agree exactly at sigma_r = 1 and differ otherwise") {
    CHECK(lrr::sharpness_psd(0.1, 0.02, 1.0, lrr::SigmaExponent::proof_sqrt) ==
          lrr::sharpness_psd(0.1, 0.02, 1.0, lrr::SigmaExponent::as_stated));
    const double proof = lrr::sharpness_psd(0.1, 0.02, 4.0, lrr::SigmaExponent::proof_sqrt);
    const double stated = lrr::sharpness_psd(0.1, 0.02, 4.0, lrr::SigmaExponent::as_stated);
    CHECK(stated == doctest::Approx(2.0 * proof).epsilon(1e-12));
    CHECK(lrr::sharpness_general(0.1, 0.02, 1.0, 4.0, lrr::SigmaExponent::as_stated) ==
          doctest::Approx(2.0 * lrr::sharpness_general(0.1, 0.02, 1.0, 4.0,
                                                       lrr::SigmaExponent::proof_sqrt))
              .epsilon(1e-12));
  }
  SUBCASE("kappa_general picks the larger prefactor") {
    const double small = lrr::kappa_general(0.0, 0.1, 2.0, 0.5, 1.0);
    CHECK(small == doctest::Approx((lrr::kSqrt2OverPi) * 3.0).epsilon(1e-12));
    const double big = lrr::kappa_general(0.0, 2.0, 2.0, 0.5, 1.0);
    CHECK(big == doctest::Approx(2.0 * 3.0).epsilon(1e-12));
  }
  SUBCASE("kappa dominates alpha across a parameter grid") {
    for (double p : {0.0, 0.1, 0.2, 0.3}) {
      for (double delta : {0.0, 0.02, 0.05, 0.08}) {
        if (p >= lrr::max_outlier_ratio(delta)) continue;
        const auto reg = lrr::psd_regularity(p, delta, 1.7, 2.3);
        CHECK(reg.kappa >= reg.alpha);
      }
    }
  }
  SUBCASE("boundary outlier ratios are rejected") {
    CHECK_THROWS_AS(lrr::sharpness_psd(lrr::max_outlier_ratio(0.05), 0.05, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(lrr::sharpness_psd(0.1, 0.5, 1.0), std::invalid_argument);
  }
}

TEST_CASE("orbit invariance of the objectives") {
  const auto psd = lrr::generate_problem(6, 6, 2, 0.2, 60, 10.0, 23, true);
  const auto gen = balanced_general_instance(5, 6, 2, 0.2, 60, 29);
  for (int t = 0; t < 10; ++t) {
    const Matrix u = random_matrix(6, 2, 300 + static_cast<std::uint64_t>(t));
    const Matrix r = random_orthogonal(2, 400 + static_cast<std::uint64_t>(t));
    const double v1 = lrr::f_value(psd, u);
    const double v2 = lrr::f_value(psd, u * r);
    CHECK(std::abs(v1 - v2) <= 1e-12 * (1.0 + std::abs(v1)));

    const Matrix w = random_matrix(11, 2, 500 + static_cast<std::uint64_t>(t));
    const double g1 = lrr::g_value(gen, w, 0.4);
    const double g2 = lrr::g_value(gen, (w * r).eval(), 0.4);
    CHECK(std::abs(g1 - g2) <= 1e-12 * (1.0 + std::abs(g1)));
  }
}

TEST_CASE("weak convexity inequality holds on sampled pairs") {
  const int n = 10, r = 2;
  const auto inst = lrr::generate_problem(n, n, r, 0.2, 8 * n * r, 10.0, 31, true);
  const auto est = lrr::estimate_rip_delta(inst.op, r, 120, 37);
  const double tau = lrr::weakconvexity_psd(est.delta_hat);

  lrr::rng::Stream s(600);
  for (int t = 0; t < 200; ++t) {
    const double s1 = std::pow(10.0, -2.0 + 2.5 * s.u01());
    const double s2 = std::pow(10.0, -2.0 + 2.5 * s.u01());
    const Matrix u = inst.ustar + s1 * random_matrix(n, r, 700 + static_cast<std::uint64_t>(t));
    const Matrix up = inst.ustar + s2 * random_matrix(n, r, 900 + static_cast<std::uint64_t>(t));
    const Matrix d = lrr::f_subgrad(inst, u);
    const double lhs = lrr::f_value(inst, up) - lrr::f_value(inst, u) -
                       (d.array() * (up - u).array()).sum() +
                       tau / 2.0 * (up - u).squaredNorm();
    CHECK(lhs >= -1e-10 * (1.0 + std::abs(lrr::f_value(inst, u))));
  }
}

TEST_CASE("weak convexity inequality holds for the general objective") {
  const int n1 = 8, n2 = 10, r = 2;
  const auto inst = balanced_general_instance(n1, n2, r, 0.2, 8 * (n1 + n2) * r, 41);
  const auto est = lrr::estimate_rip_delta(inst.op, r, 120, 43);
  const double lambda = 0.3;
  const double tau = lrr::weakconvexity_general(est.delta_hat, lambda);

  lrr::rng::Stream s(610);
  const Matrix wstar = FactorPair{inst.ustar, inst.vstar}.stacked();
  for (int t = 0; t < 200; ++t) {
    const double s1 = std::pow(10.0, -2.0 + 2.5 * s.u01());
    const double s2 = std::pow(10.0, -2.0 + 2.5 * s.u01());
    const Matrix w = wstar + s1 * random_matrix(n1 + n2, r, 1700 + static_cast<std::uint64_t>(t));
    const Matrix wp = wstar + s2 * random_matrix(n1 + n2, r, 1900 + static_cast<std::uint64_t>(t));
    const Matrix d = lrr::g_subgrad(inst, w, lambda);
    const double lhs = lrr::g_value(inst, wp, lambda) - lrr::g_value(inst, w, lambda) -
                       (d.array() * (wp - w).array()).sum() +
                       tau / 2.0 * (wp - w).squaredNorm();
    CHECK(lhs >= -1e-10 * (1.0 + std::abs(lrr::g_value(inst, w, lambda))));
  }
}

TEST_CASE("sharpness inequality holds on sampled points") {
  const int n = 10, r = 2;
  const auto inst = lrr::generate_problem(n, n, r, 0.1, 8 * n * r, 10.0, 47, true);
  const auto est = lrr::estimate_rip_delta(inst.op, r, 120, 53);
  Eigen::JacobiSVD<Matrix> svd(inst.xstar);
  const double sigma_r = svd.singularValues()(r - 1);
  const double alpha = lrr::sharpness_psd(inst.p, est.delta_hat, sigma_r);
  const double fstar = lrr::f_value(inst, inst.ustar);

  lrr::rng::Stream s(620);
  for (int t = 0; t < 200; ++t) {
    const double scale = std::pow(10.0, -2.0 + 2.3 * s.u01());
    const Matrix u = inst.ustar * random_orthogonal(r, 2100 + static_cast<std::uint64_t>(t)) +
                     scale * random_matrix(n, r, 2300 + static_cast<std::uint64_t>(t));
    const double gap = lrr::f_value(inst, u) - fstar;
    const double dist = lrr::dist_to_orbit(u, inst.ustar);
    CHECK(gap >= alpha * dist * (1.0 - 1e-12) - 1e-12);
  }
}

TEST_CASE("subgradient norms respect the operator-norm bound") {
  const int n = 10, r = 2;
  const auto inst = lrr::generate_problem(n, n, r, 0.2, 8 * n * r, 10.0, 59, true);
  const auto est = lrr::estimate_rip_delta(inst.op, r, 120, 61);
  // finite-sample probe slack on top of the certified constant
  const double tol = 0.10;
  lrr::rng::Stream s(630);
  for (int t = 0; t < 100; ++t) {
    const double scale = std::pow(10.0, -1.0 + 1.5 * s.u01());
    const Matrix u = inst.ustar + scale * random_matrix(n, r, 2500 + static_cast<std::uint64_t>(t));
    const double bound = 2.0 * (lrr::kSqrt2OverPi + est.delta_hat) *
                         u.jacobiSvd().singularValues()(0) * (1.0 + tol);
    CHECK(lrr::f_subgrad(inst, u).norm() <= bound);
  }
}

TEST_CASE("balanced-factor identity") {
  const int n1 = 6, n2 = 8, r = 2;
  const auto inst = balanced_general_instance(n1, n2, r, 0.0, 40, 67);
  const Matrix wstar = FactorPair{inst.ustar, inst.vstar}.stacked();
  for (int t = 0; t < 50; ++t) {
    const FactorPair w{random_matrix(n1, r, 3000 + static_cast<std::uint64_t>(t)),
                       random_matrix(n2, r, 3100 + static_cast<std::uint64_t>(t))};
    const Matrix ws = w.stacked();
    const Matrix c = w.U.transpose() * w.U - w.V.transpose() * w.V;
    const double lhs = (inst.xstar - w.U * w.V.transpose()).squaredNorm() +
                       0.25 * c.squaredNorm();
    const Matrix cross = w.U.transpose() * inst.ustar - w.V.transpose() * inst.vstar;
    const double rhs =
        0.25 * (ws * ws.transpose() - wstar * wstar.transpose()).squaredNorm() +
        0.5 * cross.squaredNorm();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("landscape slices") {
  Matrix ustar(2, 1);
  ustar << 0.5, 0.5;
  auto op = SensingOperator::gaussian(2, 2, 40, 71);
  const auto inst = lrr::make_problem_with_truth(std::move(op), ustar, std::nullopt,
                                                 0.0, 10.0, 73);

  lrr::GridSpec grid;
  grid.u1_min = grid.u2_min = -1.0;
  grid.u1_max = grid.u2_max = 1.0;
  grid.u1_steps = grid.u2_steps = 41;

  SUBCASE("value is capped where the loss vanishes") {
    // the grid contains exactly +-U* = (+-0.5, +-0.5); p = 0 makes the loss 0 there
    const auto slice = lrr::landscape_slice(inst, grid, lrr::LossKind::l1);
    const int at = 10;   // u = -0.5 at index 10, +0.5 at index 30
    CHECK(slice.value(30, 30) == grid.cap);
    CHECK(slice.value(at, at) == grid.cap);
  }
  SUBCASE("sign symmetry of the factored objective") {
    const auto slice = lrr::landscape_slice(inst, grid, lrr::LossKind::l2);
    for (int i = 0; i < 41; ++i)
      for (int j = 0; j < 41; ++j)
        CHECK(slice.value(i, j) ==
              doctest::Approx(slice.value(40 - i, 40 - j)).epsilon(1e-9));
  }
  SUBCASE("argmax of the robust loss stays at the truth") {
    const auto slice = lrr::landscape_slice(inst, grid, lrr::LossKind::l1);
    Eigen::Index bi = 0, bj = 0;
    slice.value.maxCoeff(&bi, &bj);
    const double u1 = slice.u1[static_cast<std::size_t>(bi)];
    const double u2 = slice.u2[static_cast<std::size_t>(bj)];
    const double step = 0.05;
    const bool near_plus = std::abs(u1 - 0.5) <= step && std::abs(u2 - 0.5) <= step;
    const bool near_minus = std::abs(u1 + 0.5) <= step && std::abs(u2 + 0.5) <= step;
    CHECK((near_plus || near_minus));
  }
  SUBCASE("empty grids are rejected") {
    lrr::GridSpec bad = grid;
    bad.u1_steps = 0;
    CHECK_THROWS_AS(lrr::landscape_slice(inst, bad, lrr::LossKind::l1),
                    std::invalid_argument);
  }
}
