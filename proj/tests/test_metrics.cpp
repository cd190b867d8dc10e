#include <cmath>

#include "doctest.h"
#include "lrr/metrics.hpp"
#include "lrr/rng.hpp"

using lrr::Matrix;

namespace {

Matrix random_matrix(int rows, int cols, std::uint64_t seed) {
  lrr::rng::Stream s(seed);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = s.normal();
  return m;
}

// Orthogonal factor from the QR decomposition of a Gaussian matrix.
Matrix random_orthogonal(int r, std::uint64_t seed) {
  const Matrix g = random_matrix(r, r, seed);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(r, r);
}

Matrix rotation2(double theta, bool reflect) {
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  if (reflect) r.col(1) = -r.col(1);
  return r;
}

}  // namespace

TEST_CASE("alignment recovers an exact orbit member") {
  const Matrix ustar = random_matrix(8, 3, 1);
  const Matrix r0 = random_orthogonal(3, 2);
  const Matrix u = ustar * r0;

  const Matrix r = lrr::procrustes_align(u, ustar);
  CHECK((r - r0).norm() < 1e-9);
  CHECK((u - ustar * r).norm() < 1e-10);
  CHECK(lrr::dist_to_orbit(u, ustar) < 1e-10);
}

TEST_CASE("rank-one case against the two-element orthogonal group") {
  Matrix u(2, 1), ustar(2, 1);
  u << 1, 0;
  ustar << 0, 1;
  const Matrix r = lrr::procrustes_align(u, ustar);
  CHECK(std::abs(std::abs(r(0, 0)) - 1.0) < 1e-12);
  const double brute = std::min((u - ustar).norm(), (u + ustar).norm());
  CHECK(lrr::dist_to_orbit(u, ustar) == doctest::Approx(brute).epsilon(1e-12));
  CHECK(brute == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("identical factors align at distance zero") {
  const Matrix ustar = random_matrix(5, 2, 3);
  CHECK(lrr::dist_to_orbit(ustar, ustar) < 1e-12);
}

TEST_CASE("alignment beats every sampled orthogonal matrix") {
  const Matrix ustar = random_matrix(6, 2, 4);
  const Matrix u = random_matrix(6, 2, 5);
  const double dist = lrr::dist_to_orbit(u, ustar);
  for (int t = 0; t < 100; ++t) {
    const Matrix r = random_orthogonal(2, 100 + static_cast<std::uint64_t>(t));
    CHECK(dist <= (u - ustar * r).norm() + 1e-12);
  }
}

TEST_CASE("dense sweep of the rank-2 orthogonal group matches the closed form") {
  const Matrix ustar = random_matrix(5, 2, 6);
  const Matrix u = random_matrix(5, 2, 7);
  const double dist = lrr::dist_to_orbit(u, ustar);

  double brute = std::numeric_limits<double>::infinity();
  const long samples = 1000000;
  for (long i = 0; i < samples; ++i) {
    const double theta = 2.0 * M_PI * static_cast<double>(i) / (samples / 2);
    const bool reflect = i >= samples / 2;
    brute = std::min(brute, (u - ustar * rotation2(theta, reflect)).norm());
  }
  CHECK(dist <= brute + 1e-12);
  CHECK(brute - dist < 1e-4);
}

TEST_CASE("orbit distance is invariant under right rotation") {
  const Matrix ustar = random_matrix(7, 3, 8);
  const Matrix u = random_matrix(7, 3, 9);
  const double base = lrr::dist_to_orbit(u, ustar);
  for (int t = 0; t < 10; ++t) {
    const Matrix r = random_orthogonal(3, 200 + static_cast<std::uint64_t>(t));
    CHECK(std::abs(lrr::dist_to_orbit(u * r, ustar) - base) < 1e-10);
  }
}

TEST_CASE("triangle sanity for orbit distances") {
  const Matrix ustar = random_matrix(6, 2, 10);
  for (int t = 0; t < 20; ++t) {
    const Matrix u1 = random_matrix(6, 2, 300 + static_cast<std::uint64_t>(t));
    const Matrix u2 = random_matrix(6, 2, 400 + static_cast<std::uint64_t>(t));
    const double d1 = lrr::dist_to_orbit(u1, ustar);
    const double d2 = lrr::dist_to_orbit(u2, ustar);
    CHECK(std::abs(d1 - d2) <= (u1 - u2).norm() + 1e-12);
  }
}

TEST_CASE("stacked distance mirrors the factor distance") {
  const Matrix wstar = random_matrix(11, 2, 12);
  const Matrix w = random_matrix(11, 2, 13);
  CHECK(lrr::dist_to_orbit_stacked(w, wstar) ==
        doctest::Approx(lrr::dist_to_orbit(w, wstar)).epsilon(1e-15));

  // simultaneous right-multiplication leaves the distance unchanged
  const Matrix r = random_orthogonal(2, 14);
  CHECK(std::abs(lrr::dist_to_orbit_stacked(w * r, wstar * r) -
                 lrr::dist_to_orbit_stacked(w, wstar)) < 1e-10);
}

TEST_CASE("alignment handles rank-deficient cross products") {
  Matrix ustar = random_matrix(6, 3, 15);
  ustar.col(2).setZero();
  Matrix u = random_matrix(6, 3, 16);
  u.col(1).setZero();
  const Matrix r = lrr::procrustes_align(u, ustar);
  CHECK((r.transpose() * r - Matrix::Identity(3, 3)).norm() < 1e-10);
  const double dist = lrr::dist_to_orbit(u, ustar);
  for (int t = 0; t < 50; ++t) {
    const Matrix q = random_orthogonal(3, 500 + static_cast<std::uint64_t>(t));
    CHECK(dist <= (u - ustar * q).norm() + 1e-10);
  }
}

TEST_CASE("recovery reports") {
  const Matrix xstar = random_matrix(5, 5, 17);
  SUBCASE("exact recovery") {
    const auto rep = lrr::recovery_report(xstar, xstar);
    CHECK(rep.rel_error == 0.0);
    CHECK(rep.success);
    CHECK(rep.threshold == 1e-6);
  }
  SUBCASE("zero estimate fails with unit relative error") {
    const auto rep = lrr::recovery_report(Matrix::Zero(5, 5), xstar);
    CHECK(rep.rel_error == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(!rep.success);
  }
  SUBCASE("errors just above the threshold fail") {
    const auto rep = lrr::recovery_report((1.0 + 2e-6) * xstar, xstar);
    CHECK(rep.rel_error == doctest::Approx(2e-6).epsilon(1e-6));
    CHECK(!rep.success);
  }
  SUBCASE("factor overload reports the orbit distance") {
    const Matrix ustar = random_matrix(5, 2, 18);
    const auto rep = lrr::recovery_report(ustar * ustar.transpose(),
                                          ustar * ustar.transpose(), ustar, ustar);
    CHECK(rep.dist_orbit < 1e-12);
    CHECK(rep.success);
  }
}

TEST_CASE("factored distance bound") {
  SUBCASE("zero factor against an embedded identity") {
    const int n = 5, r = 2;
    Matrix ustar = Matrix::Zero(n, r);
    ustar(0, 0) = 1.0;
    ustar(1, 1) = 1.0;
    const auto check = lrr::check_distance_bound(Matrix::Zero(n, r), ustar);
    CHECK(check.lhs ==
          doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0) * r).epsilon(1e-12));
    CHECK(check.rhs == doctest::Approx(static_cast<double>(r)).epsilon(1e-12));
    CHECK(check.holds);
  }
  SUBCASE("orbit members have both sides zero") {
    const Matrix ustar = random_matrix(6, 2, 19);
    const Matrix u = ustar * random_orthogonal(2, 20);
    const auto check = lrr::check_distance_bound(u, ustar);
    CHECK(check.lhs < 1e-16);
    CHECK(check.rhs < 1e-16);
    CHECK(check.holds);
  }
  SUBCASE("random sweep never violates the bound") {
    const Matrix ustar = random_matrix(8, 2, 21);
    for (int t = 0; t < 1000; ++t) {
      const double scale = 0.1 + 3.0 * (t % 10);
      const Matrix u = scale * random_matrix(8, 2, 600 + static_cast<std::uint64_t>(t));
      CHECK(lrr::check_distance_bound(u, ustar).holds);
    }
  }
}
