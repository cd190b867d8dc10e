#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "lrr/operators.hpp"

namespace lrr {

struct InitResult {
  Matrix u0;  // n1 x r
  Matrix v0;  // n2 x r (equal Gram matrix: U0^T U0 = V0^T V0)
  bool degenerate = false;  // estimate vanished (everything truncated or zero); zero factors
};

/// Median-thresholded half-sample spectral start: split y in half, keep
/// first-half measurements with |y_i| <= beta * median(|second half|), form the
/// weighted sensing-matrix average and factor its rank-r approximation. For a
/// symmetric operator the symmetric eigendecomposition is used, with
/// |eigenvalue|^(1/2) magnitudes.
InitResult truncated_spectral_init(const SensingOperator& op, const Vector& y,
                                   int r, double beta);

/// Rank-r factorization of (1/m) * adjoint(y), no truncation.
InitResult spectral_init(const SensingOperator& op, const Vector& y, int r);

/// n x r i.i.d. N(0, scale^2) entries from a seed-derived substream.
Matrix random_init(int n, int r, double scale, std::uint64_t seed);

/// Default truncation threshold multiplier 2*log(r^(1/4) * cbar^(1/2) + 20).
double beta_default(int r, double cbar);

/// Conditioning ratio ||Xstar||_F / (sqrt(r) * sigma_r(Xstar)).
double cbar(const Matrix& xstar, int r);

/// Median with the even-length convention: mean of the two central order
/// statistics.
double median_abs(const Vector& v);

}  // namespace lrr
