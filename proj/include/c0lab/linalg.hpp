#pragma once

#include <Eigen/Dense>

#include <complex>

namespace c0lab {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace linalg {

/// Singular values at or below rel_tol * max(sigma) count as zero.
inline constexpr double kRankRelTol = 1e-8;
/// Singular values at or below this are roundoff whatever the scale of the
/// matrix, so a computed u(S) that vanishes exactly has rank 0.
inline constexpr double kRankAbsFloor = 1e-13;

struct RankInfo {
  int rank = 0;
  /// sigma[rank-1] / sigma[rank]; +inf when either side is empty.
  double gap = 0.0;
  double sigma_max = 0.0;
};

Eigen::VectorXd singular_values(const Matrix& a);
double op_norm(const Matrix& a);
/// Smallest singular value of a square matrix (0 for singular, +inf for 0x0).
double sigma_min(const Matrix& a);

RankInfo numerical_rank(const Matrix& a, double rel_tol = kRankRelTol, double abs_floor = 0.0);

/// Orthonormal basis of the column space, rank by relative threshold.
Matrix orthonormal_range(const Matrix& a, double rel_tol = kRankRelTol,
                        double abs_floor = kRankAbsFloor);
/// The r leading left singular vectors (column space of known rank r).
Matrix leading_left_singular_vectors(const Matrix& a, int r);
/// The r trailing right singular vectors (null space of known dimension r).
Matrix trailing_right_singular_vectors(const Matrix& a, int r);
/// Orthonormal basis of the null space, rank by relative threshold.
Matrix orthonormal_kernel(const Matrix& a, double rel_tol = kRankRelTol,
                         double abs_floor = kRankAbsFloor);
/// Orthonormal basis of the orthogonal complement of the span of an
/// orthonormal frame.
Matrix orthonormal_complement(const Matrix& frame);
/// Nearest matrix with orthonormal columns (polar factor). Requires full
/// column rank.
Matrix polar_factor(const Matrix& a);

/// Minimum-norm least-squares solution of a x = b.
Vector lstsq(const Matrix& a, const Vector& b);

/// Block-diagonal matrix with `copies` copies of `block`.
Matrix block_diagonal(const Matrix& block, int copies);

Matrix random_unitary(int n, unsigned seed);

} // namespace linalg
} // namespace c0lab
