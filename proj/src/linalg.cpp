#include "c0lab/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace c0lab::linalg {

Eigen::VectorXd singular_values(const Matrix& a) {
  if (a.size() == 0)
    return Eigen::VectorXd();
  return Eigen::JacobiSVD<Matrix>(a).singularValues();
}

double op_norm(const Matrix& a) {
  if (a.size() == 0)
    return 0.0;
  return singular_values(a)(0);
}

double sigma_min(const Matrix& a) {
  if (a.size() == 0)
    return std::numeric_limits<double>::infinity();
  auto s = singular_values(a);
  return s(s.size() - 1);
}

RankInfo numerical_rank(const Matrix& a, double rel_tol, double abs_floor) {
  RankInfo info;
  info.gap = std::numeric_limits<double>::infinity();
  if (a.size() == 0)
    return info;
  auto s = singular_values(a);
  info.sigma_max = s(0);
  double tol = std::max(rel_tol * s(0), abs_floor);
  int r = 0;
  while (r < s.size() && s(r) > tol)
    ++r;
  info.rank = r;
  if (r > 0 && r < s.size())
    info.gap = s(r) > 0.0 ? s(r - 1) / s(r) : std::numeric_limits<double>::infinity();
  return info;
}

Matrix orthonormal_range(const Matrix& a, double rel_tol, double abs_floor) {
  if (a.size() == 0)
    return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  auto s = svd.singularValues();
  int r = 0;
  while (r < s.size() && s(r) > std::max(rel_tol * s(0), abs_floor))
    ++r;
  return svd.matrixU().leftCols(r);
}

Matrix leading_left_singular_vectors(const Matrix& a, int r) {
  if (r == 0 || a.size() == 0)
    return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU);
  return svd.matrixU().leftCols(r);
}

Matrix trailing_right_singular_vectors(const Matrix& a, int r) {
  if (r == 0 || a.cols() == 0)
    return Matrix(a.cols(), 0);
  if (a.rows() == 0)
    return Matrix::Identity(a.cols(), a.cols()).leftCols(r);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(r);
}

Matrix orthonormal_kernel(const Matrix& a, double rel_tol, double abs_floor) {
  const auto n = a.cols();
  if (n == 0)
    return Matrix(0, 0);
  if (a.rows() == 0)
    return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  auto s = svd.singularValues();
  int r = 0;
  while (r < s.size() && s(r) > std::max(rel_tol * s(0), abs_floor))
    ++r;
  return svd.matrixV().rightCols(n - r);
}

Matrix orthonormal_complement(const Matrix& frame) {
  const auto n = frame.rows();
  const auto k = frame.cols();
  if (k == 0)
    return Matrix::Identity(n, n);
  if (k >= n)
    return Matrix(n, 0);
  Eigen::JacobiSVD<Matrix> svd(frame, Eigen::ComputeFullU);
  return svd.matrixU().rightCols(n - k);
}

Matrix polar_factor(const Matrix& a) {
  if (a.cols() == 0)
    return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

Vector lstsq(const Matrix& a, const Vector& b) {
  if (a.cols() == 0)
    return Vector(0);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  cod.setThreshold(kRankRelTol);
  return cod.solve(b);
}

Matrix block_diagonal(const Matrix& block, int copies) {
  const auto d = block.rows();
  Matrix out = Matrix::Zero(d * copies, d * copies);
  for (int n = 0; n < copies; ++n)
    out.block(n * d, n * d, d, d) = block;
  return out;
}

Matrix random_unitary(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      z(i, j) = std::complex<double>(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    auto d = r(j, j);
    if (std::abs(d) > 0)
      q.col(j) *= d / std::abs(d);
  }
  return q;
}

} // namespace c0lab::linalg
