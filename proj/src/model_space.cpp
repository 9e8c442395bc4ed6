#include "c0lab/model_space.hpp"

#include "c0lab/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace c0lab {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n)
    return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

Complex ipow(Complex x, int p) {
  Complex r(1.0, 0.0);
  for (int i = 0; i < p; ++i)
    r *= x;
  return r;
}

struct KernelIndex {
  Complex point;
  int order;
};

std::vector<KernelIndex> kernel_family(const InnerFunction& theta) {
  std::vector<KernelIndex> out;
  for (const auto& z : theta.zeros())
    for (int j = 0; j < z.mult; ++j)
      out.push_back({z.point, j});
  return out;
}

// <k_{b,i}, k_{a,j}> = (1/j!) d^j/dz^j [z^i (1 - conj(b) z)^{-(i+1)}] at z = a.
Complex kernel_inner(Complex b, int i, Complex a, int j) {
  const Complex bc = std::conj(b);
  const Complex denom = 1.0 - bc * a;
  Complex sum(0.0, 0.0);
  for (int k = 0; k <= std::min(i, j); ++k) {
    double coeff = binomial(i + j - k, k) * binomial(i + j - 2 * k, j - k);
    sum += coeff * ipow(a, i - k) * ipow(bc, j - k) / ipow(denom, i + j - k + 1);
  }
  return sum;
}

double scaled_gram_condition(const Matrix& g) {
  Eigen::VectorXd d = g.diagonal().real().cwiseSqrt().cwiseInverse();
  Matrix scaled = d.asDiagonal() * g * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix> es(scaled, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double lo = ev(0);
  double hi = ev(ev.size() - 1);
  if (lo <= 0.0)
    return std::numeric_limits<double>::infinity();
  return hi / lo;
}

} // namespace

Matrix kernel_gram_matrix(const InnerFunction& theta) {
  auto fam = kernel_family(theta);
  const auto n = static_cast<Eigen::Index>(fam.size());
  Matrix g(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      g(r, c) = kernel_inner(fam[c].point, fam[c].order, fam[r].point, fam[r].order);
  return g;
}

Matrix kernel_adjoint_action(const InnerFunction& theta) {
  auto fam = kernel_family(theta);
  const auto n = static_cast<Eigen::Index>(fam.size());
  Matrix k = Matrix::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    k(c, c) = std::conj(fam[c].point);
    if (fam[c].order > 0)
      k(c - 1, c) = 1.0;
  }
  return k;
}

Matrix shift_matrix_from_kernels(const InnerFunction& theta) {
  const Matrix g = kernel_gram_matrix(theta);
  const auto n = g.rows();
  Matrix coeff = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Vector v = Vector::Unit(n, k);
    for (int pass = 0; pass < 2; ++pass) {
      Vector gv = g * v;
      for (Eigen::Index q = 0; q < k; ++q)
        v -= coeff.col(q) * coeff.col(q).dot(gv);
    }
    double nrm = std::sqrt(std::abs(v.dot(g * v)));
    if (!(nrm > 0.0))
      throw DegenerateGram("kernel family is numerically dependent");
    coeff.col(k) = v / nrm;
  }
  Matrix adjoint = coeff.adjoint() * g * kernel_adjoint_action(theta) * coeff;
  return adjoint.adjoint();
}

Matrix takenaka_shift_matrix(const InnerFunction& theta) {
  auto a = theta.zero_sequence();
  const auto n = static_cast<Eigen::Index>(a.size());
  Matrix s = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    s(j, j) = a[j];
    const double wj = std::sqrt(1.0 - std::norm(a[j]));
    Complex chain(1.0, 0.0);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      s(i, j) = std::sqrt(1.0 - std::norm(a[i])) * wj * chain;
      chain *= -std::conj(a[i]);
    }
  }
  return s;
}

ModelSpace::ModelSpace(InnerFunction theta) : theta_(std::move(theta)) {
  if (theta_.degree() < 1)
    throw InvalidInnerFunction("model space needs degree(theta) >= 1");
  if (theta_.is_z_power()) {
    kind_ = BasisKind::monomial;
    const int d = theta_.degree();
    shift_ = Matrix::Zero(d, d);
    for (int i = 1; i < d; ++i)
      shift_(i, i - 1) = 1.0;
    return;
  }
  kind_ = BasisKind::orthonormal_rational;
  gram_condition_ = scaled_gram_condition(kernel_gram_matrix(theta_));
  if (!(gram_condition_ <= kMaxGramCondition))
    throw DegenerateGram("kernel Gram condition number " + std::to_string(gram_condition_) +
                         " exceeds limit; zeros too clustered");
  shift_ = takenaka_shift_matrix(theta_);
}

ModelSpacePtr build_model_space(const InnerFunction& theta) {
  return std::make_shared<const ModelSpace>(theta);
}

Matrix apply_inner(const InnerFunction& u, const Matrix& a) {
  const auto n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  Matrix out = id;
  for (const auto& z : u.zeros()) {
    Eigen::PartialPivLU<Matrix> lu(id - std::conj(z.point) * a);
    Matrix factor = lu.solve(a - z.point * id);
    if (!factor.allFinite())
      throw SingularResolvent("I - conj(a) A is not invertible");
    for (int k = 0; k < z.mult; ++k)
      out = out * factor;
  }
  return out;
}

Matrix functional_calculus(const ModelSpace& space, const InnerFunction& u) {
  return apply_inner(u, space.shift_matrix());
}

Matrix submodel_projector(const ModelSpace& space, const InnerFunction& d) {
  const InnerFunction rest = quotient(space.theta(), d);
  const Matrix range =
      linalg::leading_left_singular_vectors(functional_calculus(space, rest), d.degree());
  const auto n = space.dim();
  return Matrix::Identity(n, n) - range * range.adjoint();
}

Matrix range_projector(const ModelSpace& space, const InnerFunction& gamma) {
  if (!divides(gamma, space.theta()))
    throw NotADivisor(gamma.to_string() + " does not divide " + space.theta().to_string());
  const Matrix range = linalg::leading_left_singular_vectors(
      functional_calculus(space, gamma), space.dim() - gamma.degree());
  return range * range.adjoint();
}

ModelVector project_onto_submodel(const ModelSpace& space, const ModelVector& f,
                                  const InnerFunction& d) {
  if (f.coords.size() != space.dim())
    throw AmbientMismatch("vector length does not match the model space");
  return {&space, submodel_projector(space, d) * f.coords};
}

} // namespace c0lab
