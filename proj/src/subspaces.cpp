#include "c0lab/subspaces.hpp"

#include "c0lab/errors.hpp"

namespace c0lab {

AmbientSpace::AmbientSpace(ModelSpacePtr block, int copies)
    : block_(std::move(block)), copies_(copies) {
  if (copies_ < 1)
    throw PreconditionViolated("ambient needs at least one copy");
  op_ = linalg::block_diagonal(block_->shift_matrix(), copies_);
}

std::shared_ptr<const AmbientSpace> AmbientSpace::conjugated(const AmbientSpace& base,
                                                             const Matrix& similarity) {
  if (similarity.rows() != base.block_dim() || similarity.cols() != base.block_dim())
    throw AmbientMismatch("similarity size does not match the model space");
  auto out = std::make_shared<AmbientSpace>(base);
  const Matrix big = linalg::block_diagonal(similarity, base.copies());
  out->op_ = big * base.op_ * big.partialPivLu().inverse();
  out->uniform_ = false;
  return out;
}

AmbientSpacePtr make_ambient(const InnerFunction& theta, int copies) {
  return std::make_shared<const AmbientSpace>(build_model_space(theta), copies);
}

bool same_ambient(const AmbientSpace& a, const AmbientSpace& b) {
  if (&a == &b)
    return true;
  if (a.total_dim() != b.total_dim() || a.copies() != b.copies() || !(a.theta() == b.theta()))
    return false;
  if (a.is_uniform_jordan() && b.is_uniform_jordan())
    return true;
  return (a.operator_matrix() - b.operator_matrix()).norm() <= 1e-12;
}

SubspaceFrame span_of(AmbientSpacePtr ambient, const Matrix& columns) {
  if (columns.rows() != ambient->total_dim())
    throw AmbientMismatch("column length does not match the ambient dimension");
  Matrix frame = linalg::orthonormal_range(columns);
  return {std::move(ambient), std::move(frame)};
}

SubspaceFrame zero_subspace(AmbientSpacePtr ambient) {
  const int n = ambient->total_dim();
  return {std::move(ambient), Matrix(n, 0)};
}

SubspaceFrame full_subspace(AmbientSpacePtr ambient) {
  const int n = ambient->total_dim();
  return {std::move(ambient), Matrix::Identity(n, n)};
}

SubspaceFrame invariant_subspace_of_block(const ModelSpacePtr& space, const InnerFunction& phi) {
  if (!divides(phi, space->theta()))
    throw NotADivisor(phi.to_string() + " does not divide " + space->theta().to_string());
  auto ambient = std::make_shared<const AmbientSpace>(space, 1);
  const int k = space->dim() - phi.degree();
  Matrix frame = linalg::leading_left_singular_vectors(functional_calculus(*space, phi), k);
  return {std::move(ambient), std::move(frame)};
}

SubspaceFrame block_direct_sum(const AmbientSpacePtr& ambient,
                               const std::vector<InnerFunction>& gamma) {
  if (static_cast<int>(gamma.size()) != ambient->copies())
    throw AmbientMismatch("one divisor per copy required");
  const auto& space = ambient->block();
  const int d = space.dim();
  std::vector<Matrix> pieces;
  int total = 0;
  for (const auto& g : gamma) {
    if (!divides(g, space.theta()))
      throw NotADivisor(g.to_string() + " does not divide " + space.theta().to_string());
    pieces.push_back(
        linalg::leading_left_singular_vectors(functional_calculus(space, g), d - g.degree()));
    total += static_cast<int>(pieces.back().cols());
  }
  Matrix frame = Matrix::Zero(ambient->total_dim(), total);
  int col = 0;
  for (std::size_t n = 0; n < pieces.size(); ++n) {
    frame.block(static_cast<Eigen::Index>(n) * d, col, d, pieces[n].cols()) = pieces[n];
    col += static_cast<int>(pieces[n].cols());
  }
  return {ambient, std::move(frame)};
}

InvarianceCheck is_invariant(const Matrix& op, const Matrix& frame) {
  if (frame.cols() == 0)
    return {true, 0.0};
  Matrix tp = op * frame;
  Matrix defect = tp - frame * (frame.adjoint() * tp);
  double r = linalg::op_norm(defect);
  return {r <= kInvarianceTol, r};
}

InvarianceCheck is_invariant(const SubspaceFrame& m) {
  return is_invariant(m.ambient->operator_matrix(), m.frame);
}

double principal_distance(const SubspaceFrame& a, const SubspaceFrame& b) {
  if (!same_ambient(*a.ambient, *b.ambient))
    throw AmbientMismatch("subspaces live in different ambients");
  return linalg::op_norm(a.projector() - b.projector());
}

SubspaceFrame image_closure(const Matrix& x, const SubspaceFrame& m) {
  if (x.cols() != m.ambient->total_dim() || x.rows() != m.ambient->total_dim())
    throw AmbientMismatch("operator size does not match the ambient");
  if (m.dim() == 0)
    return zero_subspace(m.ambient);
  return {m.ambient, linalg::orthonormal_range(x * m.frame)};
}

SubspaceFrame orthocomplement(const SubspaceFrame& m) {
  return {m.ambient, linalg::orthonormal_complement(m.frame)};
}

SubspaceFrame cyclic_subspace(const AmbientSpacePtr& ambient, const std::vector<Vector>& seeds) {
  const int n = ambient->total_dim();
  const Matrix& op = ambient->operator_matrix();
  Matrix q(n, 0);
  auto append = [&](Vector v, double scale) {
    for (int pass = 0; pass < 2; ++pass)
      if (q.cols() > 0)
        v -= q * (q.adjoint() * v);
    double nrm = v.norm();
    if (nrm <= linalg::kRankRelTol * scale || q.cols() == n)
      return false;
    q.conservativeResize(Eigen::NoChange, q.cols() + 1);
    q.col(q.cols() - 1) = v / nrm;
    return true;
  };
  for (const auto& x : seeds) {
    if (x.size() != n)
      throw AmbientMismatch("seed length does not match the ambient dimension");
    const double scale = x.norm();
    if (scale == 0.0)
      continue;
    if (!append(x, scale))
      continue;
    while (append(op * q.col(q.cols() - 1), 1.0)) {
    }
  }
  return {ambient, std::move(q)};
}

} // namespace c0lab
