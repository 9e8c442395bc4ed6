#pragma once

#include "c0lab/model_space.hpp"

#include <memory>
#include <vector>

namespace c0lab {

/// N copies of H(theta) carrying T_N = S(theta) + ... + S(theta), or a
/// similarity transform (I (x) V) T_N (I (x) V)^{-1} of it. A single model
/// space is the case copies = 1.
class AmbientSpace {
public:
  AmbientSpace(ModelSpacePtr block, int copies);

  /// Ambient whose operator is (I (x) similarity) T_N (I (x) similarity)^{-1}.
  static std::shared_ptr<const AmbientSpace> conjugated(const AmbientSpace& base,
                                                        const Matrix& similarity);

  const InnerFunction& theta() const { return block_->theta(); }
  const ModelSpace& block() const { return *block_; }
  const ModelSpacePtr& block_ptr() const { return block_; }
  int copies() const { return copies_; }
  int block_dim() const { return block_->dim(); }
  int total_dim() const { return copies_ * block_->dim(); }
  const Matrix& operator_matrix() const { return op_; }
  /// False for conjugated ambients.
  bool is_uniform_jordan() const { return uniform_; }

private:
  ModelSpacePtr block_;
  int copies_;
  Matrix op_;
  bool uniform_ = true;
};

using AmbientSpacePtr = std::shared_ptr<const AmbientSpace>;

AmbientSpacePtr make_ambient(const InnerFunction& theta, int copies);

/// Closed subspace given by an orthonormal column frame in ambient coordinates.
struct SubspaceFrame {
  AmbientSpacePtr ambient;
  Matrix frame;

  int dim() const { return static_cast<int>(frame.cols()); }
  Matrix projector() const { return frame * frame.adjoint(); }
};

/// Invariance gate for ||(I - PP^*) T P||.
inline constexpr double kInvarianceTol = 1e-9;

struct InvarianceCheck {
  bool invariant = false;
  double residual = 0.0;
};

/// Orthonormalized span of the columns (rank by relative threshold).
SubspaceFrame span_of(AmbientSpacePtr ambient, const Matrix& columns);
SubspaceFrame zero_subspace(AmbientSpacePtr ambient);
SubspaceFrame full_subspace(AmbientSpacePtr ambient);

/// ran phi(S(theta)) = phi H^2 minus theta H^2, inside the single-copy ambient
/// over `space`. Throws NotADivisor unless phi | theta.
SubspaceFrame invariant_subspace_of_block(const ModelSpacePtr& space, const InnerFunction& phi);

/// Direct sum over copies of gamma_n H^2 minus theta H^2. gamma.size() must
/// equal ambient->copies() and every gamma_n must divide theta.
SubspaceFrame block_direct_sum(const AmbientSpacePtr& ambient,
                               const std::vector<InnerFunction>& gamma);

InvarianceCheck is_invariant(const SubspaceFrame& m);
InvarianceCheck is_invariant(const Matrix& op, const Matrix& frame);

/// ||P_A - P_B||_2. Throws AmbientMismatch for different ambients.
double principal_distance(const SubspaceFrame& a, const SubspaceFrame& b);

/// Orthonormal frame of the column space of X * frame(M).
SubspaceFrame image_closure(const Matrix& x, const SubspaceFrame& m);

SubspaceFrame orthocomplement(const SubspaceFrame& m);

/// Smallest invariant subspace containing every seed: the span of T^k x.
SubspaceFrame cyclic_subspace(const AmbientSpacePtr& ambient, const std::vector<Vector>& seeds);

bool same_ambient(const AmbientSpace& a, const AmbientSpace& b);

} // namespace c0lab
