#pragma once

#include "c0lab/inner_function.hpp"
#include "c0lab/linalg.hpp"

#include <memory>

namespace c0lab {

enum class BasisKind { monomial, orthonormal_rational };

/// Largest admissible condition number of the normalized kernel Gram matrix.
inline constexpr double kMaxGramCondition = 1e12;

/// The model space H(theta) = H^2 minus theta H^2 together with the matrix of
/// the compressed shift S(theta) in an orthonormal basis. Columns hold images
/// of basis vectors.
///
/// For theta = z^d the basis is {1, z, ..., z^{d-1}} and S(theta) is the
/// lower nilpotent Jordan block. Otherwise the basis is the Gram-Schmidt
/// orthonormalization of the Cauchy kernels 1/(1 - conj(a) z) and their
/// conj(a)-derivatives, taken zero by zero in storage order (a
/// Takenaka-Malmquist basis).
class ModelSpace {
public:
  explicit ModelSpace(InnerFunction theta);

  const InnerFunction& theta() const { return theta_; }
  int dim() const { return theta_.degree(); }
  BasisKind basis_kind() const { return kind_; }
  const Matrix& shift_matrix() const { return shift_; }
  /// Condition number of the diagonally scaled kernel Gram matrix (1 for the
  /// monomial basis).
  double gram_condition() const { return gram_condition_; }

private:
  InnerFunction theta_;
  BasisKind kind_;
  Matrix shift_;
  double gram_condition_ = 1.0;
};

using ModelSpacePtr = std::shared_ptr<const ModelSpace>;

ModelSpacePtr build_model_space(const InnerFunction& theta);

/// Coordinates of an element of H(theta) in the space's orthonormal basis.
/// `space` is non-owning and must outlive the vector.
struct ModelVector {
  const ModelSpace* space = nullptr;
  Vector coords;

  double norm() const { return coords.norm(); }
};

/// u(A) = prod ((A - aI)(I - conj(a) A)^{-1})^m for a square matrix A whose
/// spectrum lies in the open disc.
Matrix apply_inner(const InnerFunction& u, const Matrix& a);

/// u(S(theta)).
Matrix functional_calculus(const ModelSpace& space, const InnerFunction& u);

/// Orthogonal projector of H(theta) onto H(theta/d), the orthogonal
/// complement of ran (theta/d)(S(theta)) = ker (theta/d)(S(theta))^*.
Matrix submodel_projector(const ModelSpace& space, const InnerFunction& d);

/// Orthogonal projector of H(theta) onto gamma H^2 minus theta H^2 =
/// ran gamma(S(theta)). Throws NotADivisor unless gamma | theta.
Matrix range_projector(const ModelSpace& space, const InnerFunction& gamma);
ModelVector project_onto_submodel(const ModelSpace& space, const ModelVector& f,
                                  const InnerFunction& d);

/// Gram matrix G(i, j) = <k_j, k_i> of the kernels
/// k_{a,j}(z) = z^j / (1 - conj(a) z)^{j+1}, zero by zero in storage order.
Matrix kernel_gram_matrix(const InnerFunction& theta);

/// Matrix of S^* on the kernel family: S^* k_{a,j} = conj(a) k_{a,j} + k_{a,j-1}.
Matrix kernel_adjoint_action(const InnerFunction& theta);

/// S(theta) obtained by orthonormalizing the kernel family in the Gram inner
/// product (classical Gram-Schmidt, two passes) and conjugating the adjoint
/// action. Agrees with the closed form up to a diagonal unitary.
Matrix shift_matrix_from_kernels(const InnerFunction& theta);

/// Closed-form matrix of S(theta) in the Takenaka-Malmquist basis built from
/// the zero sequence (a_1, ..., a_d):
///   S(i,i) = a_i,
///   S(i,j) = sqrt(1-|a_i|^2) sqrt(1-|a_j|^2) prod_{j<k<i} (-conj(a_k)),  i > j.
Matrix takenaka_shift_matrix(const InnerFunction& theta);

} // namespace c0lab
