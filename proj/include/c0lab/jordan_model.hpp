#pragma once

#include "c0lab/exact.hpp"
#include "c0lab/subspaces.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace c0lab {

/// Jordan operator S(phi_0) + S(phi_1) + ... with phi_{n+1} | phi_n. Trailing
/// constant-1 parts are trimmed, so an empty list models the zero space.
class JordanModel {
public:
  JordanModel() = default;
  /// Throws HypothesisViolated unless the parts form a divisibility chain.
  explicit JordanModel(std::vector<InnerFunction> parts);

  const std::vector<InnerFunction>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  /// phi_n, or the constant 1 past the end.
  InnerFunction part(std::size_t n) const;
  int total_degree() const;
  std::string to_string() const;

  friend bool operator==(const JordanModel& a, const JordanModel& b) { return a.parts_ == b.parts_; }

private:
  std::vector<InnerFunction> parts_;
};

/// Gate on ||theta_ref(A)|| for the annihilation precondition.
inline constexpr double kAnnihilationTol = 1e-8;
/// Minimum ratio between singular values on either side of a rank cut.
inline constexpr double kMinRankGap = 1e2;

/// m_A as the divisor of theta_ref carrying, at each zero a, the size of the
/// largest Jordan chain of A at a.
InnerFunction minimal_function(const Matrix& a, const InnerFunction& theta_ref);

/// Jordan model of A from the rank sequences rank((A - aI)^k) at the zeros of
/// theta_ref. Throws NotAnnihilated or IllConditioned.
JordanModel jordan_model_of(const Matrix& a, const InnerFunction& theta_ref);

/// Model assembled from block-size partitions at each zero:
/// phi_n = prod_a b_a^{s_n(a)}.
JordanModel model_from_partitions(const std::vector<std::pair<Complex, std::vector<int>>>& partitions);
/// Nilpotent model (z^{s_0}, z^{s_1}, ...).
JordanModel nilpotent_model(const std::vector<int>& partition);

/// P^* T P for an invariant subspace M (throws NotInvariant).
Matrix restriction_matrix(const AmbientSpace& ambient, const SubspaceFrame& m);
/// Q^* T Q with Q a frame of the orthogonal complement of M (throws NotInvariant).
Matrix compression_matrix(const AmbientSpace& ambient, const SubspaceFrame& m);

struct SubspaceModels {
  JordanModel restriction;
  JordanModel compression;
};

/// Jordan models of T|M and T_{M^perp} (floating pipeline).
SubspaceModels subspace_models(const SubspaceFrame& m);

/// The same models computed in exact rational arithmetic. Requires a uniform
/// ambient over theta = z^d; `basis` spans M in monomial coordinates.
SubspaceModels exact_subspace_models(const InnerFunction& theta, int copies,
                                     const exact::RationalMatrix& basis);

/// T_2 can be injected in T_1, i.e. tau_n | psi_n for every n.
bool injects(const JordanModel& tau, const JordanModel& psi);

/// Index pairs (m, n) within both lists for which theta does not divide
/// phi_m psi_n.
std::vector<std::pair<int, int>> product_divisibility_failures(const InnerFunction& theta,
                                                               const JordanModel& phi,
                                                               const JordanModel& psi);

/// gamma_n = theta/phi_{n/2} (n even), psi_{(n-1)/2} (n odd) for n below the
/// interleave length 2 max(len phi, len psi) (or the override), theta beyond.
std::vector<InnerFunction> canonical_divisors(const InnerFunction& theta, const JordanModel& phi,
                                              const JordanModel& psi, int copies,
                                              std::optional<int> interleave_length = std::nullopt);

/// The subspace (gamma_0 H^2 - theta H^2) + (gamma_1 H^2 - theta H^2) + ...
/// of `ambient`. Throws ModelTooLong when the interleave does not fit and
/// HypothesisViolated unless phi_0 and psi_0 divide theta. Pairs violating
/// theta | phi_m psi_n are appended to `warnings` when given.
SubspaceFrame canonical_subspace(const AmbientSpacePtr& ambient, const JordanModel& phi,
                                 const JordanModel& psi,
                                 std::vector<std::pair<int, int>>* warnings = nullptr,
                                 std::optional<int> interleave_length = std::nullopt);

SubspaceFrame canonical_subspace(const InnerFunction& theta, const JordanModel& phi,
                                 const JordanModel& psi, int copies);

} // namespace c0lab
