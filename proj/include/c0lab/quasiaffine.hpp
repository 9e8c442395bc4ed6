#pragma once

#include "c0lab/jordan_model.hpp"

#include <array>
#include <string>
#include <vector>

namespace c0lab {

enum class ScheduleKind { factorial, polynomial, custom };

/// Positive weights c_0, c_1, ... materialized up to a fixed length.
class WeightSchedule {
public:
  WeightSchedule() = default;
  WeightSchedule(ScheduleKind kind, std::vector<double> values);

  /// c_n = 1/(n+1)!.
  static WeightSchedule factorial(int length);
  /// c_n = (n+1)^{-alpha}.
  static WeightSchedule polynomial(int length, double alpha = 2.0);
  static WeightSchedule custom(std::vector<double> values);

  ScheduleKind kind() const { return kind_; }
  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int n) const;
  const std::vector<double>& values() const { return values_; }
  double min_weight(int count) const;

  /// K(m) = (m+1) c_m (sum_{n<m} 1/((n+1)c_n)^2)^{1/2}; K(0) = 0.
  double condition(int m) const;
  /// K(0), ..., K(size-1).
  std::vector<double> condition_sequence() const;

private:
  ScheduleKind kind_ = ScheduleKind::factorial;
  std::vector<double> values_;
};

std::string to_string(ScheduleKind kind);

struct PairingEntry {
  int index;
  int row;
  int col;
};

/// pi(n, m) = (n+m)(n+m+1)/2 + m and its inverse.
int cantor_pair(int row, int col);
std::array<int, 2> cantor_unpair(int index);

struct QuasiaffinityRecord {
  Matrix matrix;
  std::vector<InnerFunction> omega_list;
  WeightSchedule schedule;
  double intertwining_residual = 0.0;
  double sigma_min = 0.0;
  /// Filled by build_Y_main: which index went to which (row, column).
  std::vector<PairingEntry> pairing;
  /// Weights replaced by lcm(tau_n, theta/phi_j)/(theta/phi_j) because
  /// theta/phi_j does not divide tau_n.
  int fallback_weights = 0;
};

/// Gate for ||XT - TX|| relative to max(1, ||X||).
inline constexpr double kIntertwineTol = 1e-10;
/// Residual and norm-defect gate of the norm-preserving solver.
inline constexpr double kSolverTol = 1e-9;

/// f in (theta/phi)H^2 - theta H^2 with omega(S) f = g and ||f|| = ||g||,
/// omega = psi/(theta/phi). Throws HypothesisViolated or NotInSubspace.
ModelVector solve_norm_preserving(const ModelSpace& space, const InnerFunction& phi,
                                  const InnerFunction& psi, const ModelVector& g);

/// X on H(theta) + N copies:
///   [ I  w_0(S)/1  w_1(S)/2  ... ]
///   [ 0  c_0 I                   ]
///   [ 0            c_1 I         ] ...
QuasiaffinityRecord build_X(const ModelSpace& space, int copies,
                            const std::vector<InnerFunction>& omega_list,
                            const WeightSchedule& schedule);

/// One row of a density sweep or a truncation sweep.
struct SweepRow {
  int m = 0;
  double residual = 0.0;
  double bound = 0.0;
  double sigma_min = 0.0;
  double intertwine = 0.0;
};

struct DensityResult {
  std::vector<SweepRow> rows;
  QuasiaffinityRecord x;
};

/// omega_n = psi2/(theta/phi_n) after checking psi2 | psi1 | theta,
/// phi_n | theta, phi_{n+1} | phi_n and (theta/phi_n) | psi2. Throws
/// HypothesisViolated naming the failed clause.
std::vector<InnerFunction> density_weights(const InnerFunction& theta,
                                           const std::vector<InnerFunction>& phi_list,
                                           const InnerFunction& psi1, const InnerFunction& psi2);

/// Approximates target = G + (F_n) in N_{psi2} + M by X applied to
/// 0 + (F_0/c_0, ..., F_{m-1}/c_{m-1}, h_m, 0, ...) for m = 1 .. N-1.
/// `target` has (N+1) dim H(theta) coordinates, G first.
DensityResult density_sweep(const ModelSpace& space, int copies,
                            const std::vector<InnerFunction>& phi_list, const InnerFunction& psi1,
                            const InnerFunction& psi2, const Vector& target,
                            const WeightSchedule& schedule);

/// Y = V^* (X_0/||X_0|| + X_1/||X_1|| + ... + I) V on the uniform ambient
/// with copy layout f_0, g_0, f_1, g_1, ... (f_j in even copy 2j, g_n in odd
/// copy 2n+1). Block n carries g_n and the f_j with cantor_unpair(j) = (n, m).
/// Throws DivisibilityFailure unless tau_n | psi_n, TruncationTooSmall for
/// fewer than two copies.
QuasiaffinityRecord build_Y_main(const AmbientSpacePtr& ambient, const JordanModel& phi,
                                 const JordanModel& psi, const JordanModel& tau,
                                 const WeightSchedule& schedule);

/// A = P_{M2^perp} X restricted to M1^perp, in complement-frame coordinates.
/// Throws PreconditionViolated when X does not intertwine, does not map M1
/// densely into M2, or A is not onto.
Matrix compression_intertwiner(const AmbientSpace& ambient1, const SubspaceFrame& m1,
                               const AmbientSpace& ambient2, const SubspaceFrame& m2,
                               const Matrix& x);

} // namespace c0lab
