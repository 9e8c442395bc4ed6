#pragma once

#include "c0lab/serialize.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace c0lab {

enum class Verdict { orbit, no_orbit, inconclusive };
std::string to_string(Verdict v);

/// Distances at or below this count as zero when judging a curve.
inline constexpr double kDistanceFloor = 1e-10;

struct VerifyOptions {
  std::vector<int> sweep{4, 8, 12, 16};
  double gate = 0.05;
  /// Number of trailing sweep points that must be decreasing.
  std::size_t tail = 3;
};

struct VerifyReport {
  bool restriction_models_equal = false;
  bool compression_divisibility = false;
  bool orbit_constructed = false;
  /// One row per sweep point: m = N, residual = principal distance,
  /// bound = gate, sigma_min and intertwine of Y.
  std::vector<SweepRow> distance_curve;
  Verdict verdict = Verdict::inconclusive;
  JordanModel restriction1, restriction2;
  /// Compression models psi (of M1) and tau (of M2).
  JordanModel psi, tau;
  /// (m, n) with theta not dividing phi_m psi_n.
  std::vector<std::pair<int, int>> product_failures;
  /// Sweep points skipped because the interleave does not fit.
  std::vector<int> skipped;
  std::string reason;
};

/// Each step of the last `tail` points decreases or sits at the floor; false
/// for curves with fewer than `tail` points.
bool curve_decreasing(const std::vector<SweepRow>& curve, std::size_t tail);

/// Orbit test from Jordan data: restriction models phi1, phi2 and
/// compression models psi (M1), tau (M2) over theta.
VerifyReport verify_models(const InnerFunction& theta, const JordanModel& phi1,
                           const JordanModel& psi, const JordanModel& phi2,
                           const JordanModel& tau, const VerifyOptions& opts = {});

/// Orbit test for two invariant subspaces of the same ambient. Throws
/// AmbientMismatch or NotInvariant.
VerifyReport verify_orbit(const SubspaceFrame& m1, const SubspaceFrame& m2,
                          const VerifyOptions& opts = {});

Json to_json(const VerifyReport& r);

/// Random element of the commutant of a uniform Jordan operator: each block
/// is a random polynomial in S(theta).
Matrix random_commutant_element(const AmbientSpace& ambient, std::mt19937_64& rng);

/// Invariant subspace generated by random seeds u(S) x, u a random divisor of
/// theta, in each copy of a uniform ambient.
SubspaceFrame random_invariant_subspace(const AmbientSpacePtr& ambient, std::mt19937_64& rng);

/// Integer seed vectors S^k x (x with entries in [-2, 2]) for theta = z^d in
/// exact and floating form; columns are seeds.
struct NilpotentSeeds {
  exact::RationalMatrix exact;
  Matrix numeric;
};
NilpotentSeeds random_nilpotent_seeds(int d, int copies, std::mt19937_64& rng);

/// Random target G + (F_n) for a density sweep: G in psi2 H^2 - theta H^2,
/// F_n in (theta/phi_n) H^2 - theta H^2 scaled by 2^{-n}, unit total norm.
Vector density_target(const ModelSpace& space, const std::vector<InnerFunction>& phi_list,
                      const InnerFunction& psi2, std::uint64_t seed);

struct DensityCommandResult {
  DensityResult sweep;
  std::vector<double> condition;
  /// Non-empty when K(m) fails to decrease for m >= 4.
  std::string schedule_warning;
};

/// density_sweep on the configured data; defaults phi_n = theta, psi1 = theta,
/// psi2 = psi1.
DensityCommandResult run_density_sweep(const RunConfig& config);

struct ExactSubspace {
  exact::RationalMatrix basis;
  std::vector<int> restriction;
  std::vector<int> compression;
};

struct CounterexampleOptions {
  /// T = S(z^{b_0}) + S(z^{b_1}) + ...
  std::vector<int> blocks{2, 1};
  int dim_cap = 3;
  /// Grid vectors have integer entries in [-grid, grid] (step 1/grid after
  /// scaling); 0 keeps only the coordinate lattice elements.
  int grid = 64;
  long budget = 1000000;
  std::uint64_t seed = 1;
  /// Stop at the first witness instead of finishing the enumeration.
  bool stop_at_witness = true;
};

struct CounterexampleReport {
  std::vector<int> blocks;
  int grid = 0;
  long vectors = 0;
  int subspaces = 0;
  int groups = 0;
  int classes = 0;
  long decisions = 0;
  bool budget_exhausted = false;
  std::optional<std::pair<ExactSubspace, ExactSubspace>> witness;
};

/// Searches invariant subspaces of the nilpotent Jordan operator for two
/// with equal restriction models lying in different commutant orbits. Throws
/// HypothesisViolated when the ambient exceeds the dimension cap.
CounterexampleReport counterexample_search(const CounterexampleOptions& opts);
std::string format_report(const CounterexampleReport& r);
Json to_json(const CounterexampleReport& r);

struct CordiagOptions {
  InnerFunction theta = InnerFunction::z_power(2);
  int copies = 3;
  /// Defaults to a random similarity with condition number `condition`.
  std::optional<Matrix> similarity;
  double condition = 4.0;
  int pairs = 20;
  std::uint64_t seed = 1;
  VerifyOptions verify;
};

struct CordiagReport {
  double similarity_condition = 0.0;
  /// ||BA - I|| for A = I (x) S^{-1}, B = I (x) S.
  double product_defect = 0.0;
  /// ||B T_N A - T|| for the conjugated ambient operator T.
  double conjugation_defect = 0.0;
  std::vector<std::pair<Verdict, Verdict>> verdicts;
  int disagreements = 0;
};

/// Random matrix U diag(s) V^* with singular values spread over [1, cond].
Matrix random_similarity(int n, double cond, std::uint64_t seed);

/// Runs paired orbit tests in the uniform ambient and in the ambient
/// conjugated by I (x) S. Throws IllConditioned when cond(S) > 1e6.
CordiagReport cordiag_demo(const CordiagOptions& opts);
Json to_json(const CordiagReport& r);

} // namespace c0lab
