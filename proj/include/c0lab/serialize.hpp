#pragma once

#include "c0lab/jordan_model.hpp"
#include "c0lab/quasiaffine.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace c0lab {

using Json = nlohmann::json;

/// {"zeros": [{"re": x, "im": y, "mult": k}, ...]}; "im" and "mult" default
/// to 0 and 1.
Json to_json(const InnerFunction& u);
InnerFunction inner_from_json(const Json& j);

/// {"parts": [innerfn, ...]}.
Json to_json(const JordanModel& m);
JordanModel model_from_json(const Json& j);

/// {"theta": innerfn, "copies": N}.
Json ambient_to_json(const AmbientSpace& a);
AmbientSpacePtr ambient_from_json(const Json& j);

/// {"ambient": {...}, "frame": [[[re, im], ...], ...]}, one inner list per
/// column. A bare number is accepted for a real entry.
Json to_json(const SubspaceFrame& m);

struct LoadedSubspace {
  SubspaceFrame subspace;
  /// ||F - polar(F)|| for the frame F as read.
  double orthonormalization_adjustment = 0.0;
};

/// Reads a subspace and replaces its frame by the nearest orthonormal one.
/// `ambient` overrides the file's ambient when given.
LoadedSubspace subspace_from_json(const Json& j, AmbientSpacePtr ambient = nullptr);

struct RunConfig {
  InnerFunction theta = InnerFunction::z_power(2);
  /// Number of copies; commands supply their own default when absent.
  std::optional<int> copies;
  ScheduleKind schedule = ScheduleKind::factorial;
  std::vector<double> custom_weights;
  double schedule_exponent = 2.0;
  std::vector<int> sweep{4, 8, 12, 16};
  double gate = 0.05;
  std::uint64_t seed = 1;
  /// Optional density-sweep data: phi_n (one entry is repeated), psi1, psi2.
  std::vector<InnerFunction> phi;
  std::optional<InnerFunction> psi1;
  std::optional<InnerFunction> psi2;
  /// Density-sweep target: "random" (seeded, decaying) or "zero".
  std::string target = "random";
  /// Optional similarity for the diagonal-conjugation demo (row-major).
  std::optional<Matrix> similarity;
  int pairs = 20;

  WeightSchedule make_schedule(int length) const;
};

/// Keys: theta, copies, schedule ("factorial", "polynomial", or
/// {"kind": ..., "values": [...], "exponent": a}), sweep, gate, seed, and the
/// optional phi, psi1, psi2, target, similarity, pairs.
RunConfig config_from_json(const Json& j);

/// Parses a JSON file. Throws ParseError.
Json read_json_file(const std::string& path);
/// Parses `text` as inline JSON when it starts with '{', else reads a file.
Json read_json_arg(const std::string& text);

/// 12 significant digits.
std::string format_double(double x);

/// "m,residual,bound,sigma_min,intertwine" plus ",K" when `with_condition`.
std::string sweep_csv(const std::vector<SweepRow>& rows, const std::vector<double>* condition = nullptr);

} // namespace c0lab
