#include "c0lab/serialize.hpp"

#include "c0lab/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace c0lab {

namespace {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from(const Json& j) {
  if (j.is_number())
    return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError("expected a number or [re, im], got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

template <class T> T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad value for ") + what + ": " + e.what());
  }
}

} // namespace

Json to_json(const InnerFunction& u) {
  Json zs = Json::array();
  for (const auto& z : u.zeros())
    zs.push_back({{"re", z.point.real()}, {"im", z.point.imag()}, {"mult", z.mult}});
  return {{"zeros", zs}};
}

InnerFunction inner_from_json(const Json& j) {
  const Json& zs = field(j, "zeros");
  if (!zs.is_array())
    throw ParseError("\"zeros\" must be an array");
  std::vector<BlaschkeZero> out;
  for (const auto& z : zs) {
    const double re = get_as<double>(field(z, "re"), "re");
    const double im = z.contains("im") ? get_as<double>(z.at("im"), "im") : 0.0;
    const int mult = z.contains("mult") ? get_as<int>(z.at("mult"), "mult") : 1;
    out.push_back({{re, im}, mult});
  }
  return InnerFunction(std::move(out));
}

Json to_json(const JordanModel& m) {
  Json parts = Json::array();
  for (const auto& p : m.parts())
    parts.push_back(to_json(p));
  return {{"parts", parts}};
}

JordanModel model_from_json(const Json& j) {
  const Json& parts = field(j, "parts");
  if (!parts.is_array())
    throw ParseError("\"parts\" must be an array");
  std::vector<InnerFunction> out;
  for (const auto& p : parts)
    out.push_back(inner_from_json(p));
  return JordanModel(std::move(out));
}

Json ambient_to_json(const AmbientSpace& a) {
  return {{"theta", to_json(a.theta())}, {"copies", a.copies()}};
}

AmbientSpacePtr ambient_from_json(const Json& j) {
  const int copies = get_as<int>(field(j, "copies"), "copies");
  if (copies < 1)
    throw ParseError("\"copies\" must be positive");
  return make_ambient(inner_from_json(field(j, "theta")), copies);
}

Json to_json(const SubspaceFrame& m) {
  Json cols = Json::array();
  for (Eigen::Index c = 0; c < m.frame.cols(); ++c) {
    Json col = Json::array();
    for (Eigen::Index r = 0; r < m.frame.rows(); ++r)
      col.push_back(complex_json(m.frame(r, c)));
    cols.push_back(col);
  }
  return {{"ambient", ambient_to_json(*m.ambient)}, {"frame", cols}};
}

LoadedSubspace subspace_from_json(const Json& j, AmbientSpacePtr ambient) {
  if (!ambient)
    ambient = ambient_from_json(field(j, "ambient"));
  const Json& cols = field(j, "frame");
  if (!cols.is_array())
    throw ParseError("\"frame\" must be an array of columns");
  const int n = ambient->total_dim();
  Matrix f(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (!cols[c].is_array() || static_cast<int>(cols[c].size()) != n)
      throw ParseError("frame column " + std::to_string(c) + " must have " + std::to_string(n) +
                       " entries");
    for (int r = 0; r < n; ++r)
      f(r, static_cast<Eigen::Index>(c)) = complex_from(cols[c][r]);
  }
  LoadedSubspace out;
  out.subspace.ambient = ambient;
  if (f.cols() == 0) {
    out.subspace.frame = f;
    return out;
  }
  if (linalg::numerical_rank(f).rank < f.cols())
    throw ParseError("frame columns are linearly dependent");
  out.subspace.frame = linalg::polar_factor(f);
  out.orthonormalization_adjustment = linalg::op_norm(f - out.subspace.frame);
  return out;
}

WeightSchedule RunConfig::make_schedule(int length) const {
  switch (schedule) {
  case ScheduleKind::factorial:
    return WeightSchedule::factorial(length);
  case ScheduleKind::polynomial:
    return WeightSchedule::polynomial(length, schedule_exponent);
  case ScheduleKind::custom:
    if (static_cast<int>(custom_weights.size()) < length)
      throw TruncationTooSmall("custom schedule has " + std::to_string(custom_weights.size()) +
                               " weights, " + std::to_string(length) + " needed");
    return WeightSchedule::custom(
        std::vector<double>(custom_weights.begin(), custom_weights.begin() + length));
  }
  return WeightSchedule::factorial(length);
}

namespace {

ScheduleKind schedule_kind(const std::string& s) {
  if (s == "factorial")
    return ScheduleKind::factorial;
  if (s == "polynomial")
    return ScheduleKind::polynomial;
  if (s == "custom")
    return ScheduleKind::custom;
  throw ParseError("unknown schedule \"" + s + "\"");
}

} // namespace

RunConfig config_from_json(const Json& j) {
  if (!j.is_object())
    throw ParseError("config must be a JSON object");
  static const char* known[] = {"theta", "copies", "schedule", "sweep",      "gate",
                                "seed",  "phi",    "psi1",     "psi2",       "similarity",
                                "pairs", "target"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw ParseError("unknown config key \"" + key + "\"");
  }
  RunConfig c;
  if (j.contains("theta"))
    c.theta = inner_from_json(j.at("theta"));
  if (j.contains("copies"))
    c.copies = get_as<int>(j.at("copies"), "copies");
  if (j.contains("schedule")) {
    const Json& s = j.at("schedule");
    if (s.is_string()) {
      c.schedule = schedule_kind(s.get<std::string>());
    } else {
      c.schedule = schedule_kind(get_as<std::string>(field(s, "kind"), "schedule.kind"));
      if (s.contains("values"))
        c.custom_weights = get_as<std::vector<double>>(s.at("values"), "schedule.values");
      if (s.contains("exponent"))
        c.schedule_exponent = get_as<double>(s.at("exponent"), "schedule.exponent");
    }
  }
  if (j.contains("sweep"))
    c.sweep = get_as<std::vector<int>>(j.at("sweep"), "sweep");
  if (j.contains("gate"))
    c.gate = get_as<double>(j.at("gate"), "gate");
  if (j.contains("seed"))
    c.seed = get_as<std::uint64_t>(j.at("seed"), "seed");
  if (j.contains("phi")) {
    const Json& p = j.at("phi");
    if (p.is_array())
      for (const auto& e : p)
        c.phi.push_back(inner_from_json(e));
    else
      c.phi.push_back(inner_from_json(p));
  }
  if (j.contains("psi1"))
    c.psi1 = inner_from_json(j.at("psi1"));
  if (j.contains("psi2"))
    c.psi2 = inner_from_json(j.at("psi2"));
  if (j.contains("similarity")) {
    const Json& rows = j.at("similarity");
    if (!rows.is_array() || rows.empty())
      throw ParseError("\"similarity\" must be a non-empty array of rows");
    Matrix s(rows.size(), rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!rows[r].is_array() || rows[r].size() != rows.size())
        throw ParseError("\"similarity\" must be square");
      for (std::size_t k = 0; k < rows.size(); ++k)
        s(r, k) = complex_from(rows[r][k]);
    }
    c.similarity = s;
  }
  if (j.contains("target")) {
    c.target = get_as<std::string>(j.at("target"), "target");
    if (c.target != "random" && c.target != "zero")
      throw ParseError("target must be \"random\" or \"zero\"");
  }
  if (j.contains("pairs"))
    c.pairs = get_as<int>(j.at("pairs"), "pairs");
  if (c.copies.value_or(1) < 1 || c.pairs < 0 || c.gate <= 0.0)
    throw ParseError("copies must be positive, pairs non-negative and gate positive");
  for (int n : c.sweep)
    if (n < 1)
      throw ParseError("sweep entries must be positive");
  return c;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Json read_json_arg(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ParseError(e.what());
    }
  }
  return read_json_file(text);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, const std::vector<double>* condition) {
  std::ostringstream os;
  os << "m,residual,bound,sigma_min,intertwine" << (condition ? ",K" : "") << "\n";
  for (const auto& r : rows) {
    os << r.m << ',' << format_double(r.residual) << ',' << format_double(r.bound) << ','
       << format_double(r.sigma_min) << ',' << format_double(r.intertwine);
    if (condition) {
      const double k = r.m < static_cast<int>(condition->size()) ? (*condition)[r.m] : 0.0;
      os << ',' << format_double(k);
    }
    os << "\n";
  }
  return os.str();
}

} // namespace c0lab
