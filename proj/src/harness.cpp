#include "c0lab/harness.hpp"

#include "c0lab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_set>

namespace c0lab {

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::orbit:
    return "orbit";
  case Verdict::no_orbit:
    return "no-orbit";
  case Verdict::inconclusive:
    return "inconclusive";
  }
  return "inconclusive";
}

bool curve_decreasing(const std::vector<SweepRow>& curve, std::size_t tail) {
  if (curve.empty() || curve.size() < tail)
    return false;
  const std::size_t start = curve.size() > tail ? curve.size() - tail : 0;
  for (std::size_t i = start + 1; i < curve.size(); ++i) {
    const double prev = curve[i - 1].residual;
    const double cur = curve[i].residual;
    if (!(cur < prev || cur <= kDistanceFloor))
      return false;
  }
  return true;
}

VerifyReport verify_models(const InnerFunction& theta, const JordanModel& phi1,
                           const JordanModel& psi, const JordanModel& phi2,
                           const JordanModel& tau, const VerifyOptions& opts) {
  VerifyReport r;
  r.restriction1 = phi1;
  r.restriction2 = phi2;
  r.psi = psi;
  r.tau = tau;
  r.restriction_models_equal = phi1 == phi2;
  r.compression_divisibility = injects(tau, psi);
  if (!r.restriction_models_equal || !r.compression_divisibility) {
    r.verdict = Verdict::no_orbit;
    r.reason = !r.restriction_models_equal ? "restriction models differ"
                                           : "compression of M2 does not inject into compression of M1";
    return r;
  }
  r.product_failures = product_divisibility_failures(theta, phi1, psi);
  const int interleave =
      2 * static_cast<int>(std::max({phi1.size(), psi.size(), tau.size(), std::size_t{1}}));
  for (int n : opts.sweep) {
    if (n < interleave) {
      r.skipped.push_back(n);
      continue;
    }
    const auto ambient = make_ambient(theta, n);
    const auto m1 = canonical_subspace(ambient, phi1, psi, nullptr, interleave);
    const auto m2 = canonical_subspace(ambient, phi1, tau, nullptr, interleave);
    QuasiaffinityRecord y;
    try {
      y = build_Y_main(ambient, phi1, psi, tau, WeightSchedule::factorial(n));
    } catch (const DivisibilityFailure& e) {
      r.verdict = Verdict::no_orbit;
      r.reason = e.what();
      return r;
    }
    SweepRow row;
    row.m = n;
    row.residual = principal_distance(image_closure(y.matrix, m1), m2);
    row.bound = opts.gate;
    row.sigma_min = y.sigma_min;
    row.intertwine = y.intertwining_residual;
    r.distance_curve.push_back(row);
  }
  r.orbit_constructed = !r.distance_curve.empty();
  if (!r.orbit_constructed) {
    r.reason = "no sweep point is large enough for the canonical interleave";
    return r;
  }
  const bool decreasing = curve_decreasing(r.distance_curve, opts.tail);
  const bool below = r.distance_curve.back().residual <= opts.gate;
  if (decreasing && below) {
    r.verdict = Verdict::orbit;
  } else if (tau.total_degree() != psi.total_degree()) {
    // Y is injective, so dim Y M1' < dim M2' and the projection gap is 1 at
    // every truncation; density can only show in the limit.
    r.reason = "M1' and M2' differ in dimension at every truncation (tau strictly divides psi)";
  } else {
    r.reason = !below ? "final distance above the gate" : "distance curve is not decreasing";
  }
  return r;
}

VerifyReport verify_orbit(const SubspaceFrame& m1, const SubspaceFrame& m2,
                          const VerifyOptions& opts) {
  if (!same_ambient(*m1.ambient, *m2.ambient))
    throw AmbientMismatch("subspaces live in different ambients");
  const auto a = subspace_models(m1);
  const auto b = subspace_models(m2);
  return verify_models(m1.ambient->theta(), a.restriction, a.compression, b.restriction,
                       b.compression, opts);
}

Json to_json(const VerifyReport& r) {
  Json curve = Json::array();
  for (const auto& row : r.distance_curve)
    curve.push_back({{"N", row.m},
                     {"distance", row.residual},
                     {"sigma_min", row.sigma_min},
                     {"intertwine", row.intertwine}});
  Json failures = Json::array();
  for (const auto& [m, n] : r.product_failures)
    failures.push_back({m, n});
  Json out = {{"restriction_models_equal", r.restriction_models_equal},
              {"compression_divisibility", r.compression_divisibility},
              {"orbit_constructed", r.orbit_constructed},
              {"verdict", to_string(r.verdict)},
              {"restriction1", to_json(r.restriction1)},
              {"restriction2", to_json(r.restriction2)},
              {"compression1", to_json(r.psi)},
              {"compression2", to_json(r.tau)},
              {"distance_curve", curve},
              {"product_divisibility_failures", failures},
              {"skipped_sweep_points", r.skipped}};
  if (!r.reason.empty())
    out["reason"] = r.reason;
  return out;
}

namespace {

Vector gaussian_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (int i = 0; i < n; ++i)
    v(i) = Complex(g(rng), g(rng));
  return v;
}

} // namespace

Matrix random_commutant_element(const AmbientSpace& ambient, std::mt19937_64& rng) {
  const int d = ambient.block_dim();
  const int n = ambient.copies();
  const Matrix& s = ambient.block().shift_matrix();
  std::vector<Matrix> powers{Matrix::Identity(d, d)};
  for (int k = 1; k < d; ++k)
    powers.push_back(powers.back() * s);
  Matrix w = Matrix::Zero(n * d, n * d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vector c = gaussian_vector(d, rng);
      for (int k = 0; k < d; ++k)
        w.block(i * d, j * d, d, d) += c(k) * powers[k];
    }
  return w;
}

SubspaceFrame random_invariant_subspace(const AmbientSpacePtr& ambient, std::mt19937_64& rng) {
  const auto& space = ambient->block();
  const int d = space.dim();
  const int n = ambient->copies();
  std::vector<Matrix> calc;
  for (const auto& u : divisors(space.theta()))
    calc.push_back(functional_calculus(space, u));
  std::uniform_int_distribution<int> seed_count(1, n);
  std::uniform_int_distribution<std::size_t> pick(0, calc.size() - 1);
  std::vector<Vector> seeds;
  const int k = seed_count(rng);
  for (int s = 0; s < k; ++s) {
    Vector v(n * d);
    for (int c = 0; c < n; ++c)
      v.segment(c * d, d) = calc[pick(rng)] * gaussian_vector(d, rng);
    seeds.push_back(v);
  }
  return cyclic_subspace(ambient, seeds);
}

NilpotentSeeds random_nilpotent_seeds(int d, int copies, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> seed_count(1, copies);
  std::uniform_int_distribution<int> entry(-2, 2);
  std::uniform_int_distribution<int> shift(0, d);
  const int k = seed_count(rng);
  const int n = d * copies;
  NilpotentSeeds out{exact::RationalMatrix(n, k), Matrix::Zero(n, k)};
  for (int s = 0; s < k; ++s)
    for (int c = 0; c < copies; ++c) {
      const int p = shift(rng);
      std::vector<int> x(d);
      for (auto& e : x)
        e = entry(rng);
      for (int i = p; i < d; ++i) {
        out.exact(c * d + i, s) = x[i - p];
        out.numeric(c * d + i, s) = double(x[i - p]);
      }
    }
  return out;
}

Vector density_target(const ModelSpace& space, const std::vector<InnerFunction>& phi_list,
                      const InnerFunction& psi2, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int d = space.dim();
  const int copies = static_cast<int>(phi_list.size());
  Vector t = Vector::Zero((copies + 1) * d);
  auto unit = [](Vector v) {
    const double n = v.norm();
    return n > 0.0 ? Vector(v / n) : v;
  };
  t.head(d) = unit(range_projector(space, psi2) * gaussian_vector(d, rng));
  double scale = 1.0;
  for (int n = 0; n < copies; ++n) {
    const Matrix p = range_projector(space, quotient(space.theta(), phi_list[n]));
    t.segment((n + 1) * d, d) = scale * unit(p * gaussian_vector(d, rng));
    scale *= 0.5;
  }
  const double norm = t.norm();
  return norm > 0.0 ? Vector(t / norm) : t;
}

DensityCommandResult run_density_sweep(const RunConfig& config) {
  const auto space = build_model_space(config.theta);
  const int copies = config.copies.value_or(12);
  std::vector<InnerFunction> phi = config.phi;
  if (phi.empty())
    phi.push_back(config.theta);
  phi.resize(copies, phi.back());
  const InnerFunction psi1 = config.psi1.value_or(config.theta);
  const InnerFunction psi2 = config.psi2.value_or(psi1);
  const auto schedule = config.make_schedule(copies);
  density_weights(config.theta, phi, psi1, psi2);

  DensityCommandResult out;
  out.condition = schedule.condition_sequence();
  for (int m = 5; m < static_cast<int>(out.condition.size()); ++m)
    if (out.condition[m] >= out.condition[m - 1]) {
      std::ostringstream os;
      os << "warning: condition sequence does not decrease (K(" << m - 1
         << ") = " << format_double(out.condition[m - 1]) << ", K(" << m
         << ") = " << format_double(out.condition[m])
         << "); this schedule does not drive (m+1)c_m times the weight sum to zero";
      out.schedule_warning = os.str();
      break;
    }
  const Vector target = config.target == "zero"
                            ? Vector(Vector::Zero((copies + 1) * space->dim()))
                            : density_target(*space, phi, psi2, config.seed);
  out.sweep = density_sweep(*space, copies, phi, psi1, psi2, target, schedule);
  return out;
}

namespace {

std::string partition_key(const std::vector<int>& p) {
  std::string s;
  for (int v : p)
    s += std::to_string(v) + ",";
  return s;
}

JordanModel nilpotent_or_empty(const std::vector<int>& p) { return nilpotent_model(p); }

std::string describe_basis(const exact::RationalMatrix& b) {
  std::ostringstream os;
  os << "span{";
  for (int c = 0; c < b.cols(); ++c) {
    os << (c ? ", " : "") << "(";
    for (int r = 0; r < b.rows(); ++r)
      os << (r ? " " : "") << b(r, c);
    os << ")";
  }
  os << "}";
  return os.str();
}

Json basis_json(const exact::RationalMatrix& b) {
  Json cols = Json::array();
  for (int c = 0; c < b.cols(); ++c) {
    Json col = Json::array();
    for (int r = 0; r < b.rows(); ++r)
      col.push_back(b(r, c).str());
    cols.push_back(col);
  }
  return cols;
}

Json exact_subspace_json(const ExactSubspace& s) {
  return {{"basis", basis_json(s.basis)},
          {"restriction", nilpotent_or_empty(s.restriction).to_string()},
          {"compression", nilpotent_or_empty(s.compression).to_string()}};
}

std::string ambient_name(const std::vector<int>& blocks) {
  std::ostringstream os;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    os << (i ? " + " : "") << "S(" << InnerFunction::z_power(blocks[i]).to_string() << ")";
  return os.str();
}

} // namespace

CounterexampleReport counterexample_search(const CounterexampleOptions& opts) {
  int dim = 0;
  for (int b : opts.blocks) {
    if (b < 1)
      throw HypothesisViolated("block sizes must be positive");
    dim += b;
  }
  if (dim == 0 || dim > opts.dim_cap)
    throw HypothesisViolated("ambient dimension " + std::to_string(dim) + " exceeds the cap " +
                             std::to_string(opts.dim_cap));
  if (opts.grid < 0)
    throw HypothesisViolated("grid resolution must be non-negative");

  CounterexampleReport rep;
  rep.blocks = opts.blocks;
  rep.grid = opts.grid;
  const auto op = exact::nilpotent_operator(opts.blocks);
  const auto commutant = exact::commutant_basis(op);

  std::vector<exact::RationalMatrix> candidates;
  // Coordinate lattice elements: z^{b-k} H^2 - z^b H^2 in each block.
  std::vector<int> k(opts.blocks.size(), 0);
  while (true) {
    std::vector<int> cols;
    int off = 0;
    for (std::size_t i = 0; i < opts.blocks.size(); ++i) {
      for (int j = opts.blocks[i] - k[i]; j < opts.blocks[i]; ++j)
        cols.push_back(off + j);
      off += opts.blocks[i];
    }
    exact::RationalMatrix b(dim, static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
      b(cols[c], static_cast<int>(c)) = 1;
    candidates.push_back(b);
    std::size_t i = 0;
    while (i < k.size() && k[i] == opts.blocks[i])
      k[i++] = 0;
    if (i == k.size())
      break;
    ++k[i];
  }
  const std::size_t lattice_count = candidates.size();

  struct Group {
    std::vector<ExactSubspace> reps;
  };
  std::map<std::string, Group> groups;
  std::unordered_set<std::string> seen;

  auto consider = [&](const exact::RationalMatrix& span) -> bool {
    const auto basis = exact::canonical_column_basis(span);
    if (!seen.insert(exact::subspace_key(basis)).second)
      return false;
    ++rep.subspaces;
    ExactSubspace s{basis, exact::restriction_partition(op, basis),
                    exact::compression_partition(op, basis)};
    auto& g = groups[partition_key(s.restriction)];
    for (const auto& r : g.reps) {
      if (rep.decisions >= opts.budget) {
        rep.budget_exhausted = true;
        return true;
      }
      ++rep.decisions;
      if (exact::span_contains_invertible(exact::mapping_space(commutant, r.basis, s.basis),
                                          opts.seed))
        return false;
    }
    g.reps.push_back(s);
    ++rep.classes;
    if (g.reps.size() >= 2 && !rep.witness) {
      rep.witness = std::make_pair(g.reps.front(), s);
      return opts.stop_at_witness;
    }
    return false;
  };

  bool stop = false;
  for (std::size_t i = 0; i < lattice_count && !stop; ++i) {
    ++rep.vectors;
    stop = consider(candidates[i]);
  }
  if (opts.grid > 0) {
    const int r = opts.grid;
    for (int lead = 0; lead < dim && !stop; ++lead) {
      const int free = dim - lead - 1;
      std::vector<int> v(free, -r);
      while (!stop) {
        exact::RationalMatrix x(dim, 1);
        x(lead, 0) = r;
        for (int q = 0; q < free; ++q)
          x(lead + 1 + q, 0) = v[q];
        ++rep.vectors;
        stop = consider(exact::krylov_span(op, x));
        int q = 0;
        while (q < free && v[q] == r)
          v[q++] = -r;
        if (q == free)
          break;
        ++v[q];
      }
    }
  }
  rep.groups = static_cast<int>(groups.size());
  return rep;
}

std::string format_report(const CounterexampleReport& r) {
  std::ostringstream os;
  os << "ambient: T = " << ambient_name(r.blocks) << "\n";
  os << "grid resolution: " << r.grid;
  if (r.grid > 0)
    os << " (step 1/" << r.grid << ")";
  os << "\n";
  os << "vectors examined: " << r.vectors << "\n";
  os << "distinct invariant subspaces: " << r.subspaces << "\n";
  os << "restriction model groups: " << r.groups << "\n";
  os << "commutant orbits found: " << r.classes << "\n";
  os << "orbit decisions: " << r.decisions << "\n";
  if (r.witness) {
    const auto& [a, b] = *r.witness;
    os << "witness:\n";
    os << "  M1 = " << describe_basis(a.basis) << "  T|M1 " << nilpotent_model(a.restriction).to_string()
       << "  compression " << nilpotent_model(a.compression).to_string() << "\n";
    os << "  M2 = " << describe_basis(b.basis) << "  T|M2 " << nilpotent_model(b.restriction).to_string()
       << "  compression " << nilpotent_model(b.compression).to_string() << "\n";
    os << "  equal restriction models; no invertible commutant element maps M1 onto M2 (exact)\n";
  } else if (r.budget_exhausted) {
    os << "budget exhausted before a decision\n";
  } else {
    os << "no witness: every pair with equal restriction models lies in one commutant orbit\n";
  }
  return os.str();
}

Json to_json(const CounterexampleReport& r) {
  Json out = {{"blocks", r.blocks},         {"grid", r.grid},
              {"vectors", r.vectors},       {"subspaces", r.subspaces},
              {"groups", r.groups},         {"orbits", r.classes},
              {"decisions", r.decisions},   {"budget_exhausted", r.budget_exhausted},
              {"witness", nullptr}};
  if (r.witness)
    out["witness"] = {{"M1", exact_subspace_json(r.witness->first)},
                      {"M2", exact_subspace_json(r.witness->second)}};
  return out;
}

Matrix random_similarity(int n, double cond, std::uint64_t seed) {
  const Matrix u = linalg::random_unitary(n, static_cast<unsigned>(seed));
  const Matrix v = linalg::random_unitary(n, static_cast<unsigned>(seed + 7919));
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i)
    s(i) = n == 1 ? 1.0 : std::pow(cond, double(i) / (n - 1));
  return u * s.cast<Complex>().asDiagonal() * v.adjoint();
}

CordiagReport cordiag_demo(const CordiagOptions& opts) {
  const auto uniform = make_ambient(opts.theta, opts.copies);
  const int d = uniform->block_dim();
  const Matrix sim = opts.similarity ? *opts.similarity
                                     : random_similarity(d, opts.condition, opts.seed);
  if (sim.rows() != d || sim.cols() != d)
    throw AmbientMismatch("similarity must be " + std::to_string(d) + " x " + std::to_string(d));
  CordiagReport rep;
  const auto s = linalg::singular_values(sim);
  rep.similarity_condition = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1)
                                                   : std::numeric_limits<double>::infinity();
  if (rep.similarity_condition > 1e6)
    throw IllConditioned("similarity condition number " + format_double(rep.similarity_condition) +
                         " exceeds 1e6");
  const auto conj = AmbientSpace::conjugated(*uniform, sim);
  const Matrix b = linalg::block_diagonal(sim, opts.copies);
  const Matrix a = linalg::block_diagonal(sim.inverse(), opts.copies);
  const int n = uniform->total_dim();
  rep.product_defect = linalg::op_norm(b * a - Matrix::Identity(n, n));
  rep.conjugation_defect = linalg::op_norm(b * uniform->operator_matrix() * a - conj->operator_matrix());

  std::mt19937_64 rng(opts.seed);
  for (int p = 0; p < opts.pairs; ++p) {
    const auto m1 = random_invariant_subspace(uniform, rng);
    const auto m2 = p % 2 == 0 ? span_of(uniform, random_commutant_element(*uniform, rng) * m1.frame)
                               : random_invariant_subspace(uniform, rng);
    const auto vu = verify_orbit(m1, m2, opts.verify).verdict;
    const auto vc =
        verify_orbit(span_of(conj, b * m1.frame), span_of(conj, b * m2.frame), opts.verify).verdict;
    rep.verdicts.emplace_back(vu, vc);
    if (vu != vc)
      ++rep.disagreements;
  }
  return rep;
}

Json to_json(const CordiagReport& r) {
  Json pairs = Json::array();
  for (const auto& [u, c] : r.verdicts)
    pairs.push_back({{"uniform", to_string(u)}, {"conjugated", to_string(c)}});
  return {{"similarity_condition", r.similarity_condition},
          {"product_defect", r.product_defect},
          {"conjugation_defect", r.conjugation_defect},
          {"pairs", pairs},
          {"disagreements", r.disagreements}};
}

} // namespace c0lab
