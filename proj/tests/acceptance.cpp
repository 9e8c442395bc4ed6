// Runs the acceptance criteria and prints one PASS/FAIL line each.

#include "c0lab/errors.hpp"
#include "c0lab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace c0lab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

InnerFunction z(int d) { return InnerFunction::z_power(d); }
InnerFunction b(Complex a, int m = 1) { return InnerFunction::factor(a, m); }

// Zeros in |a| <= rmax, pairwise at least `sep` apart, repeats allowed.
InnerFunction random_theta(std::mt19937_64& rng, int max_degree, double rmax, double sep = 0.05) {
  std::uniform_int_distribution<int> deg(1, max_degree), coin(0, 3);
  std::uniform_real_distribution<double> r(0.0, rmax), arg(0.0, 6.283185307179586);
  const int d = deg(rng);
  std::vector<BlaschkeZero> zs;
  int total = 0;
  while (total < d) {
    if (!zs.empty() && coin(rng) == 0) {
      ++zs.back().mult;
      ++total;
      continue;
    }
    const Complex a = std::polar(r(rng), arg(rng));
    if (std::any_of(zs.begin(), zs.end(), [&](const BlaschkeZero& p) { return std::abs(p.point - a) < sep; }))
      continue;
    zs.push_back({a, 1});
    ++total;
  }
  return InnerFunction(zs);
}

InnerFunction random_inner(std::mt19937_64& rng, int max_degree, double rmax) {
  return random_theta(rng, max_degree, rmax, 1e-3);
}

InnerFunction random_divisor(const InnerFunction& theta, std::mt19937_64& rng) {
  const auto all = divisors(theta);
  return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

Vector random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (int i = 0; i < n; ++i)
    v(i) = Complex(g(rng), g(rng));
  return v;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome functional_calculus_suite() {
  std::mt19937_64 rng(101);
  double annihilation = 0, norm_excess = 0, hom = 0;
  for (int t = 0; t < 50; ++t) {
    const auto theta = random_theta(rng, 8, 0.9);
    const auto space = build_model_space(theta);
    annihilation = std::max(annihilation, linalg::op_norm(functional_calculus(*space, theta)));
    for (int k = 0; k < 200; ++k) {
      const auto u = random_inner(rng, 4, 0.95);
      const auto v = random_inner(rng, 4, 0.95);
      const Matrix us = functional_calculus(*space, u);
      norm_excess = std::max(norm_excess, linalg::op_norm(us) - 1.0);
      hom = std::max(hom, linalg::op_norm(functional_calculus(*space, u * v) -
                                          us * functional_calculus(*space, v)));
    }
  }
  return {annihilation <= 1e-10 && norm_excess <= 1e-10 && hom <= 1e-9,
          "max ||theta(S)|| " + fmt("%.2e", annihilation) + ", max ||u(S)||-1 " +
              fmt("%.2e", norm_excess) + ", homomorphism defect " + fmt("%.2e", hom)};
}

Outcome range_kernel_identity() {
  std::mt19937_64 rng(102);
  double worst = 0;
  int count = 0;
  for (int t = 0; t < 20; ++t) {
    const auto theta = random_theta(rng, 6, 0.9);
    const auto space = build_model_space(theta);
    auto amb = std::make_shared<const AmbientSpace>(space, 1);
    for (const auto& phi : divisors(theta)) {
      const int dim = theta.degree() - phi.degree();
      const Matrix ran = linalg::leading_left_singular_vectors(functional_calculus(*space, phi), dim);
      const Matrix ker = linalg::trailing_right_singular_vectors(
          functional_calculus(*space, quotient(theta, phi)), dim);
      worst = std::max(worst, principal_distance({amb, ran}, {amb, ker}));
      ++count;
    }
  }
  return {worst <= 1e-8, std::to_string(count) + " divisors, max distance " + fmt("%.2e", worst)};
}

Outcome solver_suite() {
  std::mt19937_64 rng(103);
  double res = 0, defect = 0;
  for (int t = 0; t < 100; ++t) {
    const auto theta = random_theta(rng, 8, 0.8);
    ModelSpace s(theta);
    const auto phi = random_divisor(theta, rng);
    const auto psi = quotient(theta, phi) * random_divisor(phi, rng);
    const Vector g = functional_calculus(s, psi) * random_vector(s.dim(), rng);
    const auto f = solve_norm_preserving(s, phi, psi, {&s, g});
    const auto omega = quotient(psi, quotient(theta, phi));
    res = std::max(res, (functional_calculus(s, omega) * f.coords - g).norm());
    defect = std::max(defect, std::abs(f.norm() - g.norm()));
  }
  return {res <= 1e-9 && defect <= 1e-9,
          "max residual " + fmt("%.2e", res) + ", max norm defect " + fmt("%.2e", defect)};
}

Outcome quasiaffinity_suite() {
  std::mt19937_64 rng(104);
  double worst_res = 0, worst_ratio = 1e300;
  int count = 0;
  for (int t = 0; t < 64; ++t) {
    const auto theta = random_theta(rng, 4, 0.8);
    ModelSpace s(theta);
    const int n = 1 + t % 16;
    std::vector<InnerFunction> omega;
    for (int i = 0; i < n; ++i)
      omega.push_back(random_divisor(theta, rng));
    const auto sched = WeightSchedule::factorial(n);
    const auto x = build_X(s, n, omega, sched);
    worst_res = std::max(worst_res, x.intertwining_residual);
    worst_ratio = std::min(worst_ratio, x.sigma_min / sched.min_weight(n));
    ++count;
  }
  return {worst_res <= 1e-10 && worst_ratio >= 0.5,
          std::to_string(count) + " operators, max intertwining " + fmt("%.2e", worst_res) +
              ", min sigma_min/min c " + fmt("%.4f", worst_ratio)};
}

Outcome schedule_check() {
  const auto f = WeightSchedule::factorial(31);
  bool decreasing = true;
  for (int m = 5; m <= 30; ++m)
    decreasing = decreasing && f.condition(m) < f.condition(m - 1);
  const auto p = WeightSchedule::polynomial(31);
  const bool k1 = std::abs(f.condition(1) - 1.0) <= 1e-12;
  const bool k5 = std::abs(f.condition(5) - 0.20716) <= 1e-4;
  const bool diverges = p.condition(30) > p.condition(10);
  return {k1 && k5 && decreasing && diverges,
          "K(1) " + fmt("%.12g", f.condition(1)) + ", K(5) " + fmt("%.6f", f.condition(5)) +
              ", polynomial K(10) " + fmt("%.4f", p.condition(10)) + " K(30) " +
              fmt("%.4f", p.condition(30))};
}

Outcome density_fixture() {
  RunConfig cfg;
  cfg.theta = z(2);
  cfg.copies = 12;
  cfg.seed = 7;
  cfg.phi = {z(1)};
  cfg.psi1 = z(2);
  cfg.psi2 = z(1);
  const auto out = run_density_sweep(cfg);
  bool bounded = true;
  for (const auto& row : out.sweep.rows)
    bounded = bounded && row.residual <= row.bound + 1e-9;
  const auto& last = out.sweep.rows.back();
  return {bounded && last.m == 11 && last.residual <= 0.05,
          "residual(11) " + fmt("%.3e", last.residual) + ", bound(11) " + fmt("%.3e", last.bound)};
}

// Distinct subspaces M2 = W M1 with W an invertible commutant element.
Outcome harness_positive() {
  std::mt19937_64 rng(105);
  const std::vector<std::pair<InnerFunction, int>> cases{
      {z(2), 2}, {z(2), 3}, {z(3), 2}, {z(3), 3}, {b({0.3, 0.0}) * b({-0.4, 0.0}), 2},
      {b({0.3, 0.0}) * b({-0.4, 0.0}), 3}, {z(1) * b({0.5, 0.2}, 2), 2}, {z(1) * b({0.5, 0.2}, 2), 3},
      {b({0.2, 0.3}, 2), 2}, {z(2) * b({-0.3, 0.1}), 2}};
  int ok = 0;
  double worst = 0, min_gap = 1e300;
  for (const auto& [theta, copies] : cases) {
    auto amb = make_ambient(theta, copies);
    SubspaceFrame m1 = random_invariant_subspace(amb, rng);
    while (m1.dim() == 0 || m1.dim() == amb->total_dim())
      m1 = random_invariant_subspace(amb, rng);
    const Matrix w = random_commutant_element(*amb, rng);
    const auto m2 = image_closure(w, m1);
    min_gap = std::min(min_gap, principal_distance(m1, m2));
    const auto r = verify_orbit(m1, m2);
    if (r.psi != r.tau || r.restriction1 != r.restriction2)
      continue;
    const double last = r.distance_curve.empty() ? 1.0 : r.distance_curve.back().residual;
    worst = std::max(worst, last);
    if (r.verdict == Verdict::orbit && r.distance_curve.size() >= 3 && r.distance_curve.back().m == 16 &&
        last < 0.05 && curve_decreasing(r.distance_curve, 3))
      ++ok;
  }
  return {ok == 10, std::to_string(ok) + "/10 orbit, max distance at N=16 " + fmt("%.2e", worst) +
                        ", min separation of M1, M2 " + fmt("%.3f", min_gap)};
}

Outcome harness_negative() {
  int no_orbit = 0, false_orbit = 0, total = 0;
  // Unequal restriction models with the compression condition intact.
  std::mt19937_64 rng(106);
  const std::vector<InnerFunction> thetas{z(2), z(3), b({0.3, 0.0}) * b({-0.4, 0.0}), z(1) * b({0.5, 0.0}),
                                          b({0.1, 0.2}, 2)};
  for (const auto& theta : thetas) {
    auto amb = make_ambient(theta, 2);
    for (int tries = 0; tries < 200; ++tries) {
      const auto m1 = random_invariant_subspace(amb, rng);
      const auto m2 = random_invariant_subspace(amb, rng);
      const auto a = subspace_models(m1), c = subspace_models(m2);
      if (a.restriction == c.restriction || !injects(c.compression, a.compression))
        continue;
      const auto r = verify_orbit(m1, m2);
      ++total;
      no_orbit += r.verdict == Verdict::no_orbit;
      false_orbit += r.verdict == Verdict::orbit;
      break;
    }
  }
  // Equal restriction models with tau_n not dividing psi_n.
  using J = JordanModel;
  const std::vector<std::tuple<InnerFunction, J, J, J>> models{
      {z(2), J({z(1)}), J({z(1)}), J({z(2)})},
      {z(2), J({z(2)}), J({z(2)}), J({z(2), z(1)})},
      {z(3), J({z(2)}), J({z(2)}), J({z(3)})},
      {b({0.3, 0.0}) * b({-0.4, 0.0}), J({b({0.3, 0.0})}), J({b({0.3, 0.0})}), J({b({-0.4, 0.0})})},
      {z(1) * b({0.5, 0.0}), J({z(1)}), J({z(1) * b({0.5, 0.0})}), J({z(1) * b({0.5, 0.0}), z(1)})}};
  for (const auto& [theta, phi, psi, tau] : models) {
    const auto r = verify_models(theta, phi, psi, phi, tau);
    ++total;
    no_orbit += r.verdict == Verdict::no_orbit;
    false_orbit += r.verdict == Verdict::orbit;
  }
  return {total == 10 && no_orbit == 10 && false_orbit == 0,
          std::to_string(no_orbit) + "/" + std::to_string(total) + " no-orbit, " +
              std::to_string(false_orbit) + " false orbits"};
}

Outcome exact_float_agreement() {
  std::mt19937_64 rng(107);
  int agree = 0;
  for (int t = 0; t < 100; ++t) {
    const int d = 1 + t % 4;
    const int copies = 1 + (t / 4) % 3;
    auto amb = make_ambient(z(d), copies);
    const auto seeds = random_nilpotent_seeds(d, copies, rng);
    std::vector<Vector> cols;
    for (int c = 0; c < seeds.numeric.cols(); ++c)
      cols.push_back(seeds.numeric.col(c));
    const auto fl = subspace_models(cyclic_subspace(amb, cols));
    const auto basis =
        exact::krylov_span(exact::nilpotent_operator(std::vector<int>(copies, d)), seeds.exact);
    const auto ex = exact_subspace_models(z(d), copies, basis);
    agree += ex.restriction == fl.restriction && ex.compression == fl.compression;
  }
  return {agree == 100, std::to_string(agree) + "/100 structurally equal"};
}

Outcome counterexample() {
  const auto witness = counterexample_search({});
  CounterexampleOptions control;
  control.blocks = {1, 1};
  control.stop_at_witness = false;
  const auto none = counterexample_search(control);
  std::string detail = "control: " + std::to_string(none.subspaces) + " subspaces, " +
                       std::to_string(none.decisions) + " decisions, no witness";
  bool pass = witness.witness.has_value() && !none.witness.has_value() && !none.budget_exhausted;
  if (witness.witness) {
    const auto& [a, c] = *witness.witness;
    const auto op = exact::nilpotent_operator({2, 1});
    const auto maps = exact::mapping_space(exact::commutant_basis(op), a.basis, c.basis);
    pass = pass && a.restriction == c.restriction && !exact::span_contains_invertible(maps);
    detail = "witness after " + std::to_string(witness.decisions) + " orbit decision(s); " + detail;
  }
  return {pass, detail};
}

Outcome cordiag() {
  CordiagOptions opts;
  const auto rep = cordiag_demo(opts);
  int orbits = 0;
  for (const auto& [u, c] : rep.verdicts)
    orbits += u == Verdict::orbit;
  return {rep.verdicts.size() == 20 && rep.disagreements == 0,
          std::to_string(rep.verdicts.size()) + " pairs, " + std::to_string(rep.disagreements) +
              " disagreements, " + std::to_string(orbits) + " orbit verdicts, cond(S) " +
              fmt("%.3g", rep.similarity_condition)};
}

} // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double time_limit;
  };
  const std::vector<Criterion> criteria{
      {"functional calculus", functional_calculus_suite, 10.0},
      {"range equals kernel over divisor lattices", range_kernel_identity, 10.0},
      {"norm-preserving solver", solver_suite, 0.0},
      {"quasiaffinity X", quasiaffinity_suite, 0.0},
      {"weight schedule condition", schedule_check, 0.0},
      {"density fixture", density_fixture, 5.0},
      {"orbit harness, positive fixtures", harness_positive, 0.0},
      {"orbit harness, negative fixtures", harness_negative, 0.0},
      {"exact and floating Jordan models", exact_float_agreement, 0.0},
      {"counterexample for S(z^2) + S(z)", counterexample, 60.0},
      {"similarity demo", cordiag, 0.0},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs > c.time_limit) {
      out.pass = false;
      out.detail += ", over the " + fmt("%.0f", c.time_limit) + " s limit";
    }
    failures += !out.pass;
    std::printf("%s %2zu %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", i + 1, c.name,
                out.detail.c_str(), secs);
  }
  return failures == 0 ? 0 : 1;
}
