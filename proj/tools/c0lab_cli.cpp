#include "c0lab/errors.hpp"
#include "c0lab/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace c0lab;

namespace {

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kInvariance = 3, kHypothesis = 4, kBudget = 5 };

struct Common {
  std::vector<std::string> inputs;
  std::string ambient;
  std::string out;
  std::string config;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--input", c.inputs, "Input file (repeat for verify-orbit)");
  cmd->add_option("--ambient", c.ambient, "Ambient (theta, copies) as a JSON file or inline JSON");
  cmd->add_option("--out", c.out, "Output file");
  cmd->add_option("--config", c.config, "Run configuration (JSON)");
}

void write_out(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f)
    throw ParseError("cannot write " + path);
  f << text;
}

RunConfig load_config(const Common& c) {
  return c.config.empty() ? RunConfig{} : config_from_json(read_json_arg(c.config));
}

LoadedSubspace load_subspace(const std::string& path, const std::string& ambient) {
  AmbientSpacePtr amb = ambient.empty() ? nullptr : ambient_from_json(read_json_arg(ambient));
  auto loaded = subspace_from_json(read_json_file(path), amb);
  if (loaded.orthonormalization_adjustment > 1e-12)
    std::cerr << "note: frame of " << path << " re-orthonormalized (adjustment "
              << format_double(loaded.orthonormalization_adjustment) << ")\n";
  return loaded;
}

void require_invariant(const SubspaceFrame& m, const std::string& name) {
  const auto check = is_invariant(m);
  if (!check.invariant)
    throw NotInvariant(name + " is not invariant (residual " + format_double(check.residual) + ")");
}

int cmd_jordan_model(const Common& c) {
  if (c.inputs.size() != 1)
    throw ParseError("jordan-model takes exactly one --input");
  const auto m = load_subspace(c.inputs[0], c.ambient).subspace;
  require_invariant(m, c.inputs[0]);
  const auto models = subspace_models(m);
  std::cout << "restriction: " << models.restriction.to_string() << "\n";
  std::cout << "compression: " << models.compression.to_string() << "\n";
  if (!c.out.empty())
    write_out(c.out, Json{{"restriction", to_json(models.restriction)},
                          {"compression", to_json(models.compression)}}
                         .dump(2) + "\n");
  return kOk;
}

int cmd_verify_orbit(const Common& c) {
  if (c.inputs.size() != 2)
    throw ParseError("verify-orbit takes --input twice (M1 then M2)");
  const auto cfg = load_config(c);
  const auto m1 = load_subspace(c.inputs[0], c.ambient).subspace;
  const auto m2 = load_subspace(c.inputs[1], c.ambient).subspace;
  require_invariant(m1, c.inputs[0]);
  require_invariant(m2, c.inputs[1]);
  VerifyOptions opts;
  opts.sweep = cfg.sweep;
  opts.gate = cfg.gate;
  const auto r = verify_orbit(m1, m2, opts);
  std::cout << "restriction M1: " << r.restriction1.to_string() << "\n";
  std::cout << "restriction M2: " << r.restriction2.to_string() << "\n";
  std::cout << "compression M1: " << r.psi.to_string() << "\n";
  std::cout << "compression M2: " << r.tau.to_string() << "\n";
  std::cout << "restriction_models_equal: " << std::boolalpha << r.restriction_models_equal << "\n";
  std::cout << "compression_divisibility: " << r.compression_divisibility << "\n";
  std::cout << "orbit_constructed: " << r.orbit_constructed << "\n";
  for (const auto& [m, n] : r.product_failures)
    std::cout << "note: theta does not divide phi_" << m << " psi_" << n << "\n";
  for (int n : r.skipped)
    std::cout << "note: sweep point N=" << n << " skipped (interleave does not fit)\n";
  if (!r.distance_curve.empty())
    std::cout << sweep_csv(r.distance_curve);
  std::cout << "verdict: " << to_string(r.verdict);
  if (!r.reason.empty())
    std::cout << " (" << r.reason << ")";
  std::cout << "\n";
  if (!c.out.empty())
    write_out(c.out, to_json(r).dump(2) + "\n");
  return kOk;
}

int cmd_density_sweep(const Common& c) {
  const auto cfg = load_config(c);
  const auto r = run_density_sweep(cfg);
  if (!r.schedule_warning.empty())
    std::cerr << r.schedule_warning << "\n";
  const auto csv = sweep_csv(r.sweep.rows, &r.condition);
  if (c.out.empty())
    std::cout << csv;
  else
    write_out(c.out, csv);
  return kOk;
}

int cmd_counterexample(const Common& c, CounterexampleOptions opts, const std::string& blocks,
                       bool control) {
  if (!c.config.empty())
    opts.seed = load_config(c).seed;
  if (control) {
    opts.blocks = {1, 1};
  } else if (!blocks.empty()) {
    opts.blocks.clear();
    std::stringstream ss(blocks);
    std::string item;
    while (std::getline(ss, item, ','))
      try {
        opts.blocks.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw ParseError("bad block list \"" + blocks + "\"");
      }
  }
  const auto r = counterexample_search(opts);
  std::cout << format_report(r);
  if (!c.out.empty())
    write_out(c.out, to_json(r).dump(2) + "\n");
  return r.budget_exhausted && !r.witness ? kBudget : kOk;
}

int cmd_cordiag(const Common& c) {
  const auto cfg = load_config(c);
  CordiagOptions opts;
  opts.theta = cfg.theta;
  opts.copies = cfg.copies.value_or(opts.copies);
  opts.similarity = cfg.similarity;
  opts.pairs = cfg.pairs;
  opts.seed = cfg.seed;
  opts.verify.sweep = cfg.sweep;
  opts.verify.gate = cfg.gate;
  const auto r = cordiag_demo(opts);
  std::cout << "similarity condition: " << format_double(r.similarity_condition) << "\n";
  std::cout << "||BA - I||: " << format_double(r.product_defect) << "\n";
  std::cout << "||B T A - T0 sum||: " << format_double(r.conjugation_defect) << "\n";
  for (std::size_t i = 0; i < r.verdicts.size(); ++i)
    std::cout << "pair " << i << ": uniform " << to_string(r.verdicts[i].first) << ", conjugated "
              << to_string(r.verdicts[i].second) << "\n";
  std::cout << "disagreements: " << r.disagreements << "\n";
  if (!c.out.empty())
    write_out(c.out, to_json(r).dump(2) + "\n");
  return r.disagreements == 0 ? kOk : kFailure;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for C0 model operators, Jordan models and quasiaffine orbits"};
  app.require_subcommand(1);

  Common jm, vo, ds, ce, cd;
  auto* jordan = app.add_subcommand("jordan-model", "Jordan models of T|M and of the compression");
  add_common(jordan, jm);
  auto* verify = app.add_subcommand("verify-orbit", "Quasiaffine orbit test for two subspaces");
  add_common(verify, vo);
  auto* density = app.add_subcommand("density-sweep", "Density approximants and condition sequence");
  add_common(density, ds);
  auto* counter = app.add_subcommand("counterexample", "Witness search for a non-uniform ambient");
  add_common(counter, ce);
  CounterexampleOptions ce_opts;
  std::string blocks;
  bool control = false;
  counter->add_option("--grid", ce_opts.grid, "Grid resolution (0: lattice elements only)");
  counter->add_option("--budget", ce_opts.budget, "Maximum number of orbit decisions");
  counter->add_option("--dim-cap", ce_opts.dim_cap, "Largest admissible ambient dimension");
  counter->add_option("--blocks", blocks, "Block sizes, e.g. 2,1");
  counter->add_flag("--control", control, "Run on S(z) + S(z)");
  bool exhaustive = false;
  counter->add_flag("--exhaustive", exhaustive, "Finish the enumeration after a witness");
  auto* cordiag = app.add_subcommand("cordiag-demo", "Orbit verdicts under a similarity");
  add_common(cordiag, cd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*jordan)
      return cmd_jordan_model(jm);
    if (*verify)
      return cmd_verify_orbit(vo);
    if (*density)
      return cmd_density_sweep(ds);
    ce_opts.stop_at_witness = !exhaustive;
    if (*counter)
      return cmd_counterexample(ce, ce_opts, blocks, control);
    if (*cordiag)
      return cmd_cordiag(cd);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const InvalidInnerFunction& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const NotInvariant& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvariance;
  } catch (const HypothesisViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kHypothesis;
  } catch (const DivisibilityFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kHypothesis;
  } catch (const NotADivisor& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kHypothesis;
  } catch (const ModelTooLong& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kHypothesis;
  } catch (const TruncationTooSmall& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kHypothesis;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
