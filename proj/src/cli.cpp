#include "polyqubit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "polyqubit/certify.hpp"
#include "polyqubit/error.hpp"
#include "polyqubit/explorer.hpp"
#include "polyqubit/io.hpp"
#include "polyqubit/spectra.hpp"
#include "polyqubit/statevec.hpp"
#include "polyqubit/sweep.hpp"
#include "polyqubit/synthesis.hpp"

namespace polyqubit::cli {

namespace {

using io::json;

struct Outcome {
  int code = kExitOk;
  json report;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Infeasible:
    case ErrorKind::TheoremViolation:
      return kExitViolation;
    default:
      return kExitInvalid;
  }
}

std::vector<QubitPair> parse_pairs(const std::string& text) {
  std::vector<QubitPair> pairs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw Error(ErrorKind::Malformed, "pairs are written like 1-2,1-3");
    try {
      pairs.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Malformed, "cannot parse pair '" + item + "'");
    }
  }
  return pairs;
}

json marginal_entry(const PureState& state, int qubit) {
  const QubitDensity rho = reduce_one_qubit(state, qubit);
  const Eig2 e = eig2(rho);
  return json{{"qubit", qubit}, {"rho", io::to_json(rho)}, {"eigenvalues", {e.lambda_small, e.lambda_large}}};
}

double max_spectrum_error(const Spectrum& a, const Spectrum& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

Outcome cmd_check(const std::string& file, double eps) {
  const Spectrum spectrum = io::spectrum_from_json(io::read_json_file(file));
  const FeasibilityReport report = check_polygon(spectrum, eps);
  return {report.feasible ? kExitOk : kExitViolation, io::to_json(report)};
}

Outcome cmd_synth(const std::string& file, const std::string& out_file, const std::string& trace_file) {
  const Spectrum target = io::spectrum_from_json(io::read_json_file(file));
  const SynthesisResult result = synth_spectrum(target);
  json report{{"target", io::to_json(target)["lambdas"]},
              {"achieved", io::to_json(result.achieved)["lambdas"]},
              {"max_error", max_spectrum_error(target, result.achieved)},
              {"levels", result.trace.size()}};
  if (out_file.empty()) {
    report["state"] = io::to_json(result.state);
  } else {
    io::write_json_file(out_file, io::to_json(result.state));
    report["state_file"] = out_file;
  }
  if (!trace_file.empty()) {
    io::write_json_file(trace_file, io::trace_to_json(result));
    report["trace_file"] = trace_file;
  }
  return {kExitOk, report};
}

Outcome cmd_synth_rho(const std::string& file, const std::string& out_file) {
  const std::vector<QubitDensity> targets = io::density_targets_from_json(io::read_json_file(file));
  const PureState state = synth_density(targets);
  json marginals = json::array();
  double worst = 0.0;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const QubitDensity rho = reduce_one_qubit(state, static_cast<int>(k) + 1);
    worst = std::max(worst, max_abs_diff(rho.entries, targets[k].entries));
    marginals.push_back(io::to_json(rho));
  }
  json report{{"marginals", marginals}, {"max_deviation", worst}};
  if (out_file.empty()) {
    report["state"] = io::to_json(state);
  } else {
    io::write_json_file(out_file, io::to_json(state));
    report["state_file"] = out_file;
  }
  return {kExitOk, report};
}

Outcome cmd_reduce(const std::string& file, int qubit, const std::vector<int>& subset) {
  const PureState state = io::state_from_json(io::read_json_file(file));
  json report;
  const std::vector<double> lambdas = one_qubit_spectrum(state);
  if (!subset.empty()) {
    std::vector<int> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    const DensityMatrix rho = reduce_subset(state, sorted);
    report = json{{"subset", sorted},
                  {"rho", io::to_json(rho.entries)},
                  {"eigenvalues", hermitian_eigen(rho.entries).values}};
  } else if (qubit != 0) {
    report = marginal_entry(state, qubit);
    report["spectrum"] = lambdas;
  } else {
    json marginals = json::array();
    for (int k = 1; k <= state.qubits(); ++k) marginals.push_back(marginal_entry(state, k));
    std::vector<double> clamped = lambdas;
    for (double& x : clamped) x = std::clamp(x, 0.0, 0.5);
    report = json{{"marginals", marginals},
                  {"spectrum", lambdas},
                  {"polygon", io::to_json(check_polygon(Spectrum(clamped)))}};
  }
  return {kExitOk, report};
}

Outcome cmd_sample(int n, std::uint64_t count, std::uint64_t seed, bool certify, bool emit_spectra) {
  SweepOptions options;
  options.certify = certify;
  options.keep_spectra = emit_spectra;
  const NecessitySweep sweep = necessity_sweep(n, count, seed, options);
  const bool clean = sweep.polygon_violations == 0 && sweep.certificate_violations == 0 && sweep.failures == 0;
  return {clean ? kExitOk : kExitViolation, io::to_json(sweep)};
}

Outcome cmd_certify(const std::string& file, int qubit, int consistency_joint) {
  const PureState state = io::state_from_json(io::read_json_file(file));
  json certificates = json::array();
  json violations = json::array();
  const int first = qubit == 0 ? 1 : qubit;
  const int last = qubit == 0 ? state.qubits() : qubit;
  for (int k = first; k <= last; ++k) {
    try {
      certificates.push_back(io::to_json(necessity_certificate(state, k)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TheoremViolation) throw;
      violations.push_back(e.what());
    }
  }
  json report{{"certificates", certificates}, {"violations", violations}};
  bool clean = violations.empty();
  if (consistency_joint > 0) {
    double worst = 0.0;
    std::size_t failing = 0;
    const auto triples = enumerate_triples(state.qubits(), consistency_joint);
    for (const SubsetTriple& t : triples) {
      const ConsistencyReport c = check_consistency(state, t);
      worst = std::max(worst, c.max_deviation);
      if (!c.pass) ++failing;
    }
    report["consistency"] = json{{"triples", triples.size()},
                                 {"max_joint", consistency_joint},
                                 {"max_deviation", worst},
                                 {"failing", failing},
                                 {"tolerance", kConsistencyTolerance}};
    clean = clean && failing == 0;
  }
  return {clean ? kExitOk : kExitViolation, report};
}

Outcome cmd_search_mixed(const SearchConfig& config, const std::string& out_file) {
  const SearchResult result = search_mixed4(config);
  json report = io::to_json(result);
  if (!out_file.empty()) {
    io::write_json_file(out_file, io::to_json(result.best_state));
    report["state_file"] = out_file;
  }
  return {kExitOk, report};
}

Outcome cmd_qudit_check(const std::string& file, double eps) {
  const QuditState state = io::qudit_state_from_json(io::read_json_file(file));
  const QuditPolygonReport report = qudit_polygon_check(state, eps);
  return {report.polygon.feasible ? kExitOk : kExitViolation, io::to_json(report)};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"One-qubit marginals of pure multi-qubit states: feasibility, synthesis, certificates"};
  app.name("polyqubit");
  app.require_subcommand(1);

  std::string input;
  std::string out_file;
  std::string trace_file;
  double eps = kDefaultFeasibilityEps;
  int qubit = 0;
  std::vector<int> subset;
  int n = 0;
  std::uint64_t count = 1000;
  std::uint64_t seed = 0;
  bool certify_flag = false;
  bool emit_spectra = false;
  int consistency_joint = 0;
  SearchConfig search;
  std::string pairs_text = "1-2,1-3,1-4";
  bool serial = false;

  auto* check = app.add_subcommand("check", "Decide feasibility of a spectrum file");
  check->add_option("spectrum", input, "Spectrum JSON file")->required();
  check->add_option("--eps", eps, "Feasibility tolerance");

  auto* synth = app.add_subcommand("synth", "Build a pure state realizing a spectrum");
  synth->add_option("spectrum", input, "Spectrum JSON file")->required();
  synth->add_option("--out", out_file, "Write the state here instead of embedding it");
  synth->add_option("--trace", trace_file, "Write the recursion trace here");

  auto* synth_rho = app.add_subcommand("synth-rho", "Build a pure state realizing one-qubit density matrices");
  synth_rho->add_option("targets", input, "Density-targets JSON file")->required();
  synth_rho->add_option("--out", out_file, "Write the state here instead of embedding it");

  auto* reduce = app.add_subcommand("reduce", "Partial traces of a state file");
  reduce->add_option("state", input, "State JSON file")->required();
  auto* qubit_opt = reduce->add_option("--qubit", qubit, "One-qubit marginal (1-based)");
  reduce->add_option("--subset", subset, "Comma-separated qubits (1-based)")->delimiter(',')->excludes(qubit_opt);

  auto* sample = app.add_subcommand("sample", "Necessity sweep over Haar-random states");
  sample->add_option("--n", n, "Qubit count")->required();
  sample->add_option("--count", count, "Number of samples");
  sample->add_option("--seed", seed, "Random seed")->required();
  sample->add_flag("--certify", certify_flag, "Also run the necessity certificate on every qubit");
  sample->add_flag("--emit-spectra", emit_spectra, "Include every sampled spectrum");

  auto* certify = app.add_subcommand("certify", "Necessity certificates for a state file");
  certify->add_option("state", input, "State JSON file")->required();
  certify->add_option("--qubit", qubit, "Only this qubit (default: all)");
  certify->add_option("--consistency", consistency_joint,
                      "Also check consistency conditions for all triples with |P u Q| <= this");

  auto* search_cmd = app.add_subcommand("search-mixed", "Four-qubit search towards totally mixed pair marginals");
  search_cmd->add_option("--restarts", search.restarts, "Number of random restarts");
  search_cmd->add_option("--max-iters", search.max_iters, "Descent iterations per restart");
  search_cmd->add_option("--seed", search.seed, "Random seed")->required();
  search_cmd->add_option("--pairs", pairs_text, "Qubit pairs, e.g. 1-2,1-3,1-4");
  search_cmd->add_option("--step", search.initial_step, "Initial step length");
  search_cmd->add_option("--tol", search.gradient_tolerance, "Gradient-norm stopping tolerance");
  search_cmd->add_option("--out", out_file, "Write the best state here");
  search_cmd->add_flag("--serial", serial, "Run restarts on one thread");

  auto* qudit = app.add_subcommand("qudit-check", "Generalized polygon check for a qudit state file");
  qudit->add_option("state", input, "Qudit state JSON file")->required();
  qudit->add_option("--eps", eps, "Feasibility tolerance");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  }

  Outcome outcome;
  try {
    if (*check) {
      outcome = cmd_check(input, eps);
    } else if (*synth) {
      outcome = cmd_synth(input, out_file, trace_file);
    } else if (*synth_rho) {
      outcome = cmd_synth_rho(input, out_file);
    } else if (*reduce) {
      outcome = cmd_reduce(input, qubit, subset);
    } else if (*sample) {
      outcome = cmd_sample(n, count, seed, certify_flag, emit_spectra);
    } else if (*certify) {
      outcome = cmd_certify(input, qubit, consistency_joint);
    } else if (*search_cmd) {
      search.pairs = parse_pairs(pairs_text);
      search.parallel = !serial;
      outcome = cmd_search_mixed(search, out_file);
    } else if (*qudit) {
      outcome = cmd_qudit_check(input, eps);
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    outcome.code = exit_code_for(e.kind());
    outcome.report = json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
  }
  out << outcome.report.dump(2) << '\n';
  return outcome.code;
}

}  // namespace polyqubit::cli
