#include "polyqubit/io.hpp"

#include <fstream>
#include <sstream>

#include "polyqubit/error.hpp"

namespace polyqubit::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::Malformed, what); }

const json& field(const json& doc, const char* key) {
  if (!doc.is_object()) malformed("expected a JSON object");
  const auto it = doc.find(key);
  if (it == doc.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

int int_field(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number_integer()) malformed(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

double number(const json& v, const char* what) {
  if (!v.is_number()) malformed(std::string(what) + " must be a number");
  return v.get<double>();
}

Complex complex_from(const json& v) {
  if (!v.is_array() || v.size() != 2) malformed("complex numbers are [re, im] pairs");
  return {number(v[0], "real part"), number(v[1], "imaginary part")};
}

std::vector<Complex> amplitudes_from(const json& doc) {
  const json& arr = field(doc, "amplitudes");
  if (!arr.is_array()) malformed("'amplitudes' must be an array");
  std::vector<Complex> out;
  out.reserve(arr.size());
  for (const json& v : arr) out.push_back(complex_from(v));
  return out;
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json amplitudes_to_json(std::span<const Complex> amps) {
  json arr = json::array();
  for (const Complex& z : amps) arr.push_back(complex_to_json(z));
  return arr;
}

json complex_list(const std::vector<Complex>& v) { return amplitudes_to_json(v); }

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    malformed(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Malformed, "cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

PureState state_from_json(const json& doc) {
  const int n = int_field(doc, "n");
  return validate_state(amplitudes_from(doc), n, kFileNormTolerance);
}

json to_json(const PureState& state) {
  return json{{"n", state.qubits()}, {"amplitudes", amplitudes_to_json(state.amplitudes())}};
}

Spectrum spectrum_from_json(const json& doc) {
  const json& arr = field(doc, "lambdas");
  if (!arr.is_array()) malformed("'lambdas' must be an array");
  std::vector<double> lambdas;
  for (const json& v : arr) lambdas.push_back(number(v, "lambda"));
  return Spectrum(std::move(lambdas));
}

json to_json(const Spectrum& spectrum) {
  return json{{"lambdas", std::vector<double>(spectrum.lambdas().begin(), spectrum.lambdas().end())}};
}

std::vector<QubitDensity> density_targets_from_json(const json& doc) {
  const json& rhos = field(doc, "rhos");
  if (!rhos.is_array() || rhos.empty()) malformed("'rhos' must be a nonempty array");
  std::vector<QubitDensity> out;
  for (const json& m : rhos) {
    if (!m.is_array() || m.size() != 2) malformed("each rho is a 2x2 array");
    QubitDensity rho;
    for (int r = 0; r < 2; ++r) {
      if (!m[r].is_array() || m[r].size() != 2) malformed("each rho is a 2x2 array");
      for (int c = 0; c < 2; ++c) rho.entries[r][c] = complex_from(m[r][c]);
    }
    out.push_back(rho);
  }
  return out;
}

json to_json(const QubitDensity& rho) {
  json m = json::array();
  for (int r = 0; r < 2; ++r) m.push_back(json::array({complex_to_json(rho(r, 0)), complex_to_json(rho(r, 1))}));
  return m;
}

json to_json(const CMatrix& mat) {
  json m = json::array();
  for (std::size_t r = 0; r < mat.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < mat.cols(); ++c) row.push_back(complex_to_json(mat(r, c)));
    m.push_back(std::move(row));
  }
  return m;
}

QuditState qudit_state_from_json(const json& doc) {
  const int d = int_field(doc, "d");
  const int n = int_field(doc, "n");
  return validate_qudit_state(amplitudes_from(doc), d, n, kFileNormTolerance);
}

json to_json(const QuditState& state) {
  return json{{"d", state.local_dim()}, {"n", state.sites()}, {"amplitudes", amplitudes_to_json(state.amplitudes())}};
}

json to_json(const FeasibilityReport& report) {
  return json{{"feasible", report.feasible},   {"slacks", report.slacks},     {"worst_index", report.worst_index},
              {"min_slack", report.min_slack}, {"boundary", report.boundary}, {"eps", report.eps}};
}

json to_json(const SynthesisLevel& level) {
  json j{{"qubits", level.qubits}, {"order", level.order}, {"sorted", level.sorted}, {"base", level.base}};
  if (!level.base) {
    j["case"] = level.case_tag;
    j["reduced_top"] = level.reduced_top;
    j["chi"] = level.chi;
    j["sin2_chi"] = level.sin2_chi;
    j["phi_norm2"] = level.phi_norm2;
    j["psi_norm2"] = level.psi_norm2;
  }
  return j;
}

json trace_to_json(const SynthesisResult& result) {
  json levels = json::array();
  for (const SynthesisLevel& level : result.trace) levels.push_back(to_json(level));
  return json{{"levels", levels}, {"achieved", to_json(result.achieved)["lambdas"]}};
}

json to_json(const CertificateReport& r) {
  json checks = json::array();
  for (const ChainCheck& c : r.checks)
    checks.push_back(json{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}});
  return json{{"qubit", r.qubit},
              {"trivial", r.trivial},
              {"lambda", r.lambda},
              {"A2", r.weight0},
              {"B2", r.weight1},
              {"others", r.others},
              {"a_coeffs", complex_list(r.a_coeffs)},
              {"b_coeffs", complex_list(r.b_coeffs)},
              {"N_weights", r.zero_counts},
              {"lambdas_direct", r.lambdas_direct},
              {"lambdas_from_coeffs", r.lambdas_from_coeffs},
              {"sum_others", r.sum_others},
              {"weighted_sum", r.weighted_sum},
              {"dropped_sum", r.dropped_sum},
              {"bound1", r.bound1},
              {"a_all_ones2", r.a_all_ones2},
              {"b_all_ones2", r.b_all_ones2},
              {"cs_lhs", r.cs_lhs},
              {"cs_rhs", r.cs_rhs},
              {"norm_a_residual", r.norm_a_residual},
              {"norm_b_residual", r.norm_b_residual},
              {"overlap_residual", r.overlap_residual},
              {"reconstruction_residual", r.reconstruction_residual},
              {"checks", checks},
              {"all_hold", r.all_hold}};
}

json to_json(const SearchResult& result) {
  json restarts = json::array();
  for (const RestartOutcome& o : result.per_restart)
    restarts.push_back(json{{"index", o.index},
                            {"seed", o.seed},
                            {"initial_objective", o.initial_objective},
                            {"final_objective", o.final_objective},
                            {"iterations", o.iterations}});
  return json{{"best_objective", result.best_objective},
              {"best_restart", result.best_restart},
              {"best_state", to_json(result.best_state)},
              {"per_restart", restarts},
              {"best_so_far", result.best_so_far},
              {"objective", result.objective}};
}

json to_json(const QuditPolygonReport& report) {
  return json{{"spectra", report.spectra}, {"mu", report.mu}, {"polygon", to_json(report.polygon)}};
}

json to_json(const NecessitySweep& s) {
  json j{{"n", s.n},
         {"count", s.count},
         {"seed", s.seed},
         {"min_slack", s.min_slack},
         {"worst_sample", s.worst_sample},
         {"worst_qubit", s.worst_qubit},
         {"polygon_violations", s.polygon_violations},
         {"certificates", s.certificates},
         {"certificate_violations", s.certificate_violations},
         {"max_identity_residual", s.max_identity_residual},
         {"failures", s.failures},
         {"violations", s.violations}};
  if (s.n == 2) j["max_pair_gap"] = s.max_pair_gap;
  if (!s.spectra.empty()) j["spectra"] = s.spectra;
  return j;
}

}  // namespace polyqubit::io
