#pragma once

// JSON file formats and report serialization.
//
//   state         {"n": int, "amplitudes": [[re, im], ...]}       2^n entries
//   spectrum      {"lambdas": [x, ...]}
//   rho targets   {"rhos": [ [[[re,im],[re,im]], [[re,im],[re,im]]], ... ]}
//   qudit state   {"d": int, "n": int, "amplitudes": [[re, im], ...]}  d^n entries
//
// Amplitudes use the big-endian order of statevec.hpp. Readers throw
// Error(Malformed) on shape problems and the statevec errors on bad content;
// states whose squared norm deviates from 1 by more than kFileNormTolerance
// are rejected.

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "polyqubit/certify.hpp"
#include "polyqubit/explorer.hpp"
#include "polyqubit/spectra.hpp"
#include "polyqubit/statevec.hpp"
#include "polyqubit/sweep.hpp"
#include "polyqubit/synthesis.hpp"

namespace polyqubit::io {

using nlohmann::json;

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc);

PureState state_from_json(const json& doc);
json to_json(const PureState& state);

Spectrum spectrum_from_json(const json& doc);
json to_json(const Spectrum& spectrum);

std::vector<QubitDensity> density_targets_from_json(const json& doc);
json to_json(const QubitDensity& rho);
json to_json(const CMatrix& m);

QuditState qudit_state_from_json(const json& doc);
json to_json(const QuditState& state);

json to_json(const FeasibilityReport& report);
json to_json(const SynthesisLevel& level);
json trace_to_json(const SynthesisResult& result);
json to_json(const CertificateReport& report);
json to_json(const SearchResult& result);
json to_json(const QuditPolygonReport& report);
json to_json(const NecessitySweep& sweep);

}  // namespace polyqubit::io
