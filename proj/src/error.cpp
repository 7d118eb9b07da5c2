#include "polyqubit/error.hpp"

#include <sstream>

namespace polyqubit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidDensity: return "InvalidDensity";
    case ErrorKind::SingleQubit: return "SingleQubit";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::BadSubset: return "BadSubset";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
    case ErrorKind::TheoremViolation: return "TheoremViolation";
    case ErrorKind::WrongSize: return "WrongSize";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::QubitCap: return "QubitCap";
    case ErrorKind::Malformed: return "Malformed";
  }
  return "Unknown";
}

namespace {
std::string deviation_message(double deviation) {
  std::ostringstream os;
  os.precision(17);
  os << "squared norm deviates from 1 by " << deviation;
  return os.str();
}
}  // namespace

NotNormalizedError::NotNormalizedError(double deviation)
    : Error(ErrorKind::NotNormalized, deviation_message(deviation)), deviation_(deviation) {}

}  // namespace polyqubit
