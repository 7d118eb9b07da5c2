#pragma once

// Executable form of the necessity argument for the polygon inequalities, and
// the consistency conditions between overlapping marginals.

#include <string>
#include <vector>

#include "polyqubit/statevec.hpp"

namespace polyqubit {

inline constexpr double kCertificateSlack = 1e-9;
inline constexpr double kConsistencyTolerance = 1e-10;

struct ChainCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;  // lhs >= rhs - kCertificateSlack (or |lhs - rhs| within it for identities)
};

// Quantities for one qubit k, computed after moving k to the front. The rest
// of the state is expanded in the product of the other qubits' marginal
// eigenbases, where index bit 0 selects the smaller-eigenvalue eigenvector:
//
//   |Psi> = A sum_s a_s |0>|s> + B sum_s b_s |1>|s>.
struct CertificateReport {
  int qubit = 1;
  bool trivial = false;  // lambda_k == 0: inequality holds with nothing to check
  double lambda = 0.0;   // smaller eigenvalue of qubit k
  double weight0 = 0.0;  // A^2
  double weight1 = 0.0;  // B^2
  std::vector<int> others;  // original labels of qubits 2..n after relabeling
  std::vector<Complex> a_coeffs;
  std::vector<Complex> b_coeffs;
  std::vector<int> zero_counts;  // per index string: number of zeros
  std::vector<double> lambdas_from_coeffs;  // reconstruction of each other qubit's lambda
  std::vector<double> lambdas_direct;       // same, by partial trace
  double sum_others = 0.0;
  double weighted_sum = 0.0;   // A^2 sum N|a|^2 + B^2 sum N|b|^2
  double dropped_sum = 0.0;    // A^2 (1 - |a_1..1|^2) + B^2 (1 - |b_1..1|^2)
  double bound1 = 0.0;         // A^2 (2 - |a_1..1|^2 - |b_1..1|^2)
  double a_all_ones2 = 0.0;
  double b_all_ones2 = 0.0;
  double cs_lhs = 0.0;
  double cs_rhs = 0.0;
  double norm_a_residual = 0.0;
  double norm_b_residual = 0.0;
  double overlap_residual = 0.0;  // |sum conj(a) b|
  double reconstruction_residual = 0.0;
  std::vector<ChainCheck> checks;
  bool all_hold = true;
};

// Throws TheoremViolation if any step fails by more than kCertificateSlack.
CertificateReport necessity_certificate(const PureState& state, int qubit);

struct SubsetTriple {
  std::vector<int> P;
  std::vector<int> Q;
  std::vector<int> R;
};

struct ConsistencyReport {
  double max_deviation = 0.0;
  bool pass = true;  // max_deviation <= kConsistencyTolerance
};

// Compares tr_Q rho_{P u Q} with tr_R rho_{P u R}. Sets must be sorted,
// within 1..n, P nonempty and disjoint from Q and R.
ConsistencyReport check_consistency(const PureState& state, const SubsetTriple& triple);

// Every valid triple on n qubits with |P u Q| <= max_joint (R unrestricted),
// in a fixed enumeration order.
std::vector<SubsetTriple> enumerate_triples(int n, int max_joint);

}  // namespace polyqubit
