#include "polyqubit/certify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "polyqubit/error.hpp"
#include "polyqubit/kernels.hpp"

namespace polyqubit {

namespace {

ChainCheck inequality(std::string name, double lhs, double rhs) {
  return ChainCheck{std::move(name), lhs, rhs, lhs >= rhs - kCertificateSlack};
}

ChainCheck identity(std::string name, double lhs, double rhs) {
  return ChainCheck{std::move(name), lhs, rhs, std::abs(lhs - rhs) <= kCertificateSlack};
}

// Coefficients of `rest` in the product basis whose j-th factor is
// (small_j, large_j) = columns of bases[j].
std::vector<Complex> coefficients(const std::vector<Complex>& rest, const std::vector<Mat2>& bases) {
  const int m = static_cast<int>(bases.size());
  PureState s = validate_state(rest, m);
  for (int j = 0; j < m; ++j) s = apply_local_unitary(s, j + 1, adjoint(bases[static_cast<std::size_t>(j)]));
  const auto amps = s.amplitudes();
  return {amps.begin(), amps.end()};
}

void check_set(const std::vector<int>& set, int n, const char* name) {
  for (std::size_t i = 0; i < set.size(); ++i)
    if (set[i] < 1 || set[i] > n || (i > 0 && set[i] <= set[i - 1]))
      throw Error(ErrorKind::BadSubset, std::string(name) + " must be strictly increasing within 1..n");
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  return std::none_of(a.begin(), a.end(), [&](int x) { return std::binary_search(b.begin(), b.end(), x); });
}

CMatrix marginal_via(const PureState& state, const std::vector<int>& keep, const std::vector<int>& extra) {
  std::vector<int> joint;
  std::set_union(keep.begin(), keep.end(), extra.begin(), extra.end(), std::back_inserter(joint));
  const DensityMatrix rho = reduce_subset(state, joint);
  std::vector<int> positions;
  for (int q : keep)
    positions.push_back(static_cast<int>(std::lower_bound(joint.begin(), joint.end(), q) - joint.begin()));
  return kernels::trace_out(rho.entries, rho.dims, positions);
}

}  // namespace

CertificateReport necessity_certificate(const PureState& state, int qubit) {
  const int n = state.qubits();
  if (n < 2) throw Error(ErrorKind::SingleQubit, "certificate needs at least two qubits");
  if (qubit < 1 || qubit > n) throw Error(ErrorKind::IndexOutOfRange, "qubit index out of range");

  CertificateReport report;
  report.qubit = qubit;

  // Move `qubit` to the front, keeping the others in order.
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) perm[static_cast<std::size_t>(j - 1)] = j == qubit ? 1 : (j < qubit ? j + 1 : j);
  for (int j = 1; j <= n; ++j)
    if (j != qubit) report.others.push_back(j);
  const PureState moved = permute_qubits(state, perm);

  std::vector<Eig2> eigen;
  for (int j = 1; j <= n; ++j) eigen.push_back(eig2(reduce_one_qubit(moved, j)));
  report.lambda = std::max(eigen[0].lambda_small, 0.0);
  for (int j = 1; j < n; ++j) {
    report.lambdas_direct.push_back(eigen[static_cast<std::size_t>(j)].lambda_small);
    report.sum_others += eigen[static_cast<std::size_t>(j)].lambda_small;
  }

  if (report.lambda <= kDegeneracyTolerance) {
    report.trivial = true;
    report.weight0 = report.lambda;
    report.weight1 = 1.0 - report.lambda;
    report.checks.push_back(inequality("polygon", report.sum_others, report.lambda));
    report.all_hold = report.checks.back().holds;
    if (!report.all_hold) throw Error(ErrorKind::TheoremViolation, "polygon inequality fails for a pure qubit");
    return report;
  }

  const SchmidtSplit split = schmidt_split_first(moved);
  report.weight0 = split.coeff0 * split.coeff0;
  report.weight1 = split.coeff1 * split.coeff1;

  std::vector<Mat2> bases;
  for (int j = 1; j < n; ++j) {
    const Eig2& e = eigen[static_cast<std::size_t>(j)];
    bases.push_back(from_columns(e.v_small, e.v_large));
  }
  report.a_coeffs = coefficients(split.rest0, bases);
  report.b_coeffs = coefficients(split.rest1, bases);

  const int m = n - 1;
  const std::size_t count = report.a_coeffs.size();
  double norm_a = 0.0;
  double norm_b = 0.0;
  Complex overlap{};
  double weighted_a = 0.0;
  double weighted_b = 0.0;
  std::vector<double> zero_mass_a(static_cast<std::size_t>(m), 0.0);
  std::vector<double> zero_mass_b(static_cast<std::size_t>(m), 0.0);
  for (std::size_t s = 0; s < count; ++s) {
    const int zeros = m - std::popcount(s);
    report.zero_counts.push_back(zeros);
    const double pa = std::norm(report.a_coeffs[s]);
    const double pb = std::norm(report.b_coeffs[s]);
    norm_a += pa;
    norm_b += pb;
    overlap += std::conj(report.a_coeffs[s]) * report.b_coeffs[s];
    weighted_a += zeros * pa;
    weighted_b += zeros * pb;
    for (int j = 0; j < m; ++j) {
      // Qubit j of the rest is bit m-1-j.
      if (((s >> (m - 1 - j)) & 1U) == 0) {
        zero_mass_a[static_cast<std::size_t>(j)] += pa;
        zero_mass_b[static_cast<std::size_t>(j)] += pb;
      }
    }
  }

  const double w0 = report.weight0;
  const double w1 = report.weight1;
  report.weighted_sum = w0 * weighted_a + w1 * weighted_b;
  report.a_all_ones2 = std::norm(report.a_coeffs.back());
  report.b_all_ones2 = std::norm(report.b_coeffs.back());
  report.dropped_sum = w0 * (1.0 - report.a_all_ones2) + w1 * (1.0 - report.b_all_ones2);
  report.bound1 = w0 * (2.0 - report.a_all_ones2 - report.b_all_ones2);
  report.cs_lhs = report.a_all_ones2 * report.b_all_ones2;
  report.cs_rhs = (1.0 - report.a_all_ones2) * (1.0 - report.b_all_ones2);
  report.norm_a_residual = std::abs(norm_a - 1.0);
  report.norm_b_residual = std::abs(norm_b - 1.0);
  report.overlap_residual = std::abs(overlap);
  for (int j = 0; j < m; ++j) {
    const double rebuilt = w0 * zero_mass_a[static_cast<std::size_t>(j)] + w1 * zero_mass_b[static_cast<std::size_t>(j)];
    report.lambdas_from_coeffs.push_back(rebuilt);
    report.reconstruction_residual =
        std::max(report.reconstruction_residual, std::abs(rebuilt - report.lambdas_direct[static_cast<std::size_t>(j)]));
  }

  auto& c = report.checks;
  c.push_back(identity("norm_a", norm_a, 1.0));
  c.push_back(identity("norm_b", norm_b, 1.0));
  c.push_back(identity("orthogonality", report.overlap_residual, 0.0));
  c.push_back(identity("schmidt_weight", w0, report.lambda));
  c.push_back(identity("lambda_reconstruction", report.reconstruction_residual, 0.0));
  c.push_back(identity("weighted_sum", report.weighted_sum, report.sum_others));
  c.push_back(inequality("drop_all_ones", report.weighted_sum, report.dropped_sum));
  c.push_back(inequality("weights_ordered", w1, w0));
  c.push_back(inequality("bound1", report.dropped_sum, report.bound1));
  c.push_back(inequality("cauchy_schwarz", report.cs_rhs, report.cs_lhs));
  c.push_back(inequality("all_ones_mass", 1.0, report.a_all_ones2 + report.b_all_ones2));
  c.push_back(inequality("bound1_vs_weight", report.bound1, w0));
  c.push_back(inequality("polygon", report.sum_others, report.lambda));

  for (const ChainCheck& check : c) {
    if (check.holds) continue;
    report.all_hold = false;
    std::ostringstream os;
    os.precision(17);
    os << "qubit " << qubit << ": step '" << check.name << "' fails (lhs " << check.lhs << ", rhs " << check.rhs
       << ")";
    throw Error(ErrorKind::TheoremViolation, os.str());
  }
  return report;
}

ConsistencyReport check_consistency(const PureState& state, const SubsetTriple& triple) {
  const int n = state.qubits();
  if (triple.P.empty()) throw Error(ErrorKind::BadSubset, "P must be nonempty");
  check_set(triple.P, n, "P");
  check_set(triple.Q, n, "Q");
  check_set(triple.R, n, "R");
  if (!disjoint(triple.P, triple.Q) || !disjoint(triple.P, triple.R))
    throw Error(ErrorKind::BadSubset, "P must be disjoint from Q and R");

  const CMatrix lhs = marginal_via(state, triple.P, triple.Q);
  const CMatrix rhs = marginal_via(state, triple.P, triple.R);
  ConsistencyReport report;
  report.max_deviation = max_abs_diff(lhs, rhs);
  report.pass = report.max_deviation <= kConsistencyTolerance;
  return report;
}

std::vector<SubsetTriple> enumerate_triples(int n, int max_joint) {
  if (n < 1 || n > 16) throw Error(ErrorKind::WrongSize, "triple enumeration supports 1..16 qubits");
  auto members = [](unsigned mask, int width) {
    std::vector<int> out;
    for (int q = 1; q <= width; ++q)
      if (mask & (1U << (q - 1))) out.push_back(q);
    return out;
  };
  const unsigned full = (1U << n) - 1;
  std::vector<SubsetTriple> out;
  for (unsigned p = 1; p <= full; ++p) {
    const unsigned rest = full & ~p;
    // Submasks of `rest`, including the empty set.
    for (unsigned q = rest;; q = (q - 1) & rest) {
      if (std::popcount(p | q) <= max_joint) {
        for (unsigned r = rest;; r = (r - 1) & rest) {
          out.push_back(SubsetTriple{members(p, n), members(q, n), members(r, n)});
          if (r == 0) break;
        }
      }
      if (q == 0) break;
    }
  }
  return out;
}

}  // namespace polyqubit
