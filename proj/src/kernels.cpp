#include "polyqubit/kernels.hpp"

#include <algorithm>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "polyqubit/error.hpp"

namespace polyqubit::kernels {

namespace {

constexpr std::size_t kBlock = 4096;

using omp_index = long long;

struct SiteTables {
  std::vector<std::size_t> kept;        // offset of each kept-digit combination
  std::vector<std::size_t> complement;  // offset of each traced-digit combination
};

// Offsets for every combination of digits on `positions`, enumerated with the
// first listed position as the most significant digit.
std::vector<std::size_t> offsets_for(std::span<const int> positions, std::span<const std::size_t> strides,
                                     std::span<const int> dims) {
  std::vector<std::size_t> out{0};
  for (int pos : positions) {
    std::vector<std::size_t> next;
    next.reserve(out.size() * static_cast<std::size_t>(dims[pos]));
    for (std::size_t base : out)
      for (int digit = 0; digit < dims[pos]; ++digit) next.push_back(base + static_cast<std::size_t>(digit) * strides[pos]);
    out = std::move(next);
  }
  return out;
}

SiteTables make_tables(std::span<const int> dims, std::span<const int> keep) {
  const int n = static_cast<int>(dims.size());
  std::vector<std::size_t> strides(n);
  std::size_t stride = 1;
  for (int k = n - 1; k >= 0; --k) {
    strides[k] = stride;
    stride *= static_cast<std::size_t>(dims[k]);
  }
  std::vector<int> rest;
  std::size_t next_keep = 0;
  for (int k = 0; k < n; ++k) {
    if (next_keep < keep.size() && keep[next_keep] == k) {
      ++next_keep;
    } else {
      rest.push_back(k);
    }
  }
  return SiteTables{offsets_for(keep, strides, dims), offsets_for(rest, strides, dims)};
}

void check_sites(int n, std::span<const int> sites) {
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (sites[i] < 0 || sites[i] >= n || (i > 0 && sites[i] <= sites[i - 1]))
      throw Error(ErrorKind::BadSubset, "sites must be strictly increasing and in range");
  }
}

}  // namespace

std::size_t checked_power(int base, int exponent) {
  if (base < 1 || exponent < 0) throw Error(ErrorKind::WrongSize, "invalid dimension");
  std::size_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (out > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(base))
      throw Error(ErrorKind::QubitCap, "dimension overflows size_t");
    out *= static_cast<std::size_t>(base);
  }
  return out;
}

Mat2 reduce_one_qubit_serial(std::span<const Complex> amps, int n, int site) {
  const std::size_t stride = std::size_t{1} << (n - 1 - site);
  Mat2 rho{};
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & stride) continue;
    const Complex a0 = amps[i];
    const Complex a1 = amps[i | stride];
    rho[0][0] += std::norm(a0);
    rho[1][1] += std::norm(a1);
    rho[0][1] += a0 * std::conj(a1);
  }
  rho[1][0] = std::conj(rho[0][1]);
  return rho;
}

Mat2 reduce_one_qubit(std::span<const Complex> amps, int n, int site) {
  const int bit = n - 1 - site;
  const std::size_t stride = std::size_t{1} << bit;
  const std::size_t low_mask = stride - 1;
  const std::size_t pairs = amps.size() / 2;
  const std::size_t blocks = (pairs + kBlock - 1) / kBlock;

  struct Partial {
    double p00 = 0.0;
    double p11 = 0.0;
    Complex p01{};
  };
  std::vector<Partial> partial(blocks);

#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (omp_index b = 0; b < static_cast<omp_index>(blocks); ++b) {
    Partial acc;
    const std::size_t begin = static_cast<std::size_t>(b) * kBlock;
    const std::size_t end = std::min(pairs, begin + kBlock);
    for (std::size_t idx = begin; idx < end; ++idx) {
      const std::size_t i0 = ((idx >> bit) << (bit + 1)) | (idx & low_mask);
      const Complex a0 = amps[i0];
      const Complex a1 = amps[i0 | stride];
      acc.p00 += std::norm(a0);
      acc.p11 += std::norm(a1);
      acc.p01 += a0 * std::conj(a1);
    }
    partial[static_cast<std::size_t>(b)] = acc;
  }

  Mat2 rho{};
  for (const Partial& p : partial) {
    rho[0][0] += p.p00;
    rho[1][1] += p.p11;
    rho[0][1] += p.p01;
  }
  rho[1][0] = std::conj(rho[0][1]);
  return rho;
}

CMatrix reduce_sites_serial(std::span<const Complex> amps, int d, int n, std::span<const int> sites) {
  check_sites(n, sites);
  const std::vector<int> dims(static_cast<std::size_t>(n), d);
  const SiteTables t = make_tables(dims, sites);
  const std::size_t dim = t.kept.size();
  CMatrix rho(dim, dim);
  for (std::size_t e : t.complement)
    for (std::size_t r = 0; r < dim; ++r) {
      const Complex ar = amps[e + t.kept[r]];
      if (ar == Complex{}) continue;
      for (std::size_t s = 0; s < dim; ++s) rho(r, s) += ar * std::conj(amps[e + t.kept[s]]);
    }
  return rho;
}

CMatrix reduce_sites(std::span<const Complex> amps, int d, int n, std::span<const int> sites) {
  check_sites(n, sites);
  const std::vector<int> dims(static_cast<std::size_t>(n), d);
  const SiteTables t = make_tables(dims, sites);
  const std::size_t dim = t.kept.size();
  CMatrix rho(dim, dim);

#pragma omp parallel for schedule(dynamic) if (amps.size() * dim >= kParallelThreshold)
  for (omp_index row = 0; row < static_cast<omp_index>(dim); ++row) {
    const std::size_t r = static_cast<std::size_t>(row);
    for (std::size_t s = r; s < dim; ++s) {
      Complex sum{};
      for (std::size_t e : t.complement) sum += amps[e + t.kept[r]] * std::conj(amps[e + t.kept[s]]);
      rho(r, s) = sum;
    }
  }
  for (std::size_t r = 0; r < dim; ++r) {
    rho(r, r) = rho(r, r).real();
    for (std::size_t s = r + 1; s < dim; ++s) rho(s, r) = std::conj(rho(r, s));
  }
  return rho;
}

CMatrix trace_out(const CMatrix& rho, std::span<const int> dims, std::span<const int> keep) {
  check_sites(static_cast<int>(dims.size()), keep);
  std::size_t total = 1;
  for (int dim : dims) total *= static_cast<std::size_t>(dim);
  if (rho.rows() != total || rho.cols() != total)
    throw Error(ErrorKind::WrongSize, "density matrix does not match its factor dimensions");
  if (keep.size() == dims.size()) return rho;

  const SiteTables t = make_tables(dims, keep);
  const std::size_t dim = t.kept.size();
  CMatrix out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t s = 0; s < dim; ++s) {
      Complex sum{};
      for (std::size_t e : t.complement) sum += rho(e + t.kept[r], e + t.kept[s]);
      out(r, s) = sum;
    }
  return out;
}

std::vector<Complex> permute_sites(std::span<const Complex> amps, int n, std::span<const int> target) {
  // Input site k sits at bit n-1-k and moves to bit n-1-target[k].
  std::vector<int> target_bit(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) target_bit[static_cast<std::size_t>(n - 1 - k)] = n - 1 - target[static_cast<std::size_t>(k)];
  std::vector<Complex> out(amps.size());
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (omp_index i = 0; i < static_cast<omp_index>(amps.size()); ++i) {
    const auto src = static_cast<std::size_t>(i);
    std::size_t dst = 0;
    for (int bit = 0; bit < n; ++bit)
      if ((src >> bit) & 1U) dst |= std::size_t{1} << target_bit[static_cast<std::size_t>(bit)];
    out[dst] = amps[src];
  }
  return out;
}

double squared_norm(std::span<const Complex> amps) {
  const std::size_t blocks = (amps.size() + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (omp_index b = 0; b < static_cast<omp_index>(blocks); ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kBlock;
    const std::size_t end = std::min(amps.size(), begin + kBlock);
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) acc += std::norm(amps[i]);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  double sum = 0.0;
  for (double p : partial) sum += p;
  return sum;
}

}  // namespace polyqubit::kernels
