#include "polyqubit/random.hpp"

#include <cmath>
#include <random>

namespace polyqubit {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Complex> haar_amplitudes(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> amps(count);
  double norm2 = 0.0;
  for (Complex& a : amps) {
    const double re = normal(gen);
    const double im = normal(gen);
    a = Complex{re, im};
    norm2 += re * re + im * im;
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& a : amps) a *= scale;
  return amps;
}

}  // namespace polyqubit
