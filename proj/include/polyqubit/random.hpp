#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "polyqubit/linalg.hpp"

namespace polyqubit {

// SplitMix64 finalizer over (seed, counter); used to give every sample or
// restart its own independent stream so batch results do not depend on the
// order in which items are processed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter);

// `count` independent standard complex Gaussians (unit variance per real and
// imaginary part), scaled to unit Euclidean norm.
std::vector<Complex> haar_amplitudes(std::size_t count, std::uint64_t seed);

}  // namespace polyqubit
