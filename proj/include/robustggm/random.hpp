#pragma once

#include <cstdint>
#include <random>

namespace robustggm {

using Rng = std::mt19937_64;

/// Mixes a master seed and a stream index into an independent sub-seed
/// (splitmix64 finalizer). Used for replicate and EM-iteration streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Gamma draw in the shape-rate parameterization (mean shape / rate).
double gamma_shape_rate(Rng& rng, double shape, double rate);

double standard_normal(Rng& rng);

}  // namespace robustggm
