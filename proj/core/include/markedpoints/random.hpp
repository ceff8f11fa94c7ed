#pragma once

#include <cstdint>
#include <random>

namespace markedpoints {

using Rng = std::mt19937_64;

/// Master seed plus replicate index; every replicate gets its own stream.
struct SeedSpec
{
  std::uint64_t master_seed = 0;
  std::uint64_t replicate_index = 0;
};

/// SplitMix64 finalizer applied to master + (index + 1) * 0x9E3779B97F4A7C15.
/// The constants are fixed: other implementations reproduce the same streams.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t replicate_index) noexcept;

inline Rng make_rng(const SeedSpec& spec)
{
  return Rng(derive_seed(spec.master_seed, spec.replicate_index));
}

/// Uniform on [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) noexcept
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) noexcept
{
  return lo + (hi - lo) * uniform01(rng);
}

std::uint64_t poisson_draw(Rng& rng, double mean);
double normal_draw(Rng& rng);

} // namespace markedpoints
