#include "markedpoints/random.hpp"

#include "markedpoints/errors.hpp"

#include <cmath>

namespace markedpoints {

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t replicate_index) noexcept
{
  std::uint64_t z = master_seed + (replicate_index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t poisson_draw(Rng& rng, double mean)
{
  if (!(mean >= 0.0) || !std::isfinite(mean))
    fail(ErrorCode::invalid_argument, "poisson mean must be finite and nonnegative");
  if (mean == 0.0)
    return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(rng);
}

double normal_draw(Rng& rng)
{
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

} // namespace markedpoints
