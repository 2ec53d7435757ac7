#pragma once

#include <array>
#include <cstdint>

namespace flicker {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Each
// (key, counter) pair maps to an independent 128-bit block, so any replicate
// and any step can be drawn without touching the others.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

// Innovation stream for one replicate of one run. Step t uses Philox block
// t/2 with counter (t/2 lo, t/2 hi, replicate lo, replicate hi) under key
// (seed lo, seed hi); the block's two 64-bit words become two uniforms in
// (0, 1) with 53-bit resolution, and a Box-Muller transform turns them into
// two standard normals (cos branch for even t, sin branch for odd t).
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t replicate)
      : seed_(seed), replicate_(replicate) {}

  // Standard normal draw at position `step`; pure in (seed, replicate, step).
  double standard_normal(std::uint64_t step) const;

  // Normal(mu, sigma^2) draw at `step`.
  double normal(std::uint64_t step, double mu, double sigma) const {
    return mu + sigma * standard_normal(step);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t replicate() const { return replicate_; }

 private:
  std::uint64_t seed_;
  std::uint64_t replicate_;
};

// Sequential reader over a NormalStream that caches the paired Box-Muller
// value, so iterating steps costs one Philox block per two draws.
class NormalSequence {
 public:
  NormalSequence(std::uint64_t seed, std::uint64_t replicate)
      : stream_(seed, replicate) {}

  double next(double mu, double sigma);

 private:
  NormalStream stream_;
  std::uint64_t step_ = 0;
  double cached_ = 0.0;
};

// Maps a 64-bit word to a double in (0, 1), never 0 or 1.
double to_open_unit(std::uint64_t bits);

}  // namespace flicker
