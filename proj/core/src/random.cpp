#include "flicker/random.hpp"

#include <cmath>
#include <numbers>

namespace flicker {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline std::uint64_t join(std::uint32_t hi, std::uint32_t lo) {
  return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

struct Pair {
  double cos_branch;
  double sin_branch;
};

Pair box_muller(std::uint64_t seed, std::uint64_t replicate, std::uint64_t block) {
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block),
                                static_cast<std::uint32_t>(block >> 32),
                                static_cast<std::uint32_t>(replicate),
                                static_cast<std::uint32_t>(replicate >> 32)};
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed),
                            static_cast<std::uint32_t>(seed >> 32)};
  const auto out = Philox4x32::block(ctr, key);
  const double u1 = to_open_unit(join(out[0], out[1]));
  const double u2 = to_open_unit(join(out[2], out[3]));
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

double to_open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

double NormalStream::standard_normal(std::uint64_t step) const {
  const Pair p = box_muller(seed_, replicate_, step / 2);
  return step % 2 == 0 ? p.cos_branch : p.sin_branch;
}

double NormalSequence::next(double mu, double sigma) {
  double z;
  if (step_ % 2 == 0) {
    const Pair p = box_muller(stream_.seed(), stream_.replicate(), step_ / 2);
    z = p.cos_branch;
    cached_ = p.sin_branch;
  } else {
    z = cached_;
  }
  ++step_;
  return mu + sigma * z;
}

}  // namespace flicker
