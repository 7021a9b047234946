#pragma once

#include <cstdint>

namespace ivx {

// Deterministic uniform stream built on SplitMix64 (an additive counter with
// a murmur-style output finalizer). Every consumer draws exactly one 64-bit
// state per uniform, so a replication's randomness depends only on its own
// key, never on scheduling or worker count.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(fmix64(seed)) {}

  // Stream for one Monte Carlo replication. `tag` separates purposes that
  // share a user seed (simulation, calibration, power, jitter) so their
  // streams are mutually independent.
  static RandomStream derive(std::uint64_t seed, std::uint64_t tag,
                             std::uint64_t n, std::uint64_t rep) {
    std::uint64_t key = fmix64(rep);
    key = fmix64(key ^ n);
    key = fmix64(key ^ tag);
    key = fmix64(key ^ seed);
    RandomStream s(0);
    s.state_ = key;
    return s;
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return fmix64(state_);
  }

  // Strictly inside (0,1): ((x >> 11) + 1/2) / 2^53.
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double operator()() { return next_uniform(); }

 private:
  static std::uint64_t fmix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xFF51AFD7ED558CCDULL;
    z ^= z >> 33;
    z *= 0xC4CEB9FE1A85EC53ULL;
    z ^= z >> 33;
    return z;
  }

  std::uint64_t state_;
};

// Purpose tags for RandomStream::derive.
namespace stream_tag {
inline constexpr std::uint64_t simulation = 1;
inline constexpr std::uint64_t calibration = 2;
inline constexpr std::uint64_t power = 3;
inline constexpr std::uint64_t size_check = 4;
inline constexpr std::uint64_t jitter = 5;
}  // namespace stream_tag

}  // namespace ivx
