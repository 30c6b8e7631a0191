#ifndef HETDP_RNG_HPP
#define HETDP_RNG_HPP

#include <cmath>
#include <cstdint>

namespace hetdp {

// Splittable deterministic PRNG (splitmix64 core). A (seed, stream_id) pair
// names an independent stream, and replaying the pair replays the sequence
// bit for bit on every platform. Standard-library distributions are avoided
// on purpose: their output is implementation-defined, this is not.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id) {
    state_ = mix(seed + kGamma);
    state_ = mix(state_ ^ mix(stream_id + 0xbf58476d1ce4e5b9ull));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  // [0, 1)
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // (0, 1), endpoints excluded
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  // standard normal via Box-Muller (cosine branch)
  double normal() {
    const double u1 = uniform_open();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
};

}  // namespace hetdp

#endif  // HETDP_RNG_HPP
