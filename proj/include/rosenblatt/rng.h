#pragma once

// Counter-keyed random streams. Every stochastic routine derives its engine
// from (seed, stream, index) so results do not depend on scheduling.

#include <boost/random/normal_distribution.hpp>

#include <cstdint>
#include <limits>

namespace rosenblatt::rng {

inline constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Mixes a seed with up to two counters into a single 64-bit key.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                           std::uint64_t index = 0) noexcept {
  std::uint64_t s = seed;
  std::uint64_t k = splitmix64(s);
  s = k ^ (stream * 0xd1b54a32d192ed03ULL);
  k = splitmix64(s);
  s = k ^ (index * 0x8cb92ba72f3d8dd7ULL);
  return splitmix64(s);
}

// xoshiro256++ (Blackman & Vigna), seeded through splitmix64.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& w : s_) {
      w = splitmix64(sm);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

// Standard normal variates (Boost's ziggurat; output depends only on the engine).
class StdNormal {
 public:
  explicit StdNormal(std::uint64_t key) : engine_(key) {}

  double operator()() { return dist_(engine_); }

  Xoshiro256pp& engine() noexcept { return engine_; }

 private:
  Xoshiro256pp engine_;
  boost::random::normal_distribution<double> dist_;
};

}  // namespace rosenblatt::rng
