#pragma once

#include <cmath>
#include <cstdint>

namespace sepsim {

/// xoshiro256++ with SplitMix64 seeding and jump-ahead replica streams.
///
/// Hand-rolled instead of <random> on purpose: engine output is portable,
/// but the standard distributions are implementation-defined, and runs must
/// be bit-identical across platforms for the same (seed, replica) pair.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
  }

  /// Stream for one replica: seed the base state, then jump 2^128 steps
  /// per replica index. Streams never overlap for any workload that fits
  /// in a machine.
  static Rng for_replica(std::uint64_t master_seed, std::uint64_t replica) {
    Rng r(master_seed);
    for (std::uint64_t i = 0; i < replica; ++i) r.jump();
    return r;
  }

  std::uint64_t next() {
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

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe as a log argument.
  double uniform01_open0() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  /// Exponential holding time with the given total rate.
  double exponential(double rate) { return -std::log(uniform01_open0()) / rate; }

  /// Uniform integer in [0, n). n must be > 0. Multiply-shift on the top
  /// 32 bits is unbiased enough for event selection and fast; exact
  /// rejection sampling is not needed anywhere accuracy-critical.
  std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(static_cast<std::uint32_t>(next() >> 32)) * n) >> 32);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Advance 2^128 steps (xoshiro256++ jump polynomial).
  void jump() {
    static constexpr std::uint64_t kJump[] = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL,
                                              0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
    std::uint64_t t[4] = {0, 0, 0, 0};
    for (std::uint64_t word : kJump) {
      for (int b = 0; b < 64; ++b) {
        if (word & (1ULL << b)) {
          t[0] ^= s_[0];
          t[1] ^= s_[1];
          t[2] ^= s_[2];
          t[3] ^= s_[3];
        }
        next();
      }
    }
    s_[0] = t[0];
    s_[1] = t[1];
    s_[2] = t[2];
    s_[3] = t[3];
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t s_[4];
};

}  // namespace sepsim
