#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace cpdc {

/// Philox-4x32-10 counter-based generator. A stream is addressed by
/// (seed, stream) and the position within the stream by a 64-bit counter,
/// so trajectories can draw noise independently of thread scheduling and
/// replay exactly from the manifest seed.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  /// Jump directly to an absolute draw position (used for step retries).
  void seek(std::uint64_t counter) {
    counter_ = counter;
    have_ = 0;
  }

  std::uint64_t position() const { return counter_; }

  std::uint32_t next_u32() {
    if (have_ == 0) {
      block_ = philox(counter_++, stream_, key_);
      have_ = 4;
    }
    return block_[4 - have_--];
  }

  /// Uniform on (0,1]; never returns 0 so log() is safe.
  double uniform() {
    std::uint64_t hi = next_u32(), lo = next_u32();
    std::uint64_t u53 = (hi << 21) ^ lo;
    u53 &= (std::uint64_t(1) << 53) - 1;
    return (static_cast<double>(u53) + 1.0) * 0x1p-53;
  }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_normal_) {
      have_normal_ = false;
      return cached_normal_;
    }
    double u1 = uniform(), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double c = std::cos(2.0 * M_PI * u2), s = std::sin(2.0 * M_PI * u2);
    cached_normal_ = r * s;
    have_normal_ = true;
    return r * c;
  }

  static std::array<std::uint32_t, 4> philox(std::uint64_t counter, std::uint64_t stream,
                                             std::array<std::uint32_t, 2> key) {
    std::array<std::uint32_t, 4> x{
        static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32),
        static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    constexpr std::uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
    constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      std::uint64_t p0 = std::uint64_t(m0) * x[0];
      std::uint64_t p1 = std::uint64_t(m1) * x[2];
      std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
      std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
      x = {hi1 ^ x[1] ^ key[0], lo1, hi0 ^ x[3] ^ key[1], lo0};
      key[0] += w0;
      key[1] += w1;
    }
    return x;
  }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_ = 0;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int have_ = 0;
  bool have_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace cpdc
