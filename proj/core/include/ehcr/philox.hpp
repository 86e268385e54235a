#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace ehcr {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A pure
/// function of (counter, key): any block of any stream can be produced
/// without generating its predecessors.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter generate(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      ctr = single_round(ctr, key);
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static constexpr Counter single_round(const Counter& c, const Key& k) {
    const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

/// Uniform stream for one Monte Carlo sample: keyed by the run seed, with the
/// sample index in the counter. Two 32-bit words make one 53-bit double, so
/// every Philox block yields two uniforms.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t sample_index)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        index_lo_(static_cast<std::uint32_t>(sample_index)),
        index_hi_(static_cast<std::uint32_t>(sample_index >> 32)) {}

  /// Uniform on the open interval (0, 1).
  double uniform() {
    if (cursor_ == 2) refill();
    const std::uint64_t bits =
        (std::uint64_t{block_[2 * cursor_]} << 32) | block_[2 * cursor_ + 1];
    ++cursor_;
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Exponential with the given mean, by inversion.
  double exponential(double mean) { return -mean * std::log(uniform()); }

 private:
  void refill() {
    block_ = Philox4x32::generate({index_lo_, index_hi_, block_counter_++, 0u}, key_);
    cursor_ = 0;
  }

  Philox4x32::Key key_;
  std::uint32_t index_lo_;
  std::uint32_t index_hi_;
  std::uint32_t block_counter_ = 0;
  Philox4x32::Counter block_{};
  int cursor_ = 2;
};

}  // namespace ehcr
