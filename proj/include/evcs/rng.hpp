#pragma once

#include <cstdint>
#include <stdexcept>

namespace evcs {

// splitmix64 finalizer; passes the usual statistical batteries.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// One deterministic draw stream, obtained from RandomSource::stream().
// Value type: copying forks the stream at its current position.
class PixelRng {
 public:
  explicit PixelRng(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // Fair coin.
  int next_bit() { return static_cast<int>(next_u64() >> 63); }

  // Uniform in [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0,n). Single draw; bias is bounded by n/2^64.
  std::uint32_t next_below(std::uint32_t n) {
    if (n == 0) throw std::invalid_argument("next_below: empty range");
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// Counter-based source: every stream is keyed by (master seed, pixel linear
// index, time step), and draws within a stream are counted. Identical keys
// always replay the identical sequence, so per-pixel sharing work can run in
// any order, on any number of threads, with the same output.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t master_seed) : seed_(master_seed) {}

  std::uint64_t seed() const { return seed_; }

  PixelRng stream(std::uint64_t pixel_index, std::uint64_t time_step) const {
    std::uint64_t s = mix64(seed_ ^ 0x6a09e667f3bcc909ULL);
    s = mix64(s ^ (pixel_index * 0xd6e8feb86659fd93ULL));
    s = mix64(s ^ (time_step * 0xa0761d6478bd642fULL));
    return PixelRng(s);
  }

 private:
  std::uint64_t seed_;
};

}  // namespace evcs
