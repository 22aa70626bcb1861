#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "evcs/image.hpp"
#include "evcs/rng.hpp"

namespace evcs {

// Per-pixel bookkeeping of kernel indices already copied into the current
// share group. Bit i set means index i+1 of [k] is used. Normalized so that
// popcount == (next_t - 1) mod k at every pixel: a completed group clears
// its mask immediately instead of waiting for the next group boundary.
struct QTable {
  int height = 0;
  int width = 0;
  int k = 0;
  std::vector<std::uint64_t> mask;

  QTable() = default;
  QTable(int h, int w, int k_) : height(h), width(w), k(k_) {
    mask.assign(static_cast<std::size_t>(h) * w, 0);
  }
};

struct KGroupedShares {
  std::vector<BinaryImage> shadows;
  QTable q;
};

// k-grouped (k,n) sharing: per pixel, the first k share bits come from the
// (s,k,k) kernel; bits k+1..n copy kernel bits through the group-index pool.
KGroupedShares share_kgrouped(const BinaryImage& secret, int k, int n, std::uint64_t seed);

// Resumable dealer for the evolving k-threshold scheme. Only the k base
// shadows are retained; extensions copy from them, so previously issued
// shadows can never change.
class EvolvingDealer {
 public:
  static std::pair<EvolvingDealer, std::vector<BinaryImage>> init(const BinaryImage& secret,
                                                                  int k, int n,
                                                                  std::uint64_t seed);

  // Restores a persisted state; throws std::invalid_argument when any state
  // invariant is violated.
  EvolvingDealer(int k, int n, int next_t, std::uint64_t seed,
                 std::vector<BinaryImage> base_shadows, QTable q);

  // Generates the shadow for participant next_t and advances the state.
  BinaryImage extend();

  int k() const { return k_; }
  int n() const { return n_; }
  int next_t() const { return next_t_; }
  std::uint64_t seed() const { return seed_; }
  int height() const { return q_.height; }
  int width() const { return q_.width; }
  const std::vector<BinaryImage>& base_shadows() const { return base_; }
  const QTable& q_table() const { return q_; }

 private:
  EvolvingDealer() = default;
  void check_invariants() const;

  int k_ = 0;
  int n_ = 0;
  int next_t_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<BinaryImage> base_;  // SC_1..SC_k
  QTable q_;
};

namespace detail {
// Shared body of the first-phase inner loop and the per-participant extension:
// produces share t (t > k) by copying an unused kernel index per pixel.
BinaryImage copy_share_step(const std::vector<BinaryImage>& base, QTable& q, int t,
                            const RandomSource& rs);
}  // namespace detail

}  // namespace evcs
