#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "evcs/image.hpp"
#include "evcs/rng.hpp"

namespace evcs {

// Average light transmission of the contrast-enhanced (2,inf) scheme.
inline const double kGrgLambda = M_SQRT2 - 1.0;
// lambda/(1-lambda) simplified analytically: (sqrt(2)-1)/(2-sqrt(2)) = 1/sqrt(2).
inline const double kGrgLambdaEven = M_SQRT1_2;

// The two 6x4 basis matrices behind the enhanced (3,inf) scheme. A white
// pixel takes a uniformly chosen row of rows0, a black pixel a row of rows1.
struct BasisMatrices {
  static constexpr std::array<std::array<std::uint8_t, 4>, 6> rows0{{
      {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}}};
  static constexpr std::array<std::array<std::uint8_t, 4>, 6> rows1{{
      {1, 1, 1, 1}, {1, 1, 1, 1}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}};
};

// Dealer for the enhanced (2,inf) scheme. The secret stays in the state:
// every extension branches on it. Shadow groups are the pairs
// (SC_1,SC_2), (SC_3,SC_4), ...
class Better2Dealer {
 public:
  static std::pair<Better2Dealer, BinaryImage> init(const BinaryImage& secret,
                                                    std::uint64_t seed);

  Better2Dealer(BinaryImage secret, std::vector<std::uint8_t> p_table, int next_t,
                std::uint64_t seed);

  BinaryImage extend();

  int next_t() const { return next_t_; }
  std::uint64_t seed() const { return seed_; }
  const BinaryImage& secret() const { return secret_; }
  const std::vector<std::uint8_t>& p_table() const { return p_table_; }

 private:
  Better2Dealer() = default;

  BinaryImage secret_;
  std::vector<std::uint8_t> p_table_;  // latest odd-index value at black pixels, SC_1 at white
  int next_t_ = 0;
  std::uint64_t seed_ = 0;
};

// Dealer for the enhanced (3,inf) scheme: the first four shadows realize a
// basis-matrix row per pixel; later groups of four copy them through a
// per-pixel index pool, exactly like the evolving dealer but with fixed
// group size 4.
class Better3Dealer {
 public:
  static constexpr int kGroupSize = 4;

  static std::pair<Better3Dealer, std::vector<BinaryImage>> init(const BinaryImage& secret,
                                                                 std::uint64_t seed);

  Better3Dealer(std::vector<BinaryImage> base_shadows, std::vector<std::uint8_t> p_mask,
                int next_t, std::uint64_t seed);

  BinaryImage extend();

  int next_t() const { return next_t_; }
  std::uint64_t seed() const { return seed_; }
  int height() const { return base_[0].height; }
  int width() const { return base_[0].width; }
  const std::vector<BinaryImage>& base_shadows() const { return base_; }
  const std::vector<std::uint8_t>& p_mask() const { return p_mask_; }

 private:
  Better3Dealer() = default;
  void check_invariants() const;

  std::vector<BinaryImage> base_;       // SC_1..SC_4
  std::vector<std::uint8_t> p_mask_;    // 4-bit mask per pixel
  int next_t_ = 0;
  std::uint64_t seed_ = 0;
};

}  // namespace evcs
