#pragma once

#include <span>
#include <string>
#include <vector>

#include "evcs/image.hpp"
#include "evcs/rng.hpp"

namespace evcs {

// Pixelwise OR of one or more same-size shadows (stacking recovery).
BinaryImage stack_or(std::span<const BinaryImage> shadows);

// Pixelwise XOR (computational recovery).
BinaryImage stack_xor(std::span<const BinaryImage> shadows);

// Fraction of transparent (0) pixels of img inside the mask.
double light_transmission(const BinaryImage& img, const RegionMask& mask);

struct ContrastReport {
  double l0 = 0.0;  // light transmission over the secret's white region
  double l1 = 0.0;  // ... over the black region
  double alpha = 0.0;
  std::size_t count0 = 0;
  std::size_t count1 = 0;
  double se0 = 0.0;  // binomial standard errors of l0/l1
  double se1 = 0.0;

  std::string to_key_value() const;
};

// alpha = (l0 - l1) / (1 + l1) measured against the secret's regions.
ContrastReport empirical_contrast(const BinaryImage& recovered, const BinaryImage& secret);

// Group structure of an issued share sequence: shares (i-1)*g+1 .. i*g form
// group i; the last group may be partial.
struct ShareGroupLayout {
  int group_size = 0;
  int total = 0;

  ShareGroupLayout(int group_size_, int total_);
  int group_count() const { return (total + group_size - 1) / group_size; }
  int size_of(int group_index) const;  // 0-based group index
};

struct PartitionSelection {
  std::vector<int> parts;      // target partition, nonincreasing
  std::vector<int> indices;    // chosen 1-based share indices, ascending
  std::vector<int> occupancy;  // per chosen group, nonincreasing
};

// Picks share indices whose per-group counts realize the partition. Throws
// std::invalid_argument when the partition is infeasible for the layout.
PartitionSelection select_by_partition(const ShareGroupLayout& layout,
                                       std::span<const int> parts, PixelRng& rng);

}  // namespace evcs
