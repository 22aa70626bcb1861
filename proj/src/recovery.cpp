#include "evcs/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace evcs {

namespace {

void check_stack_args(std::span<const BinaryImage> shadows) {
  if (shadows.empty()) throw std::invalid_argument("stack: need at least one shadow");
  for (const auto& sc : shadows) {
    if (sc.height != shadows[0].height || sc.width != shadows[0].width) {
      throw std::invalid_argument("stack: shadow dimensions disagree");
    }
  }
}

}  // namespace

BinaryImage stack_or(std::span<const BinaryImage> shadows) {
  check_stack_args(shadows);
  BinaryImage out = shadows[0];
  for (std::size_t s = 1; s < shadows.size(); ++s) {
    for (std::size_t p = 0; p < out.size(); ++p) out.bits[p] |= shadows[s].bits[p];
  }
  return out;
}

BinaryImage stack_xor(std::span<const BinaryImage> shadows) {
  check_stack_args(shadows);
  BinaryImage out = shadows[0];
  for (std::size_t s = 1; s < shadows.size(); ++s) {
    for (std::size_t p = 0; p < out.size(); ++p) out.bits[p] ^= shadows[s].bits[p];
  }
  return out;
}

double light_transmission(const BinaryImage& img, const RegionMask& mask) {
  if (img.height != mask.height || img.width != mask.width) {
    throw std::invalid_argument("light_transmission: mask dimensions disagree");
  }
  if (mask.count == 0) throw std::domain_error("light_transmission: empty region");
  std::size_t zeros = 0;
  for (std::size_t p = 0; p < img.size(); ++p) {
    zeros += static_cast<std::size_t>(mask.member[p] && img.bits[p] == 0);
  }
  return static_cast<double>(zeros) / static_cast<double>(mask.count);
}

std::string ContrastReport::to_key_value() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "l0=%.6f\nl1=%.6f\nalpha=%.4f\ncount0=%zu\ncount1=%zu\nse0=%.6f\nse1=%.6f\n",
                l0, l1, alpha, count0, count1, se0, se1);
  return buf;
}

ContrastReport empirical_contrast(const BinaryImage& recovered, const BinaryImage& secret) {
  if (recovered.height != secret.height || recovered.width != secret.width) {
    throw std::invalid_argument("empirical_contrast: dimensions disagree");
  }
  auto [white, black] = regions(secret);
  if (white.count == 0 || black.count == 0) {
    throw std::domain_error("empirical_contrast: secret must contain both colors");
  }
  ContrastReport rep;
  rep.count0 = white.count;
  rep.count1 = black.count;
  rep.l0 = light_transmission(recovered, white);
  rep.l1 = light_transmission(recovered, black);
  rep.alpha = (rep.l0 - rep.l1) / (1.0 + rep.l1);
  rep.se0 = std::sqrt(rep.l0 * (1.0 - rep.l0) / static_cast<double>(rep.count0));
  rep.se1 = std::sqrt(rep.l1 * (1.0 - rep.l1) / static_cast<double>(rep.count1));
  return rep;
}

ShareGroupLayout::ShareGroupLayout(int group_size_, int total_)
    : group_size(group_size_), total(total_) {
  if (group_size < 2) throw std::invalid_argument("layout: group size must be >= 2");
  if (total < 1) throw std::invalid_argument("layout: no shares issued");
}

int ShareGroupLayout::size_of(int group_index) const {
  int lo = group_index * group_size;
  return std::min(group_size, total - lo);
}

PartitionSelection select_by_partition(const ShareGroupLayout& layout,
                                       std::span<const int> parts, PixelRng& rng) {
  if (parts.empty()) throw std::invalid_argument("partition: empty");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 1) throw std::invalid_argument("partition: parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1]) {
      throw std::invalid_argument("partition: parts must be nonincreasing");
    }
    if (parts[i] > layout.group_size) {
      throw std::invalid_argument("partition: part exceeds group capacity");
    }
  }
  const int m = layout.group_count();
  if (static_cast<int>(parts.size()) > m) {
    throw std::invalid_argument("partition: more parts than groups");
  }
  const int last_size = layout.size_of(m - 1);
  int oversized = 0;
  for (int p : parts) oversized += static_cast<int>(p > last_size);
  const int full_groups = (last_size == layout.group_size) ? m : m - 1;
  if (oversized > full_groups) {
    throw std::invalid_argument("partition: part exceeds the last group's capacity");
  }

  // Greedy over nonincreasing parts: every group that still qualifies for a
  // later (smaller) part also qualifies now, so a uniform pick never gets
  // stuck when the partition is feasible.
  std::vector<int> unused(static_cast<std::size_t>(m));
  for (int g = 0; g < m; ++g) unused[static_cast<std::size_t>(g)] = g;
  PartitionSelection sel;
  sel.parts.assign(parts.begin(), parts.end());
  for (int part : parts) {
    std::vector<int> candidates;
    for (int g : unused) {
      if (layout.size_of(g) >= part) candidates.push_back(g);
    }
    int g = candidates[rng.next_below(static_cast<std::uint32_t>(candidates.size()))];
    unused.erase(std::find(unused.begin(), unused.end(), g));

    std::vector<int> offsets(static_cast<std::size_t>(layout.size_of(g)));
    for (std::size_t i = 0; i < offsets.size(); ++i) offsets[i] = static_cast<int>(i);
    for (int i = 0; i < part; ++i) {
      auto j = static_cast<std::size_t>(i) +
               rng.next_below(static_cast<std::uint32_t>(offsets.size() - static_cast<std::size_t>(i)));
      std::swap(offsets[static_cast<std::size_t>(i)], offsets[j]);
      sel.indices.push_back(g * layout.group_size + offsets[static_cast<std::size_t>(i)] + 1);
    }
    sel.occupancy.push_back(part);
  }
  std::sort(sel.indices.begin(), sel.indices.end());
  return sel;
}

}  // namespace evcs
