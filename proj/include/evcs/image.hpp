#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace evcs {

// Binary raster, row-major. 0 = transparent/white, 1 = opaque/black.
struct BinaryImage {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> bits;

  BinaryImage() = default;
  BinaryImage(int h, int w, std::uint8_t fill = 0);

  // Validates dimensions and that every element is 0 or 1.
  static BinaryImage from_bits(int h, int w, std::vector<std::uint8_t> data);

  std::size_t size() const { return bits.size(); }
  std::uint8_t at(int r, int c) const { return bits[static_cast<std::size_t>(r) * width + c]; }
  std::uint8_t& at(int r, int c) { return bits[static_cast<std::size_t>(r) * width + c]; }

  bool operator==(const BinaryImage&) const = default;
};

// Pixel membership flags for one region of a parent image.
struct RegionMask {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> member;
  std::size_t count = 0;  // number of member pixels

  static RegionMask full(int h, int w);
};

// (white region, black region); the two masks partition the pixel set.
std::pair<RegionMask, RegionMask> regions(const BinaryImage& img);

}  // namespace evcs
