#include "evcs/image.hpp"

#include <stdexcept>

namespace evcs {

namespace {

void check_dims(int h, int w) {
  if (h < 1 || w < 1) throw std::invalid_argument("BinaryImage: dimensions must be >= 1");
  if (static_cast<long long>(h) * w > (1LL << 28)) {
    throw std::invalid_argument("BinaryImage: raster too large");
  }
}

}  // namespace

BinaryImage::BinaryImage(int h, int w, std::uint8_t fill) : height(h), width(w) {
  check_dims(h, w);
  if (fill > 1) throw std::invalid_argument("BinaryImage: fill must be 0 or 1");
  bits.assign(static_cast<std::size_t>(h) * w, fill);
}

BinaryImage BinaryImage::from_bits(int h, int w, std::vector<std::uint8_t> data) {
  check_dims(h, w);
  if (data.size() != static_cast<std::size_t>(h) * w) {
    throw std::invalid_argument("BinaryImage: bit count does not match dimensions");
  }
  for (std::uint8_t b : data) {
    if (b > 1) throw std::invalid_argument("BinaryImage: elements must be 0 or 1");
  }
  BinaryImage img;
  img.height = h;
  img.width = w;
  img.bits = std::move(data);
  return img;
}

RegionMask RegionMask::full(int h, int w) {
  check_dims(h, w);
  RegionMask m;
  m.height = h;
  m.width = w;
  m.member.assign(static_cast<std::size_t>(h) * w, 1);
  m.count = m.member.size();
  return m;
}

std::pair<RegionMask, RegionMask> regions(const BinaryImage& img) {
  RegionMask white, black;
  white.height = black.height = img.height;
  white.width = black.width = img.width;
  white.member.resize(img.size());
  black.member.resize(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) {
    white.member[i] = static_cast<std::uint8_t>(img.bits[i] == 0);
    black.member[i] = static_cast<std::uint8_t>(img.bits[i] == 1);
    white.count += white.member[i];
    black.count += black.member[i];
  }
  return {std::move(white), std::move(black)};
}

}  // namespace evcs
