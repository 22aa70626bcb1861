#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "evcs/rational.hpp"
#include "evcs/rng.hpp"

namespace evcs {

// Up to 64 bits, packed. Bit i is the (i+1)-th share bit of one pixel.
class BitVector {
 public:
  BitVector() = default;

  void push_back(int bit) {
    if (size_ >= 64) throw std::length_error("BitVector: capacity is 64");
    if (bit) bits_ |= std::uint64_t{1} << size_;
    ++size_;
  }

  int size() const { return size_; }
  int operator[](int i) const { return static_cast<int>((bits_ >> i) & 1); }
  std::uint64_t mask() const { return bits_; }

  int xor_all() const { return std::popcount(bits_) & 1; }
  int zero_count() const { return size_ - std::popcount(bits_); }

 private:
  std::uint64_t bits_ = 0;
  int size_ = 0;
};

// The (s,k,k) kernel: k-1 fair coins, then a closing bit so the XOR of all
// k bits equals the secret bit. Consumes exactly k-1 draws.
template <class Rng>
BitVector share_pixel_kk(int secret_bit, int k, Rng& rng) {
  if (k < 2 || k > 64) throw std::invalid_argument("share_pixel_kk: need 2 <= k <= 64");
  if (secret_bit != 0 && secret_bit != 1) {
    throw std::invalid_argument("share_pixel_kk: secret bit must be 0 or 1");
  }
  BitVector out;
  int acc = secret_bit;
  for (int i = 0; i < k - 1; ++i) {
    int b = rng.next_bit();
    acc ^= b;
    out.push_back(b);
  }
  out.push_back(acc);
  return out;
}

// Generalized random grid bit: 0 with probability lambda, else 1.
template <class Rng>
int random_bit(double lambda, Rng& rng) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("random_bit: lambda must lie in (0,1)");
  }
  return rng.next_unit() < lambda ? 0 : 1;
}

// Single-point light transmission (l0, l1) of OR-stacking t of the k kernel
// bits: 1/2^t while t < k; at t = k the white side is 1/2^(k-1) and the
// black side drops to 0.
std::pair<Rational, Rational> stack_transmission_kk(int k, int t);

}  // namespace evcs
