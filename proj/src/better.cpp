#include "evcs/better.hpp"

#include <bit>
#include <stdexcept>

#include "evcs/kernels.hpp"

namespace evcs {

std::pair<Better2Dealer, BinaryImage> Better2Dealer::init(const BinaryImage& secret,
                                                          std::uint64_t seed) {
  Better2Dealer dealer;
  dealer.secret_ = secret;
  dealer.seed_ = seed;
  dealer.next_t_ = 2;
  dealer.p_table_.resize(secret.size());

  RandomSource rs(seed);
  BinaryImage sc1(secret.height, secret.width);
  for (std::size_t p = 0; p < secret.size(); ++p) {
    PixelRng rng = rs.stream(p, 1);
    sc1.bits[p] = static_cast<std::uint8_t>(random_bit(kGrgLambda, rng));
    dealer.p_table_[p] = sc1.bits[p];
  }
  return {std::move(dealer), std::move(sc1)};
}

Better2Dealer::Better2Dealer(BinaryImage secret, std::vector<std::uint8_t> p_table,
                             int next_t, std::uint64_t seed)
    : secret_(std::move(secret)), p_table_(std::move(p_table)), next_t_(next_t),
      seed_(seed) {
  if (next_t_ < 2) throw std::invalid_argument("better2 state: next_t must be >= 2");
  if (p_table_.size() != secret_.size()) {
    throw std::invalid_argument("better2 state: P table size mismatch");
  }
  for (std::uint8_t v : p_table_) {
    if (v > 1) throw std::invalid_argument("better2 state: P entries must be 0 or 1");
  }
}

BinaryImage Better2Dealer::extend() {
  const int t = next_t_;
  RandomSource rs(seed_);
  BinaryImage out(secret_.height, secret_.width);
  for (std::size_t p = 0; p < secret_.size(); ++p) {
    if (secret_.bits[p] == 0) {
      out.bits[p] = p_table_[p];  // white pixels replicate SC_1 forever
      continue;
    }
    if (t % 2 == 1) {
      PixelRng rng = rs.stream(p, static_cast<std::uint64_t>(t));
      auto v = static_cast<std::uint8_t>(random_bit(kGrgLambda, rng));
      out.bits[p] = v;
      p_table_[p] = v;
    } else if (p_table_[p] == 0) {
      out.bits[p] = 1;
    } else {
      PixelRng rng = rs.stream(p, static_cast<std::uint64_t>(t));
      out.bits[p] = static_cast<std::uint8_t>(random_bit(kGrgLambdaEven, rng));
    }
  }
  ++next_t_;
  return out;
}

std::pair<Better3Dealer, std::vector<BinaryImage>> Better3Dealer::init(
    const BinaryImage& secret, std::uint64_t seed) {
  Better3Dealer dealer;
  dealer.seed_ = seed;
  dealer.next_t_ = kGroupSize + 1;
  dealer.p_mask_.assign(secret.size(), 0);
  dealer.base_.reserve(kGroupSize);
  for (int i = 0; i < kGroupSize; ++i) dealer.base_.emplace_back(secret.height, secret.width);

  RandomSource rs(seed);
  for (std::size_t p = 0; p < secret.size(); ++p) {
    PixelRng rng = rs.stream(p, 1);
    std::uint32_t row = rng.next_below(6);
    const auto& rows = secret.bits[p] ? BasisMatrices::rows1 : BasisMatrices::rows0;
    for (int i = 0; i < kGroupSize; ++i) {
      dealer.base_[static_cast<std::size_t>(i)].bits[p] = rows[row][static_cast<std::size_t>(i)];
    }
  }
  std::vector<BinaryImage> shadows = dealer.base_;
  return {std::move(dealer), std::move(shadows)};
}

Better3Dealer::Better3Dealer(std::vector<BinaryImage> base_shadows,
                             std::vector<std::uint8_t> p_mask, int next_t,
                             std::uint64_t seed)
    : base_(std::move(base_shadows)), p_mask_(std::move(p_mask)), next_t_(next_t),
      seed_(seed) {
  check_invariants();
}

void Better3Dealer::check_invariants() const {
  if (base_.size() != kGroupSize) {
    throw std::invalid_argument("better3 state: expected 4 base shadows");
  }
  if (next_t_ < kGroupSize + 1) {
    throw std::invalid_argument("better3 state: next_t must be >= 5");
  }
  for (const auto& sc : base_) {
    if (sc.height != base_[0].height || sc.width != base_[0].width) {
      throw std::invalid_argument("better3 state: shadow dimensions disagree");
    }
  }
  if (p_mask_.size() != base_[0].size()) {
    throw std::invalid_argument("better3 state: P table size mismatch");
  }
  const int expected = (next_t_ - 1) % kGroupSize;
  for (std::uint8_t m : p_mask_) {
    if (m > 0x0f) throw std::invalid_argument("better3 state: P bit out of range");
    if (std::popcount(m) != expected) {
      throw std::invalid_argument("better3 state: P popcount does not match next_t");
    }
  }
}

BinaryImage Better3Dealer::extend() {
  const int t = next_t_;
  RandomSource rs(seed_);
  BinaryImage out(base_[0].height, base_[0].width);
  for (std::size_t p = 0; p < out.size(); ++p) {
    if (t % kGroupSize == 1) p_mask_[p] = 0;
    std::uint8_t used = p_mask_[p];
    auto avail = static_cast<std::uint32_t>(kGroupSize - std::popcount(used));
    std::uint32_t r = rs.stream(p, static_cast<std::uint64_t>(t)).next_below(avail);
    int idx = 0;
    for (;; ++idx) {
      if (!((used >> idx) & 1)) {
        if (r == 0) break;
        --r;
      }
    }
    out.bits[p] = base_[static_cast<std::size_t>(idx)].bits[p];
    used |= static_cast<std::uint8_t>(1u << idx);
    if (t % kGroupSize == 0) used = 0;
    p_mask_[p] = used;
  }
  ++next_t_;
  return out;
}

}  // namespace evcs
