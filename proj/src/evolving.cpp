#include "evcs/evolving.hpp"

#include <bit>
#include <stdexcept>

#include "evcs/kernels.hpp"

namespace evcs {

namespace detail {

BinaryImage copy_share_step(const std::vector<BinaryImage>& base, QTable& q, int t,
                            const RandomSource& rs) {
  const int k = q.k;
  BinaryImage out(q.height, q.width);
  const std::size_t px_count = out.size();
  for (std::size_t p = 0; p < px_count; ++p) {
    if (t % k == 1) q.mask[p] = 0;
    std::uint64_t used = q.mask[p];
    auto avail = static_cast<std::uint32_t>(k - std::popcount(used));
    std::uint32_t r = rs.stream(p, static_cast<std::uint64_t>(t)).next_below(avail);
    // r-th unused index
    int idx = 0;
    for (;; ++idx) {
      if (!((used >> idx) & 1)) {
        if (r == 0) break;
        --r;
      }
    }
    out.bits[p] = base[static_cast<std::size_t>(idx)].bits[p];
    used |= std::uint64_t{1} << idx;
    if (t % k == 0) used = 0;  // group complete
    q.mask[p] = used;
  }
  return out;
}

}  // namespace detail

KGroupedShares share_kgrouped(const BinaryImage& secret, int k, int n, std::uint64_t seed) {
  if (k < 2 || k > 64) throw std::invalid_argument("share_kgrouped: need 2 <= k <= 64");
  if (n < k) throw std::invalid_argument("share_kgrouped: need n >= k");

  KGroupedShares result;
  result.q = QTable(secret.height, secret.width, k);
  result.shadows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < k; ++i) result.shadows.emplace_back(secret.height, secret.width);

  RandomSource rs(seed);
  const std::size_t px_count = secret.size();
  for (std::size_t p = 0; p < px_count; ++p) {
    PixelRng rng = rs.stream(p, 0);  // kernel draws live in time step 0
    BitVector bits = share_pixel_kk(secret.bits[p], k, rng);
    for (int i = 0; i < k; ++i) result.shadows[static_cast<std::size_t>(i)].bits[p] =
        static_cast<std::uint8_t>(bits[i]);
  }
  for (int t = k + 1; t <= n; ++t) {
    result.shadows.push_back(detail::copy_share_step(result.shadows, result.q, t, rs));
  }
  return result;
}

std::pair<EvolvingDealer, std::vector<BinaryImage>> EvolvingDealer::init(
    const BinaryImage& secret, int k, int n, std::uint64_t seed) {
  KGroupedShares shared = share_kgrouped(secret, k, n, seed);
  EvolvingDealer dealer;
  dealer.k_ = k;
  dealer.n_ = n;
  dealer.next_t_ = n + 1;
  dealer.seed_ = seed;
  dealer.base_.assign(shared.shadows.begin(), shared.shadows.begin() + k);
  dealer.q_ = std::move(shared.q);
  return {std::move(dealer), std::move(shared.shadows)};
}

EvolvingDealer::EvolvingDealer(int k, int n, int next_t, std::uint64_t seed,
                               std::vector<BinaryImage> base_shadows, QTable q)
    : k_(k), n_(n), next_t_(next_t), seed_(seed), base_(std::move(base_shadows)),
      q_(std::move(q)) {
  check_invariants();
}

void EvolvingDealer::check_invariants() const {
  if (k_ < 2 || k_ > 64) throw std::invalid_argument("dealer state: need 2 <= k <= 64");
  if (n_ < k_) throw std::invalid_argument("dealer state: need n >= k");
  if (next_t_ < n_ + 1) throw std::invalid_argument("dealer state: next_t must be > n");
  if (base_.size() != static_cast<std::size_t>(k_)) {
    throw std::invalid_argument("dealer state: expected k base shadows");
  }
  if (q_.k != k_ || q_.height < 1 || q_.width < 1) {
    throw std::invalid_argument("dealer state: bad Q table header");
  }
  for (const auto& sc : base_) {
    if (sc.height != q_.height || sc.width != q_.width) {
      throw std::invalid_argument("dealer state: shadow dimensions disagree");
    }
  }
  const int expected = (next_t_ - 1) % k_;
  const std::uint64_t legal = (k_ == 64) ? ~std::uint64_t{0}
                                         : ((std::uint64_t{1} << k_) - 1);
  for (std::uint64_t m : q_.mask) {
    if ((m & ~legal) != 0) throw std::invalid_argument("dealer state: Q bit out of range");
    if (std::popcount(m) != expected) {
      throw std::invalid_argument("dealer state: Q popcount does not match next_t");
    }
  }
}

BinaryImage EvolvingDealer::extend() {
  RandomSource rs(seed_);
  BinaryImage share = detail::copy_share_step(base_, q_, next_t_, rs);
  ++next_t_;
  return share;
}

}  // namespace evcs
