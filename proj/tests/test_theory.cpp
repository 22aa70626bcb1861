#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "evcs/rng.hpp"
#include "evcs/theory.hpp"

using namespace evcs;
using namespace evcs::theory;

namespace {

std::vector<std::uint32_t> subsets_of(int k, int p) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << k); ++m) {
    if (std::popcount(m) == p) out.push_back(m);
  }
  return out;
}

// Exact distribution of the number of distinct indices over every equally
// likely per-group subset choice. Never touches the matrix-counting route.
std::map<int, Rational> pr_distinct_brute(const Partition& parts, int k) {
  std::vector<std::vector<std::uint32_t>> options;
  for (int p : parts) options.push_back(subsets_of(k, p));
  std::map<int, long long> counts;
  long long total = 0;
  std::vector<std::size_t> idx(options.size(), 0);
  for (;;) {
    std::uint32_t uni = 0;
    for (std::size_t g = 0; g < options.size(); ++g) uni |= options[g][idx[g]];
    ++counts[std::popcount(uni)];
    ++total;
    std::size_t g = 0;
    while (g < options.size() && ++idx[g] == options[g].size()) idx[g++] = 0;
    if (g == options.size()) break;
  }
  std::map<int, Rational> probs;
  for (auto [d, c] : counts) probs.emplace(d, Rational(c, total));
  return probs;
}

// Exact light transmissions of a partition-selected stack, by enumerating
// the 2^(k-1) kernel strings and every subset choice; multiset semantics
// (the same index picked in two groups contributes twice to an XOR).
struct BruteLight {
  Rational l0, l1;
};

BruteLight stack_light_brute(const Partition& parts, int k, bool use_xor) {
  std::vector<std::vector<std::uint32_t>> options;
  for (int p : parts) options.push_back(subsets_of(k, p));
  Rational l[2];
  for (int s : {0, 1}) {
    long long transparent = 0, total = 0;
    for (std::uint32_t coins = 0; coins < (1u << (k - 1)); ++coins) {
      // kernel string: k-1 coins plus the closing parity bit
      std::uint32_t ones = coins;
      if ((std::popcount(coins) & 1) != s) ones |= 1u << (k - 1);
      std::vector<std::size_t> idx(options.size(), 0);
      for (;;) {
        int acc = 0;
        for (std::size_t g = 0; g < options.size(); ++g) {
          std::uint32_t hit = options[g][idx[g]] & ones;
          acc = use_xor ? acc ^ (std::popcount(hit) & 1) : acc | (hit != 0 ? 1 : 0);
        }
        transparent += acc == 0;
        ++total;
        std::size_t g = 0;
        while (g < options.size() && ++idx[g] == options[g].size()) idx[g++] = 0;
        if (g == options.size()) break;
      }
    }
    l[s] = Rational(transparent, total);
  }
  return {l[0], l[1]};
}

Rational alpha_brute(const Partition& parts, int k, bool use_xor) {
  BruteLight bl = stack_light_brute(parts, k, use_xor);
  return (bl.l0 - bl.l1) / (Rational(1) + bl.l1);
}

// Inclusion-exclusion count of partition-based binary matrices with fixed
// last row; the production code uses the coverage recursion instead.
BigInt count_matrices_incl_excl(const Partition& parts, int d) {
  const int f_ones = parts.back();
  BigInt total = 0;
  for (int j = 0; j <= d - f_ones; ++j) {
    BigInt ways = binomial(d - f_ones, j);
    for (std::size_t r = 0; r + 1 < parts.size(); ++r) ways *= binomial(d - j, parts[r]);
    total += (j % 2 == 0) ? ways : -ways;
  }
  return total;
}

// Fully explicit enumeration with a concrete F bit pattern.
BigInt count_matrices_brute(const Partition& parts, int d, std::uint32_t f_mask) {
  std::vector<std::vector<std::uint32_t>> rows;
  for (std::size_t r = 0; r + 1 < parts.size(); ++r) {
    rows.push_back(subsets_of(d, parts[r]));
    if (rows.back().empty()) return 0;  // a row's weight exceeds d
  }
  BigInt count = 0;
  std::vector<std::size_t> idx(rows.size(), 0);
  const std::uint32_t all = (d == 32) ? ~0u : (1u << d) - 1;
  for (;;) {
    std::uint32_t covered = f_mask;
    for (std::size_t r = 0; r < rows.size(); ++r) covered |= rows[r][idx[r]];
    count += covered == all;
    if (rows.empty()) break;
    std::size_t r = 0;
    while (r < rows.size() && ++idx[r] == rows[r].size()) idx[r++] = 0;
    if (r == rows.size()) break;
  }
  return count;
}

}  // namespace

TEST_CASE("valid_partitions: worked example and edges") {
  // t=3 with k=4 over 3 groups, last of size 2
  auto classes = valid_partitions(3, 4, 3, 2);
  std::set<Partition> got(classes.begin(), classes.end());
  CHECK(got == std::set<Partition>{{3}, {2, 1}, {1, 1, 1}});

  // raw vector count behind those classes is 9
  int raw = 0;
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; b <= 4; ++b) {
      for (int c = 0; c <= 2; ++c) {
        raw += (a + b + c == 3);
      }
    }
  }
  CHECK(raw == 9);

  auto big = valid_partitions(3, 3, 10, 3);
  CHECK(std::find(big.begin(), big.end(), Partition{1, 1, 1}) != big.end());

  CHECK(valid_partitions(1, 2, 1, 1) == std::vector<Partition>{{1}});
  CHECK(valid_partitions(8, 3, 2, 2).empty());  // t > k(m-1)+u

  // [3] is not realizable when every slot is capped below 3
  auto capped = valid_partitions(3, 3, 1, 2);
  CHECK(capped.empty());
}

TEST_CASE("count_matrices: pinned examples") {
  CHECK(count_matrices({1, 1}, 2, 2) == 1);
  CHECK(count_matrices({1, 1}, 1, 2) == 1);
  CHECK(count_matrices({2}, 2, 2) == 1);
  CHECK(count_matrices({2, 1}, 3, 3) == 1);
  CHECK(count_matrices({3, 1}, 3, 4) == 1);
  CHECK(count_matrices({3, 1}, 2, 4) == 0);  // a weight-3 row cannot fit in 2 columns
  CHECK(count_matrices({1, 1}, 3, 4) == 0);  // d exceeds the total weight
}

TEST_CASE("count_matrices: agrees with inclusion-exclusion and brute force") {
  for (int k = 2; k <= 5; ++k) {
    for (int m = 1; m <= 3; ++m) {
      for (int t = 1; t <= std::min(3 * k, 9); ++t) {
        for (const Partition& mu : valid_partitions(t, k, m, k)) {
          for (int d = 1; d <= k; ++d) {
            BigInt dp = count_matrices(mu, d, k);
            CHECK(dp == count_matrices_incl_excl(mu, d));
            // canonical F (leftmost ones) and the mirrored placement agree
            const int f = mu.back();
            std::uint32_t left = (1u << f) - 1;
            std::uint32_t right = left << (d - f);
            BigInt brute_left = count_matrices_brute(mu, d, left);
            CHECK(dp == brute_left);
            CHECK(brute_left == count_matrices_brute(mu, d, right));
          }
        }
      }
    }
  }
}

TEST_CASE("pr_distinct: pinned values") {
  auto p22 = pr_distinct({1, 1}, 2);
  CHECK(p22.at(1) == Rational(1, 2));
  CHECK(p22.at(2) == Rational(1, 2));

  auto pk = pr_distinct({4}, 4);
  CHECK(pk.size() == 1);
  CHECK(pk.at(4) == Rational(1));

  auto p13 = pr_distinct({1, 1}, 3);
  CHECK(p13.at(1) == Rational(1, 3));
  CHECK(p13.at(2) == Rational(2, 3));
}

TEST_CASE("pr_distinct: exact brute-force equivalence and normalization") {
  for (int k = 2; k <= 5; ++k) {
    for (int m = 1; m <= 3; ++m) {
      for (int t = 1; t <= std::min(2 * k, 8); ++t) {
        for (const Partition& mu : valid_partitions(t, k, m, k)) {
          auto probs = pr_distinct(mu, k);
          auto brute = pr_distinct_brute(mu, k);
          CHECK(probs == brute);
          Rational sum(0);
          for (const auto& [d, pr] : probs) sum += pr;
          CHECK(sum == Rational(1));
        }
      }
    }
  }
}

TEST_CASE("pr_distinct: sums to one across the k <= 6 grid") {
  for (int k = 2; k <= 6; ++k) {
    for (int m = 1; m <= 6; ++m) {
      for (int t = 1; t <= std::min(k * m, 12); ++t) {
        for (const Partition& mu : valid_partitions(t, k, m, k)) {
          Rational sum(0);
          for (const auto& [d, pr] : pr_distinct(mu, k)) sum += pr;
          CHECK(sum == Rational(1));
        }
      }
    }
  }
}

TEST_CASE("pr_distinct: arrangement invariance") {
  // The designated last row is a computational device; any arrangement of
  // the class gives the same distribution.
  CHECK(pr_distinct({2, 1}, 3) == pr_distinct({1, 2}, 3));
  CHECK(pr_distinct({3, 1, 2}, 4) == pr_distinct({1, 2, 3}, 4));
  CHECK(pr_distinct({2, 0, 1}, 3) == pr_distinct({2, 1}, 3));
}

namespace {

// Two-stage model of an incomplete last group of size u < k: the group's
// members are a uniform u-subset of the kernel indices, and the selection
// then draws parts.back() of those members. Exact enumeration.
struct TwoStage {
  std::map<int, Rational> distinct;
  Rational or_l0, or_l1, xor_l0, xor_l1;
};

TwoStage two_stage_brute(const Partition& parts, int k, int u) {
  std::vector<std::vector<std::uint32_t>> options;
  for (std::size_t r = 0; r + 1 < parts.size(); ++r) options.push_back(subsets_of(k, parts[r]));

  std::map<int, long long> distinct_counts;
  long long total = 0;
  // transparent[mode][s]
  long long transparent[2][2] = {{0, 0}, {0, 0}};
  long long light_total = 0;

  for (std::uint32_t group_mask : subsets_of(k, u)) {
    std::vector<int> members;
    for (int i = 0; i < k; ++i) {
      if ((group_mask >> i) & 1) members.push_back(i);
    }
    for (std::uint32_t pick : subsets_of(u, parts.back())) {
      std::uint32_t last_mask = 0;
      for (int i = 0; i < u; ++i) {
        if ((pick >> i) & 1) last_mask |= 1u << members[static_cast<std::size_t>(i)];
      }
      std::vector<std::size_t> idx(options.size(), 0);
      for (;;) {
        std::uint32_t masks[8];
        std::size_t m = 0;
        for (; m < options.size(); ++m) masks[m] = options[m][idx[m]];
        masks[m++] = last_mask;

        std::uint32_t uni = 0;
        for (std::size_t g = 0; g < m; ++g) uni |= masks[g];
        ++distinct_counts[std::popcount(uni)];
        ++total;

        for (int s : {0, 1}) {
          for (std::uint32_t coins = 0; coins < (1u << (k - 1)); ++coins) {
            std::uint32_t ones = coins;
            if ((std::popcount(coins) & 1) != s) ones |= 1u << (k - 1);
            int acc_or = 0, acc_xor = 0;
            for (std::size_t g = 0; g < m; ++g) {
              std::uint32_t hit = masks[g] & ones;
              acc_or |= hit != 0 ? 1 : 0;
              acc_xor ^= std::popcount(hit) & 1;
            }
            transparent[0][s] += acc_or == 0;
            transparent[1][s] += acc_xor == 0;
            if (s == 0) ++light_total;
          }
        }

        if (options.empty()) break;
        std::size_t g = 0;
        while (g < options.size() && ++idx[g] == options[g].size()) idx[g++] = 0;
        if (g == options.size()) break;
      }
    }
  }

  TwoStage out;
  for (auto [d, c] : distinct_counts) out.distinct.emplace(d, Rational(c, total));
  out.or_l0 = Rational(transparent[0][0], light_total);
  out.or_l1 = Rational(transparent[0][1], light_total);
  out.xor_l0 = Rational(transparent[1][0], light_total);
  out.xor_l1 = Rational(transparent[1][1], light_total);
  return out;
}

}  // namespace

TEST_CASE("partial last group: the closed forms hold for u < k") {
  // (parts with the last entry sitting in the incomplete group, k, u)
  struct Case {
    Partition parts;
    int k, u;
  };
  for (const Case& tc : std::vector<Case>{{{2, 1}, 3, 1}, {{2, 1}, 3, 2}, {{1, 1, 1}, 3, 1},
                                          {{2, 2}, 4, 2}, {{2, 2}, 4, 3}, {{1, 2}, 3, 2},
                                          {{3, 2}, 5, 2}, {{3, 2}, 5, 4}}) {
    TwoStage ts = two_stage_brute(tc.parts, tc.k, tc.u);
    CHECK(pr_distinct(tc.parts, tc.k) == ts.distinct);
    Rational alpha_or = (ts.or_l0 - ts.or_l1) / (Rational(1) + ts.or_l1);
    CHECK(alpha_or_partition(tc.parts, tc.k) == alpha_or);
    int t = 0;
    for (int p : tc.parts) t += p;
    if (t == tc.k) {
      Rational alpha_xor = (ts.xor_l0 - ts.xor_l1) / (Rational(1) + ts.xor_l1);
      CHECK(alpha_xor_partition(tc.parts, tc.k) == alpha_xor);
    }
  }
}

TEST_CASE("pr_distinct: Monte-Carlo agreement on a small grid") {
  const int kSamples = 200000;
  RandomSource rs(1234);
  int stream = 0;
  for (auto [mu, k] : std::vector<std::pair<Partition, int>>{
           {{1, 1}, 2}, {{2, 1}, 3}, {{2, 2}, 4}, {{1, 1, 1}, 4}}) {
    auto probs = pr_distinct(mu, k);
    std::map<int, int> counts;
    for (int i = 0; i < kSamples; ++i) {
      PixelRng rng = rs.stream(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(stream));
      std::uint32_t uni = 0;
      for (int p : mu) {
        std::uint32_t chosen = 0;
        for (int j = 0; j < p; ++j) {
          std::uint32_t r = rng.next_below(static_cast<std::uint32_t>(k - j));
          int pos = 0;
          for (;; ++pos) {
            if (!((chosen >> pos) & 1) && r-- == 0) break;
          }
          chosen |= 1u << pos;
        }
        uni |= chosen;
      }
      ++counts[std::popcount(uni)];
    }
    ++stream;
    for (const auto& [d, pr] : probs) {
      double p = pr.to_double();
      double freq = static_cast<double>(counts[d]) / kSamples;
      double sigma = std::sqrt(p * (1 - p) / kSamples);
      CHECK(std::fabs(freq - p) <= 3.0 * sigma + 1e-9);
    }
  }
}

TEST_CASE("alpha_or_partition: pinned table values") {
  CHECK(alpha_or_partition({2}, 2) == Rational(1, 2));
  CHECK(alpha_or_partition({1, 1}, 2) == Rational(1, 5));
  CHECK(alpha_or_partition({1, 1, 1, 1}, 4) == Rational(1, 99));
  // sub-threshold selections carry no signal
  CHECK(alpha_or_partition({1, 1}, 3) == Rational(0));
  CHECK(alpha_or_partition({2}, 4) == Rational(0));

  // full (3,inf) and (4,inf) OR rows
  CHECK(alpha_or_partition({3}, 3) == Rational(1, 4));
  CHECK(alpha_or_partition({2, 1}, 3) == Rational(1, 14));
  CHECK(alpha_or_partition({1, 1, 1}, 3) == Rational(1, 22));
  CHECK(alpha_or_partition({4}, 4) == Rational(1, 8));
  CHECK(alpha_or_partition({3, 1}, 4) == Rational(1, 35));
  CHECK(alpha_or_partition({2, 2}, 4) == Rational(1, 54));
  CHECK(alpha_or_partition({2, 1, 1}, 4) == Rational(1, 73));
}

TEST_CASE("alpha_or_partition: exact kernel-enumeration equivalence") {
  for (int k = 2; k <= 5; ++k) {
    for (int m = 1; m <= 3; ++m) {
      for (int t = 1; t <= std::min(k + 2, 7); ++t) {
        for (const Partition& mu : valid_partitions(t, k, m, k)) {
          CHECK(alpha_or_partition(mu, k) == alpha_brute(mu, k, false));
        }
      }
    }
  }
}

TEST_CASE("weight_partition: brute-force share-subset enumeration") {
  // Enumerate every t-subset of n shares, classify by group occupancy.
  for (auto [k, n, t] : std::vector<std::array<int, 3>>{
           {2, 5, 2}, {3, 7, 3}, {3, 8, 2}, {4, 10, 3}, {2, 6, 4}}) {
    const int m = (n + k - 1) / k;
    const int u = n - (m - 1) * k;
    std::map<Partition, long long> counts;
    long long total = 0;
    std::vector<int> pick;
    auto recurse = [&](auto&& self, int next) -> void {
      if (static_cast<int>(pick.size()) == t) {
        std::vector<int> occ(static_cast<std::size_t>(m), 0);
        for (int share : pick) ++occ[static_cast<std::size_t>((share - 1) / k)];
        std::erase(occ, 0);
        std::sort(occ.begin(), occ.end(), std::greater<>());
        ++counts[occ];
        ++total;
        return;
      }
      for (int s = next; s <= n; ++s) {
        pick.push_back(s);
        self(self, s + 1);
        pick.pop_back();
      }
    };
    recurse(recurse, 1);

    Rational wsum(0);
    for (const Partition& mu : valid_partitions(t, k, m, u)) {
      Rational w = weight_partition(mu, k, n, t);
      CHECK(w == Rational(counts[mu], total));
      wsum += w;
    }
    CHECK(wsum == Rational(1));
  }
}

TEST_CASE("weight_partition: normalization across a dense grid") {
  for (int k = 2; k <= 5; ++k) {
    for (int n = k; n <= 12; ++n) {
      const int m = (n + k - 1) / k;
      const int u = n - (m - 1) * k;
      for (int t = 1; t <= n; ++t) {
        Rational sum(0);
        for (const Partition& mu : valid_partitions(t, k, m, u)) {
          sum += weight_partition(mu, k, n, t);
        }
        CHECK(sum == Rational(1));
      }
    }
  }
}

TEST_CASE("sigma_or: Table I exact cells") {
  CHECK(sigma_or(2, 2, 2) == Rational(1, 2));
  CHECK(sigma_or(2, 3, 2) == Rational(3, 10));
  CHECK(sigma_or(2, 4, 2) == Rational(3, 10));
  CHECK(sigma_or(2, 5, 2) == Rational(13, 50));
  CHECK(sigma_or(3, 3, 3) == Rational(1, 4));
  CHECK(sigma_or(3, 4, 3) == Rational(13, 112));
  CHECK(sigma_or(3, 5, 3) == Rational(5, 56));
  CHECK(sigma_or(4, 4, 4) == Rational(1, 8));
  CHECK(sigma_or(4, 5, 4) == Rational(67, 1400));
}

TEST_CASE("alpha_or_infinity: limits and convergence of the finite curve") {
  CHECK(alpha_or_infinity(2) == Rational(1, 5));
  CHECK(alpha_or_infinity(3) == Rational(1, 22));
  CHECK(alpha_or_infinity(4) == Rational(1, 99));
  CHECK(alpha_or_infinity(6) == Rational(15, 33361));
  for (int k : {2, 3}) {
    double at200 = sigma_or(k, 200, k).to_double();
    CHECK(std::fabs(at200 - alpha_or_infinity(k).to_double()) < 1e-2);
  }
}

TEST_CASE("pr_even: pinned values") {
  CHECK(pr_even({1, 1}, 2, 2) == Rational(1));
  CHECK(pr_even({1, 1}, 2, 1) == Rational(1, 2));
  CHECK(pr_even({3}, 3, 2) == Rational(0));  // full group, k-n0 odd
  CHECK(pr_even({4}, 4, 2) == Rational(1));  // full group, k-n0 even
}

TEST_CASE("alpha_xor_partition: pinned Table IV cells") {
  CHECK(alpha_xor_partition({4}, 4) == Rational(1));
  CHECK(alpha_xor_partition({3, 1}, 4) == Rational(2, 11));
  CHECK(alpha_xor_partition({2, 2}, 4) == Rational(1, 9));
  CHECK(alpha_xor_partition({2, 1, 1}, 4) == Rational(1, 12));
  CHECK(alpha_xor_partition({1, 1, 1, 1}, 4) == Rational(3, 49));
  CHECK(alpha_xor_partition({2, 2, 1}, 5) == Rational(2, 49));
  CHECK(alpha_xor_partition({1, 1}, 2) == Rational(1, 3));
  CHECK_THROWS_AS(alpha_xor_partition({2, 1}, 4), std::invalid_argument);
}

TEST_CASE("alpha_xor_partition: exact kernel-enumeration equivalence") {
  for (int k = 2; k <= 5; ++k) {
    for (int m = 1; m <= std::min(k, 4); ++m) {
      for (const Partition& mu : valid_partitions(k, k, m, k)) {
        CHECK(alpha_xor_partition(mu, k) == alpha_brute(mu, k, true));
      }
    }
  }
}

TEST_CASE("alpha_xor_infinity: closed form") {
  CHECK(alpha_xor_infinity(2) == Rational(1, 3));
  CHECK(alpha_xor_infinity(3) == Rational(4, 25));
  CHECK(alpha_xor_infinity(4) == Rational(3, 49));
  CHECK(alpha_xor_infinity(5) == Rational(16, 617));
  CHECK(alpha_xor_infinity(6) == Rational(15, 1474));
  // k=2 by hand: f(0)+f(2) = 2 over 3*2 + 0
  CHECK(alpha_xor_infinity(2) == Rational(2, 6));
  for (int k = 2; k <= 6; ++k) {
    CHECK(alpha_xor_infinity(k) == alpha_xor_partition(Partition(static_cast<std::size_t>(k), 1), k));
  }
}

TEST_CASE("alpha_or_stack_t: Table III cells and the t=k reduction") {
  CHECK(alpha_or_stack_t(4, 4) == Rational(1, 99));
  CHECK(alpha_or_stack_t(4, 5) == Rational(5, 191));
  CHECK(std::fabs(alpha_or_stack_t(4, 5).to_double() - 0.0262) < 5e-5);
  CHECK(std::fabs(alpha_or_stack_t(5, 10).to_double() - 0.0316) < 5e-5);
  for (int k = 2; k <= 6; ++k) CHECK(alpha_or_stack_t(k, k) == alpha_or_infinity(k));
  CHECK_THROWS_AS(alpha_or_stack_t(4, 3), std::invalid_argument);

  // row-multiplicity identity behind the t >= k reduction
  for (int k = 2; k <= 4; ++k) {
    for (int t = k; t <= 6; ++t) {
      Partition ones(static_cast<std::size_t>(t), 1);
      Partition padded = ones;
      padded.push_back(0);
      for (int d = 1; d <= k; ++d) {
        CHECK(count_matrices(padded, d, k) == count_matrices(ones, d, k) * d);
      }
    }
  }
}

TEST_CASE("better2: curve, limit, and per-configuration values") {
  CHECK_THROWS_AS(better2_alpha(1), std::invalid_argument);
  CHECK_THROWS_AS(better3_alpha(2), std::invalid_argument);
  CHECK(better2_alpha(2) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
  auto lim = better2_alpha_infinity();
  CHECK(lim.value == doctest::Approx((std::sqrt(2.0) - 1.0) / 2.0).epsilon(1e-12));
  CHECK(lim.divisor == 2);
  CHECK(std::fabs(better2_alpha(43) - lim.value) < 0.005);
  CHECK(std::fabs(better2_alpha(42) - lim.value) > 0.005);
  // same group reveals more than cross-group stacking
  CHECK(better2_alpha_same_group() == doctest::Approx(std::sqrt(2.0) - 1.0));
  CHECK(better2_alpha_cross_group() == doctest::Approx((std::sqrt(2.0) - 1.0) / 2.0));
}

TEST_CASE("better3: closed form matches the generic weight machinery") {
  CHECK(better3_alpha(4) == Rational(1, 7));
  CHECK(better3_alpha_infinity() == Rational(2, 41));
  CHECK(std::fabs(better3_alpha(34).to_double() - Rational(2, 41).to_double()) < 0.005);

  CHECK(better3_alpha_config({3}) == Rational(1, 7));
  CHECK(better3_alpha_config({2, 1}) == Rational(1, 15));
  CHECK(better3_alpha_config({1, 1, 1}) == Rational(2, 41));

  for (int n = 4; n <= 24; ++n) {
    Rational generic = weight_partition({3}, 4, n, 3) * Rational(1, 7) +
                       weight_partition({2, 1}, 4, n, 3) * Rational(1, 15) +
                       weight_partition({1, 1, 1}, 4, n, 3) * Rational(2, 41);
    CHECK(better3_alpha(n) == generic);
  }

  // weights sum to one, e.g. at n=8
  Rational wsum = weight_partition({3}, 4, 8, 3) + weight_partition({2, 1}, 4, 8, 3) +
                  weight_partition({1, 1, 1}, 4, 8, 3);
  CHECK(wsum == Rational(1));
}

TEST_CASE("find_convergence_n: representative thresholds") {
  CHECK(find_convergence_n(curve_rgvcs_or(2), 0.005) == 61);
  CHECK(find_convergence_n(curve_rgvcs_xor(2), 0.05) == 15);
  CHECK(find_convergence_n(curve_better2(), 0.005) == 43);
  CHECK(find_convergence_n(curve_better3(), 0.005) == 34);
  CHECK_THROWS_AS(find_convergence_n(curve_rgvcs_or(2), 1e-9), std::runtime_error);
}

TEST_CASE("compare_curves: three-way classification") {
  auto b2 = curve_better2();
  auto or2 = curve_rgvcs_or(2);
  auto cmp = compare_curves(b2, or2, 200);
  // limits differ (0.2071 vs 0.2) but sigma(2,2)=1/2 beats lambda at t=2
  CHECK(cmp.order == CurveOrder::better);
  CHECK(cmp.limit_cmp == 1);
  CHECK(!cmp.violations.empty());
  CHECK(cmp.violations.front() == 2);

  auto self = compare_curves(or2, or2, 50);
  CHECK(self.order == CurveOrder::inconclusive);
  CHECK(self.strict_witnesses.empty());

  // equal limits, one strictly smaller point -> relatively better
  auto b3 = curve_better3();
  ContrastCurve dented = b3;
  dented.alpha_at = [inner = b3.alpha_at](int n) {
    CurvePoint p = inner(n);
    if (n == 10) return CurvePoint(*p.exact - Rational(1, 1000));
    return p;
  };
  auto rel = compare_curves(b3, dented, 60);
  CHECK(rel.order == CurveOrder::relatively_better);
  CHECK(rel.strict_witnesses == std::vector<int>{10});
}

TEST_CASE("sigma_xor: finite-n curve endpoints") {
  // n=k collapses to the lossless single-group class
  CHECK(sigma_xor(4, 4) == Rational(1));
  // k=2, n=15: 7 same-group pairs of 105 -> 1/15 + (14/15)/3
  CHECK(sigma_xor(2, 15) == Rational(17, 45));
}
