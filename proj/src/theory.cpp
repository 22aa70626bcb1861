#include "evcs/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "evcs/better.hpp"

namespace evcs::theory {

BigInt binomial(long long n, long long r) {
  if (r < 0 || r > n || n < 0) return 0;
  r = std::min(r, n - r);
  BigInt acc = 1;
  for (long long i = 1; i <= r; ++i) {
    acc *= n - r + i;
    acc /= i;
  }
  return acc;
}

BigInt factorial(int n) {
  BigInt acc = 1;
  for (int i = 2; i <= n; ++i) acc *= i;
  return acc;
}

BigInt ipow(const BigInt& base, int exp) {
  BigInt acc = 1;
  for (int i = 0; i < exp; ++i) acc *= base;
  return acc;
}

namespace {

Partition canonical(Partition mu) {
  std::erase(mu, 0);
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return mu;
}

void check_k(int k) {
  if (k < 2) throw std::invalid_argument("threshold k must be >= 2");
}

}  // namespace

std::vector<Partition> valid_partitions(int t, int k, int m, int u) {
  check_k(k);
  if (t < 1) throw std::invalid_argument("valid_partitions: t must be >= 1");
  if (m < 1 || u < 1 || u > k) throw std::invalid_argument("valid_partitions: bad group shape");

  std::vector<Partition> out;
  if (t > static_cast<long long>(k) * (m - 1) + u) return out;

  Partition parts;
  auto recurse = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      // A class is realizable iff some slot assignment respects the last
      // group's capacity: either a slot stays empty or the smallest part
      // fits into the partial group.
      if (static_cast<int>(parts.size()) < m || parts.back() <= u) out.push_back(parts);
      return;
    }
    if (static_cast<int>(parts.size()) == m) return;
    for (int p = std::min(max_part, remaining); p >= 1; --p) {
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  recurse(recurse, t, k);
  return out;
}

BigInt count_matrices(const Partition& mu, int d, int k) {
  check_k(k);
  if (d < 1 || d > k) throw std::invalid_argument("count_matrices: need 1 <= d <= k");
  if (mu.empty()) throw std::invalid_argument("count_matrices: empty partition");
  const int f_ones = mu.back();
  if (f_ones > d) return 0;

  // ways[j] = configurations of the rows processed so far leaving j of the
  // columns outside F's support uncovered.
  std::vector<BigInt> ways(static_cast<std::size_t>(d) + 1, BigInt(0));
  ways[static_cast<std::size_t>(d - f_ones)] = 1;
  for (std::size_t row = 0; row + 1 < mu.size(); ++row) {
    const int p = mu[row];
    std::vector<BigInt> next(static_cast<std::size_t>(d) + 1, BigInt(0));
    for (int unc = 0; unc <= d; ++unc) {
      if (ways[static_cast<std::size_t>(unc)] == 0) continue;
      for (int j = 0; j <= std::min(unc, p); ++j) {
        BigInt cnt = binomial(unc, j) * binomial(d - unc, p - j);
        if (cnt == 0) continue;
        next[static_cast<std::size_t>(unc - j)] += ways[static_cast<std::size_t>(unc)] * cnt;
      }
    }
    ways = std::move(next);
  }
  return ways[0];
}

std::map<int, Rational> pr_distinct(const Partition& mu, int k) {
  check_k(k);
  Partition parts = canonical(mu);
  if (parts.empty()) throw std::invalid_argument("pr_distinct: empty partition");
  for (int p : parts) {
    if (p > k) throw std::invalid_argument("pr_distinct: part exceeds k");
  }
  const int last = parts.back();
  BigInt den = 1;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) den *= binomial(k, parts[i]);

  std::map<int, Rational> probs;
  for (int d = 1; d <= k; ++d) {
    BigInt num = binomial(k - last, d - last) * count_matrices(parts, d, k);
    if (num == 0) continue;
    probs.emplace(d, Rational(num, den));
  }
  return probs;
}

namespace {

Rational alpha_from_distinct(const std::map<int, Rational>& probs, int k) {
  Rational num(0);
  Rational den(1);
  for (const auto& [d, pr] : probs) {
    if (d == k) {
      num = pr / Rational(BigInt(1) << (k - 1));
    } else {
      den += pr / Rational(BigInt(1) << d);
    }
  }
  return num / den;
}

}  // namespace

Rational alpha_or_partition(const Partition& mu, int k) {
  return alpha_from_distinct(pr_distinct(mu, k), k);
}

Rational weight_partition(const Partition& mu, int k, int n, int t) {
  check_k(k);
  if (n < k) throw std::invalid_argument("weight_partition: need n >= k");
  if (t < 1 || t > n) throw std::invalid_argument("weight_partition: need 1 <= t <= n");
  Partition parts = canonical(mu);
  int sum = 0;
  for (int p : parts) sum += p;
  if (sum != t) throw std::invalid_argument("weight_partition: parts must sum to t");

  const int m = (n + k - 1) / k;
  const int u = n - (m - 1) * k;
  if (static_cast<int>(parts.size()) > m) return Rational(0);

  // Multiset view including the zero parts that pad the class to m slots.
  std::vector<std::pair<int, int>> values;  // (value, multiplicity)
  for (int p : parts) {
    if (!values.empty() && values.back().first == p) {
      ++values.back().second;
    } else {
      values.emplace_back(p, 1);
    }
  }
  const int zero_count = m - static_cast<int>(parts.size());
  if (zero_count > 0) values.emplace_back(0, zero_count);

  BigInt fact_den = 1;  // product of multiplicity factorials
  for (const auto& [v, c] : values) fact_den *= factorial(c);

  BigInt all_products = 1;  // product over every slot of C(k, mu_j)
  for (int p : parts) all_products *= binomial(k, p);

  Rational total(0);
  for (const auto& [v, c] : values) {
    if (v > u || v > k) continue;  // cannot sit in the last group / any group
    // One copy of v moves to the last group; the rest fill the m-1 full
    // groups in (m-1)!·c / prod(c_j!) distinguishable orders.
    BigInt rem_products = v == 0 ? all_products : all_products / binomial(k, v);
    BigInt num = binomial(u, v) * rem_products * factorial(m - 1) * c;
    total += Rational(num, fact_den);
  }
  return total / Rational(binomial(n, t));
}

Rational sigma_or(int k, int n, int t) {
  check_k(k);
  if (n < k) throw std::invalid_argument("sigma_or: need n >= k");
  if (t < 1 || t > n) throw std::invalid_argument("sigma_or: need 1 <= t <= n");
  const int m = (n + k - 1) / k;
  const int u = n - (m - 1) * k;
  Rational acc(0);
  for (const Partition& mu : valid_partitions(t, k, m, u)) {
    Rational w = weight_partition(mu, k, n, t);
    if (w.is_zero()) continue;
    acc += w * alpha_or_partition(mu, k);
  }
  return acc;
}

Rational alpha_or_infinity(int k) {
  check_k(k);
  return alpha_or_partition(Partition(static_cast<std::size_t>(k), 1), k);
}

Rational pr_even(const Partition& mu, int k, int n0) {
  check_k(k);
  if (n0 < 0 || n0 > k) throw std::invalid_argument("pr_even: need 0 <= n0 <= k");
  Rational prod(1);
  for (int p : mu) {
    if (p < 0 || p > k) throw std::invalid_argument("pr_even: bad part");
    if (p == 0) continue;
    BigInt num = 0;
    for (int h = 0; h <= p; ++h) {
      BigInt term = binomial(k - n0, h) * binomial(n0, p - h);
      num += (h % 2 == 0) ? term : -term;
    }
    prod *= Rational(num, binomial(k, p));
  }
  return (Rational(1) + prod) / Rational(2);
}

Rational alpha_xor_partition(const Partition& mu, int k) {
  check_k(k);
  Partition parts = canonical(mu);
  int sum = 0;
  for (int p : parts) sum += p;
  if (sum != k) throw std::invalid_argument("alpha_xor_partition: parts must sum to k");

  Rational l0(0), l1(0);
  const Rational denom(BigInt(1) << (k - 1));
  for (int n0 = 0; n0 <= k; ++n0) {
    Rational term = Rational(binomial(k, n0)) / denom * pr_even(parts, k, n0);
    if ((n0 - k) % 2 == 0) {
      l0 += term;
    } else {
      l1 += term;
    }
  }
  return (l0 - l1) / (Rational(1) + l1);
}

Rational alpha_xor_infinity(int k) {
  check_k(k);
  const BigInt kk = ipow(BigInt(k), k);
  Rational even_sum(0), odd_sum(0);
  for (int n0 = 0; n0 <= k; ++n0) {
    Rational f(binomial(k, n0) * ipow(BigInt(2 * n0 - k), k), kk);
    if ((n0 - k) % 2 == 0) {
      even_sum += f;
    } else {
      odd_sum += f;
    }
  }
  return (even_sum - odd_sum) / (Rational(BigInt(3) * (BigInt(1) << (k - 1))) + odd_sum);
}

Rational sigma_xor(int k, int n) {
  check_k(k);
  if (n < k) throw std::invalid_argument("sigma_xor: need n >= k");
  const int m = (n + k - 1) / k;
  const int u = n - (m - 1) * k;
  Rational acc(0);
  for (const Partition& mu : valid_partitions(k, k, m, u)) {
    Rational w = weight_partition(mu, k, n, k);
    if (w.is_zero()) continue;
    acc += w * alpha_xor_partition(mu, k);
  }
  return acc;
}

Rational alpha_or_stack_t(int k, int t) {
  check_k(k);
  if (t < k) throw std::invalid_argument("alpha_or_stack_t: need t >= k");
  const Partition ones(static_cast<std::size_t>(t), 1);
  const BigInt den = ipow(BigInt(k), t - 1);
  std::map<int, Rational> probs;
  for (int d = 1; d <= k; ++d) {
    BigInt num = binomial(k - 1, d - 1) * count_matrices(ones, d, k);
    if (num == 0) continue;
    probs.emplace(d, Rational(num, den));
  }
  return alpha_from_distinct(probs, k);
}

double better2_alpha(int n) {
  if (n < 2) throw std::invalid_argument("better2_alpha: need n >= 2");
  // Cross-group contrast (lambda - lambda^2)/(1 + lambda^2) collapses to
  // lambda/2 for lambda = sqrt(2)-1.
  const double cross = kGrgLambda / 2.0;
  const double pr_cross = (n % 2 == 0) ? static_cast<double>(n - 2) / (n - 1)
                                       : static_cast<double>(n - 1) / n;
  return cross * pr_cross + kGrgLambda * (1.0 - pr_cross);
}

Better2Limit better2_alpha_infinity() {
  Better2Limit lim;
  lim.value = kGrgLambda / 2.0;
  return lim;
}

double better2_alpha_same_group() { return kGrgLambda; }
double better2_alpha_cross_group() { return kGrgLambda / 2.0; }

namespace {

// Contrasts of the three 3-share configurations in the enhanced (3,inf)
// scheme: same group, 2+1, and three distinct groups.
const Rational kBetter3Alpha1(BigInt(1), BigInt(7));
const Rational kBetter3Alpha2(BigInt(1), BigInt(15));
const Rational kBetter3Alpha3(BigInt(2), BigInt(41));

}  // namespace

Rational better3_alpha_config(const Partition& mu) {
  Partition parts = canonical(mu);
  if (parts == Partition{3}) return kBetter3Alpha1;
  if (parts == Partition{2, 1}) return kBetter3Alpha2;
  if (parts == Partition{1, 1, 1}) return kBetter3Alpha3;
  throw std::invalid_argument("better3_alpha_config: want a partition of 3");
}

Rational better3_alpha(int n) {
  if (n < 3) throw std::invalid_argument("better3_alpha: need n >= 3");
  const int m = (n + 3) / 4;
  const int u = (n - 1) % 4 + 1;
  const BigInt choose = binomial(n, 3);
  Rational w1(binomial(u, 3) + BigInt(4) * (m - 1), choose);
  Rational w2(BigInt(m - 1) * (BigInt(4) * binomial(u, 2) + BigInt(6) * u + BigInt(24) * (m - 2)),
              choose);
  Rational w3(BigInt(8) * (m - 1) * (m - 2) * (BigInt(3) * u + BigInt(4) * (m - 3)),
              BigInt(3) * choose);
  if (m < 2) w2 = Rational(0);
  if (m < 3) w3 = Rational(0);
  return w1 * kBetter3Alpha1 + w2 * kBetter3Alpha2 + w3 * kBetter3Alpha3;
}

Rational better3_alpha_infinity() { return kBetter3Alpha3; }

ContrastCurve curve_rgvcs_or(int k) {
  check_k(k);
  ContrastCurve c;
  c.tag = "rgvcs-or(k=" + std::to_string(k) + ")";
  c.n_min = k;
  c.alpha_at = [k](int n) { return CurvePoint(sigma_or(k, n, k)); };
  c.limit = CurvePoint(alpha_or_infinity(k));
  return c;
}

ContrastCurve curve_rgvcs_xor(int k) {
  check_k(k);
  ContrastCurve c;
  c.tag = "rgvcs-xor(k=" + std::to_string(k) + ")";
  c.n_min = k;
  c.alpha_at = [k](int n) { return CurvePoint(sigma_xor(k, n)); };
  c.limit = CurvePoint(alpha_xor_infinity(k));
  return c;
}

ContrastCurve curve_better2() {
  ContrastCurve c;
  c.tag = "better2";
  c.n_min = 2;
  c.alpha_at = [](int n) { return CurvePoint(better2_alpha(n)); };
  c.limit = CurvePoint(better2_alpha_infinity().value);
  return c;
}

ContrastCurve curve_better3() {
  ContrastCurve c;
  c.tag = "better3";
  c.n_min = 3;
  c.alpha_at = [](int n) { return CurvePoint(better3_alpha(n)); };
  c.limit = CurvePoint(better3_alpha_infinity());
  return c;
}

int find_convergence_n(const ContrastCurve& curve, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("find_convergence_n: epsilon must be > 0");
  constexpr int kSearchBound = 10000;
  const double limit = curve.limit.value();
  for (int n = curve.n_min; n <= kSearchBound; ++n) {
    if (std::fabs(curve.alpha_at(n).value() - limit) < epsilon) return n;
  }
  throw std::runtime_error("find_convergence_n: no n <= 10^4 within epsilon of the limit");
}

std::string to_string(CurveOrder order) {
  switch (order) {
    case CurveOrder::strictly_better: return "strictly_better";
    case CurveOrder::better: return "better";
    case CurveOrder::relatively_better: return "relatively_better";
    case CurveOrder::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// -1 / 0 / +1, exact when both points carry rationals.
int compare_points(const CurvePoint& a, const CurvePoint& b) {
  if (a.exact && b.exact) {
    if (*a.exact == *b.exact) return 0;
    return *a.exact < *b.exact ? -1 : 1;
  }
  const double da = a.value(), db = b.value();
  if (std::fabs(da - db) <= 1e-12) return 0;
  return da < db ? -1 : 1;
}

}  // namespace

CurveComparison compare_curves(const ContrastCurve& a, const ContrastCurve& b, int t_max) {
  CurveComparison cmp;
  cmp.t_lo = std::max(a.n_min, b.n_min);
  cmp.t_hi = t_max;
  if (t_max < cmp.t_lo) throw std::invalid_argument("compare_curves: t_max below first shared n");
  cmp.limit_cmp = compare_points(a.limit, b.limit);
  for (int t = cmp.t_lo; t <= t_max; ++t) {
    int c = compare_points(a.alpha_at(t), b.alpha_at(t));
    if (c > 0) cmp.strict_witnesses.push_back(t);
    if (c < 0) cmp.violations.push_back(t);
  }
  const bool dominates = cmp.violations.empty() && !cmp.strict_witnesses.empty();
  if (cmp.limit_cmp > 0) {
    cmp.order = dominates ? CurveOrder::strictly_better : CurveOrder::better;
  } else if (cmp.limit_cmp == 0 && dominates) {
    cmp.order = CurveOrder::relatively_better;
  } else {
    cmp.order = CurveOrder::inconclusive;
  }
  return cmp;
}

}  // namespace evcs::theory
