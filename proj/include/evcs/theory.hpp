#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evcs/rational.hpp"

namespace evcs::theory {

BigInt binomial(long long n, long long r);
BigInt factorial(int n);
BigInt ipow(const BigInt& base, int exp);

// A partition equivalence class, stored as its nonincreasing nonzero parts.
// Contrast depends only on this multiset; the slot of the partial last group
// is folded into the weight formula.
using Partition = std::vector<int>;

// All partition classes of t that can occur when stacking t shares out of m
// groups (m-1 full groups of size k, last group of size u). Returned in
// deterministic order, largest leading part first.
std::vector<Partition> valid_partitions(int t, int k, int m, int u);

// |A^mu_d(F)|: 0/1 matrices with row sums mu, the last row fixed to a
// canonical F with mu.back() ones, and every one of the d columns covered.
// Counted by a memoized recursion over rows keyed on the number of still
// uncovered columns; practical bound k <= 8 per row, any row count.
BigInt count_matrices(const Partition& mu, int d, int k);

// Distribution of the number of distinct kernel indices in a mu-selection.
// Entries with probability zero are omitted; the rest sum to 1 exactly.
std::map<int, Rational> pr_distinct(const Partition& mu, int k);

// OR contrast of one partition class (zero whenever fewer than k distinct
// indices can appear, i.e. for every sub-threshold selection).
Rational alpha_or_partition(const Partition& mu, int k);

// Occurrence probability of the class when t of n shares are chosen.
Rational weight_partition(const Partition& mu, int k, int n, int t);

// Weighted OR contrast over all classes: sum of w_i * alpha_i.
Rational sigma_or(int k, int n, int t);

// Limit of sigma_or(k, n, k) as n grows; equals the all-distinct-groups
// class <1^k>.
Rational alpha_or_infinity(int k);

// Probability that a mu-selection holds an even number of opaque bits given
// that the kernel output contains n0 zeros.
Rational pr_even(const Partition& mu, int k, int n0);

// XOR contrast of a partition class whose parts sum to k.
Rational alpha_xor_partition(const Partition& mu, int k);

// Closed-form XOR limit contrast.
Rational alpha_xor_infinity(int k);

// Weighted XOR contrast at finite n when stacking k shares.
Rational sigma_xor(int k, int n);

// OR contrast when stacking t >= k shares in the evolving scheme (class
// <1^t>); reduces to alpha_or_infinity at t = k.
Rational alpha_or_stack_t(int k, int t);

// Enhanced (2,inf) scheme: contrast of stacking 2 of n shares. Irrational
// (lambda = sqrt(2)-1), so evaluated in double precision.
double better2_alpha(int n);

struct Better2Limit {
  std::string numerator_symbol = "sqrt(2)-1";
  int divisor = 2;
  double value = 0.0;
};
Better2Limit better2_alpha_infinity();

// Enhanced (3,inf) scheme: contrast of stacking 3 of n shares, exact.
Rational better3_alpha(int n);
Rational better3_alpha_infinity();

// Per-group-occupancy contrasts of the enhanced schemes (same-group pair
// resp. [3]/[2,1]/[1,1,1] stacks).
double better2_alpha_same_group();   // sqrt(2)-1
double better2_alpha_cross_group();  // (sqrt(2)-1)/2
Rational better3_alpha_config(const Partition& mu);

struct CurvePoint {
  std::optional<Rational> exact;
  double approx = 0.0;

  CurvePoint() = default;
  CurvePoint(Rational r) : exact(std::move(r)), approx(exact->to_double()) {}
  CurvePoint(double d) : approx(d) {}
  double value() const { return approx; }
};

struct ContrastCurve {
  std::string tag;
  int n_min = 2;
  std::function<CurvePoint(int)> alpha_at;
  CurvePoint limit;
};

ContrastCurve curve_rgvcs_or(int k);
ContrastCurve curve_rgvcs_xor(int k);
ContrastCurve curve_better2();
ContrastCurve curve_better3();

// Smallest n >= n_min with |alpha(n) - alpha_inf| < epsilon. Throws
// std::runtime_error when no n below the search bound (10^4) qualifies.
int find_convergence_n(const ContrastCurve& curve, double epsilon);

enum class CurveOrder { strictly_better, better, relatively_better, inconclusive };

std::string to_string(CurveOrder order);

struct CurveComparison {
  CurveOrder order = CurveOrder::inconclusive;
  int t_lo = 0;
  int t_hi = 0;                      // range actually verified
  int limit_cmp = 0;                 // sign of lim A - lim B
  std::vector<int> strict_witnesses; // t where A(t) > B(t)
  std::vector<int> violations;       // t where A(t) < B(t)
};

// Applies the three-case ordering with the universally quantified clauses
// checked on [max(n_min), t_max] only; witnesses report where strictness
// held and where dominance failed.
CurveComparison compare_curves(const ContrastCurve& a, const ContrastCurve& b, int t_max);

}  // namespace evcs::theory
