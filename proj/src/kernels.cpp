#include "evcs/kernels.hpp"

namespace evcs {

std::pair<Rational, Rational> stack_transmission_kk(int k, int t) {
  if (k < 2) throw std::invalid_argument("stack_transmission_kk: k must be >= 2");
  if (t < 1 || t > k) throw std::invalid_argument("stack_transmission_kk: need 1 <= t <= k");
  if (t < k) {
    Rational l(BigInt(1), BigInt(1) << t);
    return {l, l};
  }
  return {Rational(BigInt(1), BigInt(1) << (k - 1)), Rational(0)};
}

}  // namespace evcs
