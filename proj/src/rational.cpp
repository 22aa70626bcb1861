#include "evcs/rational.hpp"

#include <cmath>

namespace evcs {

Rational::Rational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::invalid_argument("Rational: division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

double Rational::to_double() const {
  if (num_ == 0) return 0.0;
  BigInt n = num_ < 0 ? BigInt(-num_) : num_;
  // Keep the top ~62 bits of each side so the conversion stays in range.
  long sn = static_cast<long>(boost::multiprecision::msb(n)) - 62;
  long sd = static_cast<long>(boost::multiprecision::msb(den_)) - 62;
  if (sn < 0) sn = 0;
  if (sd < 0) sd = 0;
  double dn = BigInt(n >> sn).convert_to<double>();
  double dd = BigInt(den_ >> sd).convert_to<double>();
  double r = std::ldexp(dn / dd, static_cast<int>(sn - sd));
  return num_ < 0 ? -r : r;
}

std::string Rational::str() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

}  // namespace evcs
