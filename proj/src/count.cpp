#include "symdet/count.hpp"

#include <algorithm>

namespace symdet {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrime: return "NonPrime";
    case ErrorKind::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroAlpha: return "ZeroAlpha";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Count checked_add(Count a, Count b) {
  Count out;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorKind::Overflow, "addition");
  return out;
}

Count checked_sub(Count a, Count b) {
  Count out;
  if (__builtin_sub_overflow(a, b, &out)) throw Error(ErrorKind::Overflow, "subtraction");
  return out;
}

Count checked_mul(Count a, Count b) {
  Count out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorKind::Overflow, "multiplication");
  return out;
}

Count ipow(Count base, int exp) {
  if (exp < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
  Count out = 1;
  for (int i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

Count exact_div(Count a, Count b) {
  if (b == 0) throw Error(ErrorKind::DivisionByZero, "exact_div");
  if (a % b != 0) throw Error(ErrorKind::InvalidArgument, to_string(a) + " not divisible by " + to_string(b));
  return a / b;
}

std::string to_string(Count value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  std::string digits;
  // Work with negative remainders so the minimum value does not overflow.
  Count v = negative ? value : -value;
  while (v != 0) {
    digits.push_back(char('0' - int(v % 10)));
    v /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::optional<std::int64_t> to_int64(Count value) {
  if (value > INT64_MAX || value < INT64_MIN) return std::nullopt;
  return static_cast<std::int64_t>(value);
}

namespace {

Count gcd(Count a, Count b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Count t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(Count num, Count den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Count g = gcd(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

Count Rational::to_integer() const {
  if (den_ != 1) throw Error(ErrorKind::InvalidArgument, "non-integral rational " + str());
  return num_;
}

Rational operator+(const Rational& a, const Rational& b) {
  return {checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)), checked_mul(a.den_, b.den_)};
}

Rational operator-(const Rational& a, const Rational& b) {
  return {checked_sub(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)), checked_mul(a.den_, b.den_)};
}

Rational operator*(const Rational& a, const Rational& b) {
  return {checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_)};
}

Rational operator/(const Rational& a, const Rational& b) {
  return {checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_)};
}

bool operator<(const Rational& a, const Rational& b) {
  return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
}

std::string Rational::str() const {
  return den_ == 1 ? to_string(num_) : to_string(num_) + "/" + to_string(den_);
}

}  // namespace symdet
