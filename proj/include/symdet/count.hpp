#pragma once

// Exact integer counts. Every operation is overflow-checked and throws
// Error(Overflow) instead of wrapping.

#include <cstdint>
#include <optional>
#include <string>

#include "symdet/error.hpp"

namespace symdet {

using Count = __int128;

Count checked_add(Count a, Count b);
Count checked_sub(Count a, Count b);
Count checked_mul(Count a, Count b);

/// base^exp for exp >= 0.
Count ipow(Count base, int exp);

/// a / b, throwing InvalidArgument unless b divides a.
Count exact_div(Count a, Count b);

std::string to_string(Count value);

/// Value as int64 when it fits.
std::optional<std::int64_t> to_int64(Count value);

/// Exact rational with positive denominator, always in lowest terms.
class Rational {
 public:
  Rational(Count num = 0, Count den = 1);

  Count num() const { return num_; }
  Count den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  /// The integer value; throws InvalidArgument if not integral.
  Count to_integer() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

  std::string str() const;

 private:
  Count num_;
  Count den_;
};

}  // namespace symdet
