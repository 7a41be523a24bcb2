#pragma once

// Arithmetic in an odd prime field F_q with precomputed quadratic characters.

#include <cstdint>
#include <vector>

namespace symdet {

/// A field element: a residue in [0, q). Which field it belongs to is
/// carried by the FieldSpec that operates on it.
struct Fe {
  std::uint8_t value = 0;

  friend bool operator==(Fe, Fe) = default;
  friend auto operator<=>(Fe, Fe) = default;
};

enum class ArithOp { Add, Sub, Mul, Div };

/// F_q for an odd prime q <= 251. Immutable after construction, so one
/// instance can be shared freely between worker threads.
class FieldSpec {
 public:
  static constexpr int kMaxOrder = 251;

  /// Throws NonPrime, EvenCharacteristic or UnsupportedOrder.
  explicit FieldSpec(int q);

  int q() const { return q_; }
  Fe canonical_nonsquare() const { return Fe{nonsquare_}; }

  /// Residue class of an arbitrary integer.
  Fe element(long long value) const;

  Fe add(Fe a, Fe b) const { return Fe{add_[idx(a, b)]}; }
  Fe sub(Fe a, Fe b) const { return Fe{sub_[idx(a, b)]}; }
  Fe mul(Fe a, Fe b) const { return Fe{mul_[idx(a, b)]}; }
  Fe neg(Fe a) const { return Fe{sub_[idx(Fe{0}, a)]}; }
  /// Throws DivisionByZero for a == 0.
  Fe inv(Fe a) const;
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
  Fe apply(ArithOp op, Fe a, Fe b) const;

  /// Quadratic character: 0 for 0, +1 for non-zero squares, -1 otherwise.
  int chi(Fe a) const { return chi_[a.value]; }

  /// Representative of a square class: 1 for +1, canonical_nonsquare for -1.
  Fe class_representative(int square_class) const;

  // Raw byte tables for hot loops; index a * q + b.
  const std::uint8_t* add_table() const { return add_.data(); }
  const std::uint8_t* sub_table() const { return sub_.data(); }
  const std::uint8_t* mul_table() const { return mul_.data(); }
  const std::uint8_t* inv_table() const { return inv_.data(); }
  const std::int8_t* chi_table() const { return chi_.data(); }

 private:
  std::size_t idx(Fe a, Fe b) const { return std::size_t(a.value) * std::size_t(q_) + b.value; }

  int q_;
  std::uint8_t nonsquare_ = 0;
  std::vector<std::uint8_t> add_, sub_, mul_, inv_;
  std::vector<std::int8_t> chi_;
};

/// Convenience wrapper matching the factory used by the CLI.
FieldSpec field_new(int q);

bool is_prime(int n);

}  // namespace symdet
