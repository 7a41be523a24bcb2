#include "symdet/gf.hpp"

#include <string>

#include "symdet/error.hpp"

namespace symdet {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec::FieldSpec(int q) : q_(q) {
  if (q < 2) throw Error(ErrorKind::NonPrime, "q = " + std::to_string(q));
  if (q % 2 == 0) throw Error(ErrorKind::EvenCharacteristic, "q = " + std::to_string(q));
  if (!is_prime(q)) throw Error(ErrorKind::NonPrime, "q = " + std::to_string(q));
  if (q > kMaxOrder) throw Error(ErrorKind::UnsupportedOrder, "q = " + std::to_string(q) + " exceeds 251");

  const auto n = std::size_t(q);
  add_.resize(n * n);
  sub_.resize(n * n);
  mul_.resize(n * n);
  inv_.assign(n, 0);
  chi_.assign(n, -1);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      const auto i = std::size_t(a) * n + std::size_t(b);
      add_[i] = std::uint8_t((a + b) % q);
      sub_[i] = std::uint8_t((a - b + q) % q);
      mul_[i] = std::uint8_t((a * b) % q);
      if ((a * b) % q == 1) inv_[std::size_t(a)] = std::uint8_t(b);
    }
  }
  chi_[0] = 0;
  for (int a = 1; a < q; ++a) chi_[std::size_t((a * a) % q)] = 1;
  for (int a = 1; a < q; ++a) {
    if (chi_[std::size_t(a)] == -1) {
      nonsquare_ = std::uint8_t(a);
      break;
    }
  }
}

Fe FieldSpec::element(long long value) const {
  long long r = value % q_;
  if (r < 0) r += q_;
  return Fe{std::uint8_t(r)};
}

Fe FieldSpec::inv(Fe a) const {
  if (a.value == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0");
  return Fe{inv_[a.value]};
}

Fe FieldSpec::apply(ArithOp op, Fe a, Fe b) const {
  switch (op) {
    case ArithOp::Add: return add(a, b);
    case ArithOp::Sub: return sub(a, b);
    case ArithOp::Mul: return mul(a, b);
    case ArithOp::Div: return div(a, b);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown op");
}

Fe FieldSpec::class_representative(int square_class) const {
  if (square_class == 1) return Fe{1};
  if (square_class == -1) return canonical_nonsquare();
  throw Error(ErrorKind::InvalidArgument, "square class must be +1 or -1");
}

FieldSpec field_new(int q) { return FieldSpec(q); }

}  // namespace symdet
