#pragma once

// Symmetric matrices over F_q: packed storage, congruence diagonalization,
// exhaustive enumeration and the closed-form rank censuses.

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "symdet/count.hpp"
#include "symdet/error.hpp"
#include "symdet/gf.hpp"

namespace symdet {

inline constexpr int kMaxDim = 8;
inline constexpr int kMaxPacked = kMaxDim * (kMaxDim + 1) / 2;
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 31;

constexpr int packed_size(int m) { return m * (m + 1) / 2; }

/// Position of logical entry (i, j) in the packed upper triangle, row-major
/// over i <= j. This order is the coordinate order of every evaluation point.
constexpr int packed_index(int m, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * m - i * (i - 1) / 2 + (j - i);
}

/// m x m symmetric matrix stored as its packed upper triangle.
class SymMatrix {
 public:
  explicit SymMatrix(int m = 0);

  static SymMatrix identity(int m);
  static SymMatrix diagonal(std::span<const Fe> diag);
  /// diag(1, ..., 1, delta, 0, ..., 0) with `rank` non-zero entries.
  static SymMatrix canonical_diagonal(int m, int rank, Fe delta);

  int dim() const { return m_; }
  int packed_size() const { return symdet::packed_size(m_); }

  Fe operator()(int i, int j) const { return Fe{e_[packed_index(m_, i, j)]}; }
  void set(int i, int j, Fe v) { e_[packed_index(m_, i, j)] = v.value; }

  Fe packed(int idx) const { return Fe{e_[idx]}; }
  void set_packed(int idx, Fe v) { e_[idx] = v.value; }
  std::span<const std::uint8_t> packed_view() const { return {e_.data(), std::size_t(packed_size())}; }
  std::span<std::uint8_t> packed_data() { return {e_.data(), std::size_t(packed_size())}; }

  /// The (m-1) x (m-1) matrix left after deleting the first row and column.
  SymMatrix trailing_minor() const;

  bool is_zero() const;

  friend bool operator==(const SymMatrix& a, const SymMatrix& b);

 private:
  int m_;
  std::array<std::uint8_t, kMaxPacked> e_{};
};

/// Dense m x m matrix, used for congruence transforms.
class SquareMatrix {
 public:
  explicit SquareMatrix(int m = 0) : m_(m) {}
  static SquareMatrix identity(int m);

  int dim() const { return m_; }
  Fe operator()(int i, int j) const { return Fe{e_[i * kMaxDim + j]}; }
  void set(int i, int j, Fe v) { e_[i * kMaxDim + j] = v.value; }

  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b);

 private:
  int m_;
  std::array<std::uint8_t, kMaxDim * kMaxDim> e_{};
};

SquareMatrix multiply(const FieldSpec& f, const SquareMatrix& a, const SquareMatrix& b);
bool is_invertible(const FieldSpec& f, const SquareMatrix& a);

/// P * A * P^T.
SymMatrix congruence(const FieldSpec& f, const SquareMatrix& p, const SymMatrix& a);

struct Diagonalization {
  SquareMatrix transform;   // L with L * A * L^T = diag(diagonal)
  std::vector<Fe> diagonal; // non-zero entries first
  int rank = 0;
};

/// Symmetric elimination. When the remaining block has a zero diagonal but a
/// non-zero entry (i, j), row/column j is added to row/column i first.
Diagonalization congruence_diagonalize(const FieldSpec& f, const SymMatrix& a);

/// Congruence invariants: rank and the square class of the product of the
/// non-zero diagonal entries. Rank 0 has delta_class 0.
struct DiagForm {
  int rank = 0;
  int delta_class = 0;
  SquareMatrix transform;
};

DiagForm canonical_form(const FieldSpec& f, const SymMatrix& a);

/// Rank and discriminant class only; the allocation-free kernel used by the
/// enumeration passes.
struct RankDisc {
  int rank = 0;
  int disc_class = 0;  // chi(product of pivots); +1 for rank 0
};

RankDisc rank_disc(const FieldSpec& f, const SymMatrix& a);

/// Non-zero diagonal entries after symmetric elimination (no transform kept).
/// Returns the rank; the first `rank` slots of `out` hold the pivots.
int diagonal_pivots(const FieldSpec& f, const SymMatrix& a, std::array<Fe, kMaxDim>& out);

/// For even rank 2s: +1 (hyperbolic) iff chi((-1)^s * disc) = +1, else -1.
/// The zero form counts as hyperbolic. Odd ranks return 0.
int even_rank_type(const FieldSpec& f, int rank, int disc_class);

// ---------------------------------------------------------------------------
// Closed-form censuses

/// s(r, m): symmetric m x m matrices of rank r; 0 outside 0 <= r <= m.
Count sym_rank_count(int q, int r, int m);
/// n_s(t, m) = sum_{r <= t} s(r, m); 0 for t < 0.
Count cone_size(int q, int t, int m);
/// N_s(t, m) = (n_s(t, m) - 1) / (q - 1); throws if the division is inexact.
Count projective_size(int q, int t, int m);
/// v_{+1}(2r, m) (sign = +1, hyperbolic) or v_{-1}(2r, m) (sign = -1, elliptic).
Count even_type_count(int q, int sign, int two_r, int m);

struct RankCensus {
  int q = 0;
  int m = 0;
  std::vector<Count> s;        // index r, 0..m
  std::vector<Count> n_s;      // index t, 0..m
  std::vector<Count> N_s;      // index t, 0..m
  std::vector<Count> v_plus;   // index r for rank 2r, 0..m/2
  std::vector<Count> v_minus;
};

RankCensus census(int q, int m);

// ---------------------------------------------------------------------------
// Enumeration

Count space_size(int q, int m);
/// Throws BudgetExceeded if q^{m(m+1)/2} > budget.
void check_budget(int q, int m, std::uint64_t budget);

enum class RankFilter { All, Equal, AtMost };

struct EnumMode {
  RankFilter filter = RankFilter::All;
  int rank = 0;

  static EnumMode all() { return {}; }
  static EnumMode rank_eq(int r) { return {RankFilter::Equal, r}; }
  static EnumMode rank_le(int t) { return {RankFilter::AtMost, t}; }
};

struct ScanOptions {
  std::uint64_t budget = kDefaultBudget;
  int workers = 1;
};

namespace detail {

/// Visits every matrix whose first `prefix_len` packed coordinates spell
/// `block` in base q (most significant first), in lexicographic order.
template <class Fn>
void for_each_in_block(int q, int m, int prefix_len, std::uint64_t block, Fn&& fn) {
  SymMatrix a(m);
  const int n = packed_size(m);
  auto data = a.packed_data();
  for (int i = prefix_len - 1; i >= 0; --i) {
    data[i] = static_cast<std::uint8_t>(block % std::uint64_t(q));
    block /= std::uint64_t(q);
  }
  const auto top = static_cast<std::uint8_t>(q - 1);
  while (true) {
    fn(static_cast<const SymMatrix&>(a));
    int i = n - 1;
    while (i >= prefix_len && data[i] == top) {
      data[i] = 0;
      --i;
    }
    if (i < prefix_len) return;
    ++data[i];
  }
}

}  // namespace detail

/// Every m x m symmetric matrix in lexicographic packed order.
template <class Fn>
void for_each_matrix(const FieldSpec& f, int m, Fn&& fn, std::uint64_t budget = kDefaultBudget) {
  check_budget(f.q(), m, budget);
  detail::for_each_in_block(f.q(), m, 0, 0, fn);
}

/// Matrices selected by rank, in lexicographic packed order.
template <class Fn>
void for_each_matrix(const FieldSpec& f, int m, EnumMode mode, Fn&& fn,
                     std::uint64_t budget = kDefaultBudget) {
  if (mode.filter == RankFilter::All) {
    for_each_matrix(f, m, fn, budget);
    return;
  }
  for_each_matrix(
      f, m,
      [&](const SymMatrix& a) {
        const int r = rank_disc(f, a).rank;
        if (mode.filter == RankFilter::Equal ? r == mode.rank : r <= mode.rank) fn(a);
      },
      budget);
}

/// Collects an enumeration into a vector; only sensible for small spaces.
std::vector<SymMatrix> enumerate(const FieldSpec& f, int m, EnumMode mode,
                                 std::uint64_t budget = kDefaultBudget);

/// Partitioned reduction over all of S_m. Each worker owns a copy of
/// `prototype`, visits a disjoint set of prefix blocks, and the partial
/// results are merged in worker order with Acc::merge. The reduction is a sum
/// of counts, so the result is independent of the worker count.
template <class Acc, class Visit>
Acc scan_reduce(const FieldSpec& f, int m, const ScanOptions& opt, const Acc& prototype, Visit visit) {
  check_budget(f.q(), m, opt.budget);
  const int prefix_len = std::min(packed_size(m), 2);
  std::uint64_t blocks = 1;
  for (int i = 0; i < prefix_len; ++i) blocks *= std::uint64_t(f.q());
  const int workers = std::max(1, std::min<int>(opt.workers, int(blocks)));

  std::vector<Acc> partial(std::size_t(workers), prototype);
  auto run = [&](int w) {
    Acc& acc = partial[std::size_t(w)];
    for (std::uint64_t b = std::uint64_t(w); b < blocks; b += std::uint64_t(workers))
      detail::for_each_in_block(f.q(), m, prefix_len, b, [&](const SymMatrix& a) { visit(acc, a); });
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  Acc out = prototype;
  for (const auto& p : partial) out.merge(p);
  return out;
}

/// Rank and (rank, discriminant class, quadratic type) tallies from a full
/// enumeration of S_m.
struct EnumeratedCensus {
  int m = 0;
  std::vector<Count> by_rank;        // index r
  std::vector<Count> square_disc;    // index r: disc class +1
  std::vector<Count> nonsquare_disc; // index r: disc class -1
  std::vector<Count> hyperbolic;     // index r (even r only populated)
  std::vector<Count> elliptic;

  explicit EnumeratedCensus(int m_ = 0);
  void merge(const EnumeratedCensus& other);
};

EnumeratedCensus enumerate_census(const FieldSpec& f, int m, const ScanOptions& opt = {});

}  // namespace symdet
