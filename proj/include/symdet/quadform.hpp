#pragma once

// Quadratic forms Q_B(X) = X B X^T: parabolic / hyperbolic / elliptic
// classification, and the row-span solution counts lambda_B and gamma_alpha.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "symdet/count.hpp"
#include "symdet/gf.hpp"
#include "symdet/symmat.hpp"

namespace symdet {

enum class QuadKind { Zero, Parabolic, Hyperbolic, Elliptic };

const char* to_string(QuadKind kind);

struct QuadFormClass {
  int rank = 0;
  QuadKind kind = QuadKind::Zero;

  friend bool operator==(const QuadFormClass&, const QuadFormClass&) = default;
};

QuadFormClass classify(const FieldSpec& f, int rank, int disc_class);
QuadFormClass classify(const FieldSpec& f, const SymMatrix& b);

/// Affine zeros in F_q^r of a nondegenerate rank-r form. `type` is +1 / -1
/// for hyperbolic / elliptic and ignored for odd r. Rank 0 gives 1.
Count nondegenerate_zero_count(int q, int rank, int type);

/// lambda_B: row-span vectors XB with X B X^T = 0, from the classification.
Count lambda_closed(const FieldSpec& f, int rank, int disc_class);
Count lambda(const FieldSpec& f, const SymMatrix& b);

/// gamma_alpha(B): row-span vectors XB with X B X^T + alpha = 0, from the
/// projective point counts of diag(B, alpha) and B. Throws ZeroAlpha.
Count gamma_closed(const FieldSpec& f, int rank, int disc_class, Fe alpha);
Count gamma(const FieldSpec& f, const SymMatrix& b, Fe alpha);

/// Value histogram of sum_i d_i x_i^2 over all x in F_q^r, by enumeration.
std::vector<Count> diagonal_value_histogram(const FieldSpec& f, std::span<const Fe> diag);

/// Memoizes diagonal_value_histogram by the diagonal tuple. Not thread-safe;
/// give each worker its own cache.
class HistogramCache {
 public:
  explicit HistogramCache(const FieldSpec& f) : f_(&f) {}
  const std::vector<Count>& get(std::span<const Fe> diag);

 private:
  const FieldSpec* f_;
  std::unordered_map<std::uint64_t, std::vector<Count>> cache_;
};

/// Histogram of X B X^T over Rowspan(B): index v counts row-span vectors with
/// value v. Brute force over F_q^r of the diagonalized form.
std::vector<Count> rowspan_histogram_bf(const FieldSpec& f, const SymMatrix& b);
std::vector<Count> rowspan_histogram_bf(const FieldSpec& f, const SymMatrix& b, HistogramCache& cache);

/// Same histogram without diagonalizing: enumerates every X in F_q^m and keeps
/// one representative per distinct row-span vector XB. Exponential in m.
std::vector<Count> rowspan_histogram_direct(const FieldSpec& f, const SymMatrix& b);

Count lambda_bf(const FieldSpec& f, const SymMatrix& b);
Count gamma_bf(const FieldSpec& f, const SymMatrix& b, Fe alpha);

/// Recovers the type of an even-rank form from its zero count (the inverse of
/// nondegenerate_zero_count); Zero / Parabolic for rank 0 / odd rank.
QuadFormClass classify_by_zero_count(const FieldSpec& f, int rank, Count zeros);

// ---------------------------------------------------------------------------
// Kernel type census: p, h, e counts for the diagonal functionals f_k^delta.

/// f_k^delta(A) = A_11 + ... + A_{k-1,k-1} + delta * A_kk (1-based k); the
/// zero function for k = 0.
Fe diagonal_functional(const FieldSpec& f, int k, Fe delta, const SymMatrix& a);

inline int class_index(int delta_class) { return delta_class > 0 ? 0 : 1; }

/// Counts of matrices A in S_m with f_k^delta(A) = 0, split by rank and type,
/// for every k in 0..m and both delta classes.
class KernelTypeCensus {
 public:
  explicit KernelTypeCensus(int m = 0);

  int dim() const { return m_; }
  /// All matrices of rank r with f = 0.
  Count kernel(int k, int delta_class, int r) const { return at(total_, k, delta_class, r); }
  /// p_k^delta(r, m) for odd r.
  Count parabolic(int k, int delta_class, int r) const { return at(par_, k, delta_class, r); }
  /// h_k^delta(r, m) for even r (the zero matrix counts as hyperbolic).
  Count hyperbolic(int k, int delta_class, int r) const { return at(hyp_, k, delta_class, r); }
  /// e_k^delta(r, m) for even r.
  Count elliptic(int k, int delta_class, int r) const { return at(ell_, k, delta_class, r); }

  void add(int k, int delta_class, int r, int type, Count n);
  void merge(const KernelTypeCensus& other);

  friend bool operator==(const KernelTypeCensus&, const KernelTypeCensus&) = default;

 private:
  std::size_t index(int k, int delta_class, int r) const;
  Count at(const std::vector<Count>& v, int k, int delta_class, int r) const;

  int m_;
  std::vector<Count> total_, par_, hyp_, ell_;
};

enum class KernelMethod {
  Direct,    // enumerate S_m
  Bordered,  // enumerate S_{m-1}, count extensions exactly
  Auto,      // Direct when within budget, else Bordered
};

KernelTypeCensus kernel_type_census(const FieldSpec& f, int m, KernelMethod method = KernelMethod::Auto,
                                    const ScanOptions& opt = {});

struct TypeSplit {
  Count p = 0;  // odd r
  Count h = 0;  // even r
  Count e = 0;  // even r
};

/// p_k^delta(r, m) for odd r, (h, e) for even r, by direct enumeration.
TypeSplit type_split(const FieldSpec& f, int k, int delta_class, int r, int m,
                     std::uint64_t budget = kDefaultBudget);

}  // namespace symdet
