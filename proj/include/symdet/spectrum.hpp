#pragma once

// Weight formulas for the diagonal functionals f_k^delta, evaluated exactly
// and cross-checkable against the enumeration layer in codes.hpp.

#include <optional>
#include <string>
#include <vector>

#include "symdet/codes.hpp"
#include "symdet/count.hpp"
#include "symdet/quadform.hpp"
#include "symdet/symmat.hpp"

namespace symdet {

/// Sums over B in S(r, m-1), split by the value of f_{k-1}^delta(B):
///   lambda_sum = sum_{f = 0} lambda_B,  gamma_sum = sum_{f = alpha != 0} gamma_alpha(B).
/// Indexed by k in 1..m (the functional on S_m), delta class and r in 0..m-1.
class KernelSums {
 public:
  KernelSums() = default;
  explicit KernelSums(int m);

  int dim() const { return m_; }  // the m of the code; sums run over S_{m-1}
  Count lambda_sum(int k, int delta_class, int r) const { return at(lambda_, k, delta_class, r); }
  Count gamma_sum(int k, int delta_class, int r) const { return at(gamma_, k, delta_class, r); }
  Count combined(int k, int delta_class, int r) const {
    return lambda_sum(k, delta_class, r) + gamma_sum(k, delta_class, r);
  }

  void add_lambda(int k, int delta_class, int r, Count n) { lambda_[index(k, delta_class, r)] += n; }
  void add_gamma(int k, int delta_class, int r, Count n) { gamma_[index(k, delta_class, r)] += n; }
  void merge(const KernelSums& other);

 private:
  std::size_t index(int k, int delta_class, int r) const;
  Count at(const std::vector<Count>& v, int k, int delta_class, int r) const;

  int m_ = 0;
  std::vector<Count> lambda_, gamma_;
};

/// Enumerates S_{m-1} once and accumulates the closed-form lambda / gamma values.
KernelSums kernel_sums(const FieldSpec& f, int m, const ScanOptions& opt = {});

/// w_k^delta(r, m) from the expanded fiber count over S_{m-1}:
///   (q-1)(q^{m-1} - q^{r-2}) s(r-2, m-1) + (q-2) q^{r-1} s(r-1, m-1) + q^r s(r, m-1)
///   + [lambda + gamma sums at rank r-1] - [lambda + gamma sums at rank r].
Count restricted_weight_formula(const FieldSpec& f, const KernelSums& sums, int k, int delta_class, int r, int m);

/// W_k^delta(t, m) from the closed terms and the rank-t kernel sums.
Count weight_theorem(const FieldSpec& f, const KernelSums& sums, int k, int delta_class, int t, int m);
Count weight_theorem(const FieldSpec& f, int k, int delta_class, int t, int m, const ScanOptions& opt = {});

/// Sum over r = 1..t of restricted_weight_formula.
Count weight_lemma_sum(const FieldSpec& f, const KernelSums& sums, int k, int delta_class, int t, int m);

/// W_1(t, m) in closed form (no enumeration). The q^{-1} term of the even case
/// is carried as an exact rational and the result asserted integral.
Count weight_w1(int q, int t, int m);

/// q^t ((v_+ - v_-)(2t, m-1) - (h - e)_{k-1}^delta(2t, m-1)), from the kernel
/// type census of S_{m-1}. Equals W_k(2t, m) - W_1(2t, m).
Count weight_diff_identity(const FieldSpec& f, const KernelTypeCensus& lower, int k, int delta_class, int t_half,
                           int m);

/// Closed-form minimum-distance value of the corollary for even rank 2t:
/// q^{m-1} n_s(2t-2, m-1) + q^{2t-1} s(2t-1, m-1) + (q^{2t-1} - q^{-1}) s(2t, m-1).
/// Its value is W_1(2t, m) / (q - 1), i.e. the projective minimum distance.
Count corollary_min_distance(int q, int t_half, int m);

struct Candidate {
  int k = 0;
  int delta_class = 1;
  Count weight = 0;
};

struct MinDistanceReport {
  int q = 0, m = 0, t = 0;
  Variant variant = Variant::Affine;
  Count distance = 0;          // for the requested variant
  Count affine_distance = 0;
  std::string method;          // "closed-form" or "candidate-scan"
  std::string theorem;         // "mainthm" for even t, "conjecture" for odd t
  std::vector<Candidate> candidates;  // affine weights of every (k, class); empty if not scanned
  std::optional<Candidate> minimizer;
  std::optional<Count> corollary_value;    // even t only
  bool corollary_matches_projective = false;
  bool scan_agrees = true;     // even t with scan: min over candidates == W_1
  int predicted_class = 0;     // odd t: delta class with -delta a square
  bool prediction_holds = false;
};

/// Even t: closed form (optionally confirmed by a full candidate scan).
/// Odd t: always a candidate scan through weight_theorem.
MinDistanceReport min_distance(const FieldSpec& f, int t, int m, Variant variant, bool scan = false,
                               const ScanOptions& opt = {});
MinDistanceReport min_distance(const FieldSpec& f, const KernelSums& sums, int t, int m, Variant variant,
                               bool scan);

struct BoundReport {
  int k = 0, delta_class = 1, t_half = 0, m = 0;
  Count h = 0, e = 0;
  Rational bound;          // q * P1 + q^{2t} * P2
  Count type_difference = 0;   // (v_+ - v_-)(2t, m)
  bool inequality_holds = false;  // h - e <= bound
  Rational slack;          // (v_+ - v_-)(2t, m) - bound
  bool chain_nonnegative = false;
  bool chain_is_zero = false;
};

/// The upper bound on h - e for rank 2t in S_m.
Rational kernel_difference_bound(int q, int t_half, int m);

BoundReport bound_check(const FieldSpec& f, const KernelTypeCensus& census, int k, int delta_class, int t_half,
                        int m);

struct StratumReport {
  std::string name;
  Count matrices = 0;  // B in the stratum
  Count passed = 0;
  Count hyperbolic_total = 0;
  Count elliptic_total = 0;
  Count min_hyperbolic = 0, max_hyperbolic = 0;
  Count min_elliptic = 0, max_elliptic = 0;
  bool pass() const { return passed == matrices; }
};

struct FiberReport {
  int k = 0, delta_class = 1, t_half = 0, m = 0;
  std::vector<StratumReport> strata;
  Count h = 0, e = 0;  // totals of the fibers, i.e. h_k^delta(2t, m), e_k^delta(2t, m)
  bool all_pass() const;
};

/// Fibers of deleting the first row and column, restricted to rank-2t matrices
/// with f_k^delta = 0, checked stratum by stratum. Reports for every k in 1..m
/// and both delta classes come out of one enumeration of S_m.
std::vector<FiberReport> fiber_census_all(const FieldSpec& f, int t_half, int m,
                                          std::uint64_t budget = kDefaultBudget);
FiberReport fiber_census(const FieldSpec& f, int k, int delta_class, int t_half, int m,
                         std::uint64_t budget = kDefaultBudget);

struct ConjectureReport {
  int q = 0, t = 0, m = 0;
  Count w1 = 0;
  Count w2_square = 0;     // delta = 1
  Count w2_nonsquare = 0;  // delta = canonical non-square
  int minus_delta_square_class = 0;  // delta class for which -delta is a square
  Count w2_low = 0;   // W_2 with -delta a square
  Count w2_high = 0;  // W_2 with -delta a non-square
  bool ordered = false;      // w2_low < w1 < w2_high
  bool equal_gaps = false;
  Count theta = 0;           // w1 - w2_low
  bool reversed_ordering = false;  // w2_high < w1 < w2_low
  bool low_is_global_min = false;
  Count global_min = 0;
  bool holds() const { return ordered && equal_gaps && theta > 0 && low_is_global_min; }
};

ConjectureReport conjecture_check(const FieldSpec& f, const KernelSums& sums, int t, int m);
ConjectureReport conjecture_check(const FieldSpec& f, int t, int m, const ScanOptions& opt = {});

enum class WeightMethod { BruteForce, LemmaRestwt, ThmWeightoffk, ClosedW1, DiffIdentity };
const char* to_string(WeightMethod method);

struct WeightReport {
  int q = 0, m = 0, t = 0, k = 0, delta_class = 1;
  Count value = 0;  // the ThmWeightoffk value
  std::vector<std::pair<WeightMethod, Count>> values;  // every applicable method
  bool agree() const;
};

/// Precomputed inputs for weight_report; build once per (q, m).
struct WeightContext {
  KernelSums sums;
  std::optional<KernelTypeCensus> lower;          // S_{m-1}, for the difference identity
  std::optional<RestrictedWeightTable> brute;     // S_m, when within budget
};
WeightContext weight_context(const FieldSpec& f, int m, bool brute_force, const ScanOptions& opt = {});
WeightReport weight_report(const FieldSpec& f, const WeightContext& ctx, int k, int delta_class, int t, int m);

/// Number of coefficient matrices F in S(k, m) with discriminant class
/// delta_class, in closed form: odd k splits evenly, even k follows the type.
Count class_multiplicity(const FieldSpec& f, int k, int delta_class, int m);

/// The weight spectrum from the formula layer and closed-form multiplicities.
Spectrum spectrum_from_formula(const FieldSpec& f, const KernelSums& sums, const CodeId& id);

}  // namespace symdet
