#include "symdet/spectrum.hpp"

#include <array>
#include <map>

namespace symdet {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, what);
}

Count pw(int q, int e) { return ipow(Count(q), e); }

// The diagonal prefix sums f_j^delta(A) for j = 0..m, both delta classes,
// in one pass over the diagonal. out[c][j] with c = class_index.
void diagonal_functionals(const FieldSpec& f, const SymMatrix& a,
                          std::array<std::array<Fe, kMaxDim + 1>, 2>& out) {
  const int m = a.dim();
  const Fe reps[2] = {f.class_representative(1), f.class_representative(-1)};
  Fe prefix{0};
  for (int c = 0; c < 2; ++c) out[c][0] = Fe{0};
  for (int j = 1; j <= m; ++j) {
    const Fe d = a(j - 1, j - 1);
    for (int c = 0; c < 2; ++c) out[c][j] = f.add(prefix, f.mul(reps[c], d));
    prefix = f.add(prefix, d);
  }
}

int class_of(int c) { return c == 0 ? 1 : -1; }

}  // namespace

// ---------------------------------------------------------------------------
// KernelSums

KernelSums::KernelSums(int m) : m_(m), lambda_(std::size_t(2 * m * m), 0), gamma_(std::size_t(2 * m * m), 0) {}

std::size_t KernelSums::index(int k, int delta_class, int r) const {
  return std::size_t(((k - 1) * 2 + class_index(delta_class)) * m_ + r);
}

Count KernelSums::at(const std::vector<Count>& v, int k, int delta_class, int r) const {
  if (k < 1 || k > m_ || r < 0 || r >= m_) return 0;
  return v[index(k, delta_class, r)];
}

void KernelSums::merge(const KernelSums& other) {
  for (std::size_t i = 0; i < lambda_.size(); ++i) {
    lambda_[i] = checked_add(lambda_[i], other.lambda_[i]);
    gamma_[i] = checked_add(gamma_[i], other.gamma_[i]);
  }
}

KernelSums kernel_sums(const FieldSpec& f, int m, const ScanOptions& opt) {
  require(m >= 1 && m <= kMaxDim, "kernel_sums needs 1 <= m <= 8");
  const int q = f.q();
  const int n = m - 1;
  // Closed-form lambda and gamma per (rank, class, alpha), looked up in the scan.
  std::vector<Count> lam(std::size_t(2 * (n + 1)));
  std::vector<Count> gam(std::size_t(2 * (n + 1) * q));
  for (int r = 0; r <= n; ++r)
    for (int c = 0; c < 2; ++c) {
      if (r == 0 && c == 1) continue;
      lam[std::size_t(r * 2 + c)] = lambda_closed(f, r, class_of(c));
      for (int alpha = 1; alpha < q; ++alpha)
        gam[std::size_t((r * 2 + c) * q + alpha)] = gamma_closed(f, r, class_of(c), Fe{std::uint8_t(alpha)});
    }
  return scan_reduce(f, n, opt, KernelSums(m), [&](KernelSums& acc, const SymMatrix& b) {
    const RankDisc rd = rank_disc(f, b);
    const int bc = class_index(rd.disc_class);
    std::array<std::array<Fe, kMaxDim + 1>, 2> fv;
    diagonal_functionals(f, b, fv);
    for (int k = 1; k <= m; ++k)
      for (int c = 0; c < 2; ++c) {
        const Fe g = fv[c][k - 1];
        if (g.value == 0)
          acc.add_lambda(k, class_of(c), rd.rank, lam[std::size_t(rd.rank * 2 + bc)]);
        else
          acc.add_gamma(k, class_of(c), rd.rank, gam[std::size_t((rd.rank * 2 + bc) * q + g.value)]);
      }
  });
}

// ---------------------------------------------------------------------------
// Weight formulas

Count restricted_weight_formula(const FieldSpec& f, const KernelSums& sums, int k, int delta_class, int r, int m) {
  require(sums.dim() == m, "kernel sums were computed for a different m");
  require(k >= 1 && k <= m, "k must lie in 1..m");
  require(r >= 0, "rank must be non-negative");
  const int q = f.q();
  Count w = 0;
  if (r >= 2)
    w = checked_add(w, checked_mul(checked_mul(q - 1, pw(q, m - 1) - pw(q, r - 2)), sym_rank_count(q, r - 2, m - 1)));
  if (r >= 1) {
    w = checked_add(w, checked_mul(checked_mul(q - 2, pw(q, r - 1)), sym_rank_count(q, r - 1, m - 1)));
    w = checked_add(w, sums.combined(k, delta_class, r - 1));
  }
  w = checked_add(w, checked_mul(pw(q, r), sym_rank_count(q, r, m - 1)));
  return checked_sub(w, sums.combined(k, delta_class, r));
}

Count weight_lemma_sum(const FieldSpec& f, const KernelSums& sums, int k, int delta_class, int t, int m) {
  Count total = 0;
  for (int r = 1; r <= t; ++r) total = checked_add(total, restricted_weight_formula(f, sums, k, delta_class, r, m));
  return total;
}

Count weight_theorem(const FieldSpec& f, const KernelSums& sums, int k, int delta_class, int t, int m) {
  require(sums.dim() == m, "kernel sums were computed for a different m");
  require(k >= 1 && k <= m, "k must lie in 1..m");
  require(t >= 1 && t <= m, "t must lie in 1..m");
  const int q = f.q();
  Count w = checked_mul(checked_mul(q - 1, pw(q, m - 1)), cone_size(q, t - 2, m - 1));
  w = checked_add(w, checked_mul(checked_mul(q - 1, pw(q, t - 1)), sym_rank_count(q, t - 1, m - 1)));
  w = checked_add(w, checked_mul(pw(q, t), sym_rank_count(q, t, m - 1)));
  return checked_sub(w, sums.combined(k, delta_class, t));
}

Count weight_theorem(const FieldSpec& f, int k, int delta_class, int t, int m, const ScanOptions& opt) {
  return weight_theorem(f, kernel_sums(f, m, opt), k, delta_class, t, m);
}

Count weight_w1(int q, int t, int m) {
  require(t >= 1 && t <= m, "t must lie in 1..m");
  Count w = checked_mul(checked_mul(q - 1, pw(q, m - 1)), cone_size(q, t - 2, m - 1));
  if (t % 2 == 1) {
    const Count s = checked_add(sym_rank_count(q, t - 1, m - 1), sym_rank_count(q, t, m - 1));
    return checked_add(w, checked_mul(checked_mul(q - 1, pw(q, t - 1)), s));
  }
  w = checked_add(w, checked_mul(checked_mul(q - 1, pw(q, t - 1)), sym_rank_count(q, t - 1, m - 1)));
  // (q - 1)(q^{t-1} - q^{-1}) s(t, m-1)
  const Rational last = Rational(q - 1) * (Rational(pw(q, t - 1)) - Rational(1, q)) * Rational(sym_rank_count(q, t, m - 1));
  return checked_add(w, last.to_integer());
}

Count weight_diff_identity(const FieldSpec& f, const KernelTypeCensus& lower, int k, int delta_class, int t_half,
                           int m) {
  require(lower.dim() == m - 1, "type census must be over S_{m-1}");
  require(k >= 1 && k <= m, "k must lie in 1..m");
  require(t_half >= 1 && 2 * t_half <= m, "need 1 <= 2t <= m");
  const int q = f.q();
  const int two_t = 2 * t_half;
  const Count v = checked_sub(even_type_count(q, 1, two_t, m - 1), even_type_count(q, -1, two_t, m - 1));
  const Count he = checked_sub(lower.hyperbolic(k - 1, delta_class, two_t), lower.elliptic(k - 1, delta_class, two_t));
  return checked_mul(pw(q, t_half), checked_sub(v, he));
}

Count corollary_min_distance(int q, int t_half, int m) {
  require(t_half >= 1 && 2 * t_half <= m, "need 1 <= 2t <= m");
  const int two_t = 2 * t_half;
  Rational d = Rational(checked_mul(pw(q, m - 1), cone_size(q, two_t - 2, m - 1)));
  d = d + Rational(checked_mul(pw(q, two_t - 1), sym_rank_count(q, two_t - 1, m - 1)));
  d = d + (Rational(pw(q, two_t - 1)) - Rational(1, q)) * Rational(sym_rank_count(q, two_t, m - 1));
  return d.to_integer();
}

// ---------------------------------------------------------------------------
// Minimum distance

MinDistanceReport min_distance(const FieldSpec& f, const KernelSums& sums, int t, int m, Variant variant,
                               bool scan) {
  validate(CodeId{f.q(), m, t, variant});
  const int q = f.q();
  MinDistanceReport rep;
  rep.q = q;
  rep.m = m;
  rep.t = t;
  rep.variant = variant;
  rep.predicted_class = f.chi(f.neg(Fe{1})) > 0 ? 1 : -1;  // -delta square iff delta ~ -1
  const bool even = t % 2 == 0;
  if (!even || scan) {
    for (int k = 1; k <= m; ++k)
      for (int dc : {1, -1}) rep.candidates.push_back({k, dc, weight_theorem(f, sums, k, dc, t, m)});
    for (const auto& c : rep.candidates)
      if (!rep.minimizer || c.weight < rep.minimizer->weight) rep.minimizer = c;
  }
  if (even) {
    rep.method = "closed-form";
    rep.theorem = "mainthm";
    rep.affine_distance = weight_w1(q, t, m);
    rep.corollary_value = corollary_min_distance(q, t / 2, m);
    rep.corollary_matches_projective = *rep.corollary_value == exact_div(rep.affine_distance, q - 1);
    if (rep.minimizer) rep.scan_agrees = rep.minimizer->weight == rep.affine_distance;
  } else {
    rep.method = "candidate-scan";
    rep.theorem = "conjecture";
    rep.affine_distance = rep.minimizer->weight;
    if (m >= 2) {
      const Count predicted = weight_theorem(f, sums, 2, rep.predicted_class, t, m);
      rep.prediction_holds = predicted == rep.affine_distance;
    }
  }
  rep.distance = variant == Variant::Affine ? rep.affine_distance : exact_div(rep.affine_distance, q - 1);
  return rep;
}

MinDistanceReport min_distance(const FieldSpec& f, int t, int m, Variant variant, bool scan,
                               const ScanOptions& opt) {
  validate(CodeId{f.q(), m, t, variant});
  if (t % 2 == 0 && !scan) {
    // Closed form only; no enumeration needed.
    return min_distance(f, KernelSums(m), t, m, variant, false);
  }
  return min_distance(f, kernel_sums(f, m, opt), t, m, variant, scan);
}

// ---------------------------------------------------------------------------
// Kernel difference bound

Rational kernel_difference_bound(int q, int t_half, int m) {
  require(t_half >= 1 && 2 * t_half <= m, "need 1 <= 2t <= m");
  const int two_t = 2 * t_half;
  Count p1n = 1, p1d = 1, p2n = 1, p2d = 1;
  for (int i = 0; i <= two_t - 2; ++i) p1n = checked_mul(p1n, pw(q, m - 1) - pw(q, i));
  for (int i = 0; i <= t_half - 2; ++i) p1d = checked_mul(p1d, pw(q, two_t - 2) - pw(q, 2 * i));
  for (int i = 0; i <= two_t - 1; ++i) p2n = checked_mul(p2n, pw(q, m - 1) - pw(q, i));
  for (int i = 0; i <= t_half - 1; ++i) p2d = checked_mul(p2d, pw(q, two_t) - pw(q, 2 * i));
  return Rational(q) * Rational(p1n, p1d) + Rational(pw(q, two_t)) * Rational(p2n, p2d);
}

BoundReport bound_check(const FieldSpec& f, const KernelTypeCensus& census, int k, int delta_class, int t_half,
                        int m) {
  require(census.dim() == m, "type census must be over S_m");
  require(k >= 0 && k <= m, "k must lie in 0..m");
  const int q = f.q();
  BoundReport rep;
  rep.k = k;
  rep.delta_class = delta_class;
  rep.t_half = t_half;
  rep.m = m;
  rep.h = census.hyperbolic(k, delta_class, 2 * t_half);
  rep.e = census.elliptic(k, delta_class, 2 * t_half);
  rep.bound = kernel_difference_bound(q, t_half, m);
  rep.inequality_holds = Rational(rep.h - rep.e) <= rep.bound;
  rep.type_difference = even_type_count(q, 1, 2 * t_half, m) - even_type_count(q, -1, 2 * t_half, m);
  rep.slack = Rational(rep.type_difference) - rep.bound;
  rep.chain_nonnegative = Rational(0) <= rep.slack;
  rep.chain_is_zero = rep.slack == Rational(0);
  return rep;
}

// ---------------------------------------------------------------------------
// Fiber census

bool FiberReport::all_pass() const {
  for (const auto& s : strata)
    if (!s.pass()) return false;
  return true;
}

namespace {

enum Stratum { kLower, kOddZero, kOddNonzero, kTopZero, kTopNonzero, kOther, kStrata };

const char* stratum_name(int s) {
  switch (s) {
    case kLower: return "rank 2t-2";
    case kOddZero: return "rank 2t-1, f=0";
    case kOddNonzero: return "rank 2t-1, f!=0";
    case kTopZero: return "rank 2t, f=0";
    case kTopNonzero: return "rank 2t, f!=0";
    default: return "other ranks";
  }
}

void observe(StratumReport& s, Count hyp, Count ell, bool ok) {
  if (s.matrices == 0) {
    s.min_hyperbolic = s.max_hyperbolic = hyp;
    s.min_elliptic = s.max_elliptic = ell;
  } else {
    s.min_hyperbolic = std::min(s.min_hyperbolic, hyp);
    s.max_hyperbolic = std::max(s.max_hyperbolic, hyp);
    s.min_elliptic = std::min(s.min_elliptic, ell);
    s.max_elliptic = std::max(s.max_elliptic, ell);
  }
  ++s.matrices;
  s.hyperbolic_total += hyp;
  s.elliptic_total += ell;
  if (ok) ++s.passed;
}

}  // namespace

std::vector<FiberReport> fiber_census_all(const FieldSpec& f, int t_half, int m, std::uint64_t budget) {
  require(m >= 2 && m <= kMaxDim, "fiber census needs 2 <= m <= 8");
  require(t_half >= 1 && 2 * t_half <= m, "need 1 <= 2t <= m");
  check_budget(f.q(), m, budget);
  const int q = f.q();
  const int n = packed_size(m);
  const int nb = packed_size(m - 1);
  std::size_t minors = 1;
  for (int i = 0; i < nb; ++i) minors *= std::size_t(q);
  const int two_t = 2 * t_half;
  const int pairs = 2 * m;  // (k - 1, class)

  // fibers[(pair * minors + code) * 2 + {0 hyperbolic, 1 elliptic}]
  std::vector<std::uint32_t> fibers(std::size_t(pairs) * minors * 2, 0);
  std::array<std::array<Fe, kMaxDim + 1>, 2> fv;
  for_each_matrix(
      f, m,
      [&](const SymMatrix& a) {
        const RankDisc rd = rank_disc(f, a);
        if (rd.rank != two_t) return;
        const int type = even_rank_type(f, rd.rank, rd.disc_class) > 0 ? 0 : 1;
        const auto p = a.packed_view();
        std::size_t code = 0;
        for (int i = m; i < n; ++i) code = code * std::size_t(q) + p[std::size_t(i)];
        diagonal_functionals(f, a, fv);
        for (int k = 1; k <= m; ++k)
          for (int c = 0; c < 2; ++c)
            if (fv[c][k].value == 0) ++fibers[((std::size_t((k - 1) * 2 + c)) * minors + code) * 2 + std::size_t(type)];
      },
      budget);

  std::vector<FiberReport> reports;
  for (int k = 1; k <= m; ++k)
    for (int c = 0; c < 2; ++c) {
      FiberReport r;
      r.k = k;
      r.delta_class = class_of(c);
      r.t_half = t_half;
      r.m = m;
      for (int s = 0; s < kStrata; ++s) r.strata.push_back(StratumReport{stratum_name(s)});
      reports.push_back(std::move(r));
    }

  const Count qt1 = pw(q, t_half - 1);
  const Count q2t1 = pw(q, two_t - 1);
  const Count lower_fiber = pw(q, m - 1) - pw(q, two_t - 2);
  const Count odd_zero_h = Count(q - 1) / 2 * qt1 * (qt1 + 1);
  const Count odd_zero_e = Count(q - 1) / 2 * qt1 * (qt1 - 1);

  std::size_t code = 0;
  detail::for_each_in_block(q, m - 1, 0, 0, [&](const SymMatrix& b) {
    const RankDisc rd = rank_disc(f, b);
    const int btype = rd.rank % 2 == 0 ? even_rank_type(f, rd.rank, rd.disc_class) : 0;
    diagonal_functionals(f, b, fv);
    for (int k = 1; k <= m; ++k)
      for (int c = 0; c < 2; ++c) {
        FiberReport& rep = reports[std::size_t((k - 1) * 2 + c)];
        const std::size_t base = ((std::size_t((k - 1) * 2 + c)) * minors + code) * 2;
        const Count hyp = fibers[base];
        const Count ell = fibers[base + 1];
        rep.h += hyp;
        rep.e += ell;
        const bool fzero = fv[c][k - 1].value == 0;
        int s;
        bool ok;
        if (rd.rank == two_t - 2) {
          s = kLower;
          ok = hyp == (btype > 0 ? lower_fiber : 0) && ell == (btype < 0 ? lower_fiber : 0);
        } else if (rd.rank == two_t - 1) {
          s = fzero ? kOddZero : kOddNonzero;
          ok = fzero ? (hyp == odd_zero_h && ell == odd_zero_e) : (hyp - ell == -qt1);
        } else if (rd.rank == two_t) {
          s = fzero ? kTopZero : kTopNonzero;
          Count want_h, want_e;
          if (fzero) {
            want_h = btype > 0 ? q2t1 + pw(q, t_half) - qt1 : 0;
            want_e = btype < 0 ? q2t1 - pw(q, t_half) + qt1 : 0;
          } else {
            want_h = btype > 0 ? q2t1 - qt1 : 0;
            want_e = btype < 0 ? q2t1 + qt1 : 0;
          }
          ok = hyp == want_h && ell == want_e;
        } else {
          s = kOther;
          ok = hyp == 0 && ell == 0;
        }
        observe(rep.strata[std::size_t(s)], hyp, ell, ok);
      }
    ++code;
  });
  return reports;
}

FiberReport fiber_census(const FieldSpec& f, int k, int delta_class, int t_half, int m, std::uint64_t budget) {
  require(k >= 1 && k <= m, "k must lie in 1..m");
  auto all = fiber_census_all(f, t_half, m, budget);
  return all[std::size_t((k - 1) * 2 + class_index(delta_class))];
}

// ---------------------------------------------------------------------------
// Odd-rank ordering

ConjectureReport conjecture_check(const FieldSpec& f, const KernelSums& sums, int t, int m) {
  require(t % 2 == 1 && t >= 1 && t < m, "needs odd t < m");
  ConjectureReport rep;
  rep.q = f.q();
  rep.t = t;
  rep.m = m;
  rep.w1 = weight_w1(f.q(), t, m);
  rep.w2_square = weight_theorem(f, sums, 2, 1, t, m);
  rep.w2_nonsquare = weight_theorem(f, sums, 2, -1, t, m);
  // -delta is a square exactly when delta lies in the class of -1.
  rep.minus_delta_square_class = f.chi(f.neg(Fe{1})) > 0 ? 1 : -1;
  rep.w2_low = rep.minus_delta_square_class > 0 ? rep.w2_square : rep.w2_nonsquare;
  rep.w2_high = rep.minus_delta_square_class > 0 ? rep.w2_nonsquare : rep.w2_square;
  rep.ordered = rep.w2_low < rep.w1 && rep.w1 < rep.w2_high;
  rep.reversed_ordering = rep.w2_high < rep.w1 && rep.w1 < rep.w2_low;
  rep.theta = rep.w1 - rep.w2_low;
  rep.equal_gaps = rep.w1 - rep.w2_low == rep.w2_high - rep.w1;
  rep.global_min = rep.w1;
  for (int k = 1; k <= m; ++k)
    for (int dc : {1, -1}) rep.global_min = std::min(rep.global_min, weight_theorem(f, sums, k, dc, t, m));
  rep.low_is_global_min = rep.w2_low == rep.global_min;
  return rep;
}

ConjectureReport conjecture_check(const FieldSpec& f, int t, int m, const ScanOptions& opt) {
  return conjecture_check(f, kernel_sums(f, m, opt), t, m);
}

// ---------------------------------------------------------------------------
// Weight reports

const char* to_string(WeightMethod method) {
  switch (method) {
    case WeightMethod::BruteForce: return "BruteForce";
    case WeightMethod::LemmaRestwt: return "LemmaRestwt";
    case WeightMethod::ThmWeightoffk: return "ThmWeightoffk";
    case WeightMethod::ClosedW1: return "ClosedW1";
    case WeightMethod::DiffIdentity: return "DiffIdentity";
  }
  return "?";
}

bool WeightReport::agree() const {
  for (const auto& [method, v] : values)
    if (v != value) return false;
  return true;
}

WeightContext weight_context(const FieldSpec& f, int m, bool brute_force, const ScanOptions& opt) {
  WeightContext ctx;
  ctx.sums = kernel_sums(f, m, opt);
  if (m >= 2) ctx.lower = kernel_type_census(f, m - 1, KernelMethod::Auto, opt);
  if (brute_force) ctx.brute = restricted_weight_table_bf(f, m, opt);
  return ctx;
}

WeightReport weight_report(const FieldSpec& f, const WeightContext& ctx, int k, int delta_class, int t, int m) {
  WeightReport rep;
  rep.q = f.q();
  rep.m = m;
  rep.t = t;
  rep.k = k;
  rep.delta_class = delta_class;
  rep.value = weight_theorem(f, ctx.sums, k, delta_class, t, m);
  if (ctx.brute) rep.values.emplace_back(WeightMethod::BruteForce, ctx.brute->weight(k, delta_class, t));
  rep.values.emplace_back(WeightMethod::LemmaRestwt, weight_lemma_sum(f, ctx.sums, k, delta_class, t, m));
  rep.values.emplace_back(WeightMethod::ThmWeightoffk, rep.value);
  if (k == 1) rep.values.emplace_back(WeightMethod::ClosedW1, weight_w1(f.q(), t, m));
  if (t % 2 == 0 && ctx.lower)
    rep.values.emplace_back(WeightMethod::DiffIdentity,
                            checked_add(weight_w1(f.q(), t, m), weight_diff_identity(f, *ctx.lower, k, delta_class, t / 2, m)));
  return rep;
}

Count class_multiplicity(const FieldSpec& f, int k, int delta_class, int m) {
  const int q = f.q();
  if (k == 0) return delta_class > 0 ? 1 : 0;
  if (k % 2 == 1) return sym_rank_count(q, k, m) / 2;
  // Even rank 2s: hyperbolic iff chi((-1)^s) * disc_class = +1.
  const int s = k / 2;
  const int sign = (s % 2 == 0 ? 1 : f.chi(f.neg(Fe{1}))) * delta_class;
  return even_type_count(q, sign, k, m);
}

Spectrum spectrum_from_formula(const FieldSpec& f, const KernelSums& sums, const CodeId& id) {
  validate(id);
  const int q = f.q();
  Spectrum out;
  out.classes.push_back({0, 0, 0, 1});
  for (int k = 1; k <= id.m; ++k)
    for (int dc : {1, -1}) {
      Count w = weight_theorem(f, sums, k, dc, id.t, id.m);
      if (id.variant == Variant::Projective) w = exact_div(w, q - 1);
      out.classes.push_back({k, dc, w, class_multiplicity(f, k, dc, id.m)});
    }
  std::map<Count, Count> by_weight;
  for (const auto& c : out.classes)
    if (c.multiplicity > 0) by_weight[c.weight] += c.multiplicity;
  out.weights.assign(by_weight.begin(), by_weight.end());
  return out;
}

}  // namespace symdet
