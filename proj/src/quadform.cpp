#include "symdet/quadform.hpp"

#include <string>
#include <unordered_set>

namespace symdet {

const char* to_string(QuadKind kind) {
  switch (kind) {
    case QuadKind::Zero: return "zero";
    case QuadKind::Parabolic: return "parabolic";
    case QuadKind::Hyperbolic: return "hyperbolic";
    case QuadKind::Elliptic: return "elliptic";
  }
  return "unknown";
}

QuadFormClass classify(const FieldSpec& f, int rank, int disc_class) {
  if (rank == 0) return {0, QuadKind::Zero};
  if (rank % 2 == 1) return {rank, QuadKind::Parabolic};
  return {rank, even_rank_type(f, rank, disc_class) > 0 ? QuadKind::Hyperbolic : QuadKind::Elliptic};
}

QuadFormClass classify(const FieldSpec& f, const SymMatrix& b) {
  const auto form = canonical_form(f, b);
  return classify(f, form.rank, form.delta_class);
}

Count nondegenerate_zero_count(int q, int rank, int type) {
  if (rank == 0) return 1;
  if (rank % 2 == 1) return ipow(q, rank - 1);
  const int s = rank / 2;
  const Count tail = ipow(q, s) - ipow(q, s - 1);
  return type > 0 ? ipow(q, 2 * s - 1) + tail : ipow(q, 2 * s - 1) - tail;
}

Count lambda_closed(const FieldSpec& f, int rank, int disc_class) {
  return nondegenerate_zero_count(f.q(), rank, even_rank_type(f, rank, rank == 0 ? 1 : disc_class));
}

Count lambda(const FieldSpec& f, const SymMatrix& b) {
  const auto rd = rank_disc(f, b);
  return lambda_closed(f, rd.rank, rd.disc_class);
}

Count gamma_closed(const FieldSpec& f, int rank, int disc_class, Fe alpha) {
  if (alpha.value == 0) throw Error(ErrorKind::ZeroAlpha, "gamma requires a non-zero alpha");
  const int base_class = rank == 0 ? 1 : disc_class;
  const int extended_class = base_class * f.chi(alpha);
  // Points of diag(B, alpha) in P^r minus points of B in P^{r-1}; the
  // affine zero counts differ from the projective ones by (z - 1)/(q - 1).
  const Count extended = nondegenerate_zero_count(f.q(), rank + 1, even_rank_type(f, rank + 1, extended_class));
  const Count base = nondegenerate_zero_count(f.q(), rank, even_rank_type(f, rank, base_class));
  return exact_div(extended - base, f.q() - 1);
}

Count gamma(const FieldSpec& f, const SymMatrix& b, Fe alpha) {
  const auto rd = rank_disc(f, b);
  return gamma_closed(f, rd.rank, rd.disc_class, alpha);
}

std::vector<Count> diagonal_value_histogram(const FieldSpec& f, std::span<const Fe> diag) {
  const int q = f.q();
  const int r = int(diag.size());
  std::vector<Count> hist(std::size_t(q), 0);
  std::array<std::uint8_t, kMaxDim> x{};
  while (true) {
    Fe v{0};
    for (int i = 0; i < r; ++i) v = f.add(v, f.mul(diag[std::size_t(i)], f.mul(Fe{x[std::size_t(i)]}, Fe{x[std::size_t(i)]})));
    ++hist[v.value];
    int i = r - 1;
    while (i >= 0 && x[std::size_t(i)] == q - 1) x[std::size_t(i--)] = 0;
    if (i < 0) break;
    ++x[std::size_t(i)];
  }
  return hist;
}

const std::vector<Count>& HistogramCache::get(std::span<const Fe> diag) {
  std::uint64_t key = diag.size();
  for (const Fe d : diag) key = key * 256 + d.value;
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, diagonal_value_histogram(*f_, diag)).first;
  return it->second;
}

std::vector<Count> rowspan_histogram_bf(const FieldSpec& f, const SymMatrix& b) {
  const auto d = congruence_diagonalize(f, b);
  return diagonal_value_histogram(f, std::span<const Fe>(d.diagonal.data(), std::size_t(d.rank)));
}

std::vector<Count> rowspan_histogram_bf(const FieldSpec& f, const SymMatrix& b, HistogramCache& cache) {
  std::array<Fe, kMaxDim> piv{};
  const int r = diagonal_pivots(f, b, piv);
  return cache.get(std::span<const Fe>(piv.data(), std::size_t(r)));
}

std::vector<Count> rowspan_histogram_direct(const FieldSpec& f, const SymMatrix& b) {
  const int q = f.q();
  const int m = b.dim();
  std::vector<Count> hist(std::size_t(q), 0);
  std::unordered_set<std::uint64_t> seen;
  std::array<std::uint8_t, kMaxDim> x{};
  while (true) {
    std::uint64_t key = 0;
    Fe value{0};
    for (int j = 0; j < m; ++j) {
      Fe y{0};
      for (int i = 0; i < m; ++i) y = f.add(y, f.mul(Fe{x[std::size_t(i)]}, b(i, j)));
      key = key * std::uint64_t(q) + y.value;
      value = f.add(value, f.mul(y, Fe{x[std::size_t(j)]}));
    }
    if (seen.insert(key).second) ++hist[value.value];
    int i = m - 1;
    while (i >= 0 && x[std::size_t(i)] == q - 1) x[std::size_t(i--)] = 0;
    if (i < 0) break;
    ++x[std::size_t(i)];
  }
  return hist;
}

Count lambda_bf(const FieldSpec& f, const SymMatrix& b) { return rowspan_histogram_bf(f, b)[0]; }

Count gamma_bf(const FieldSpec& f, const SymMatrix& b, Fe alpha) {
  if (alpha.value == 0) throw Error(ErrorKind::ZeroAlpha, "gamma requires a non-zero alpha");
  return rowspan_histogram_bf(f, b)[f.neg(alpha).value];
}

QuadFormClass classify_by_zero_count(const FieldSpec& f, int rank, Count zeros) {
  if (rank == 0) return {0, QuadKind::Zero};
  if (rank % 2 == 1) return {rank, QuadKind::Parabolic};
  if (zeros == nondegenerate_zero_count(f.q(), rank, +1)) return {rank, QuadKind::Hyperbolic};
  if (zeros == nondegenerate_zero_count(f.q(), rank, -1)) return {rank, QuadKind::Elliptic};
  throw Error(ErrorKind::InvalidArgument, "zero count " + to_string(zeros) + " matches no even-rank type");
}

// ---------------------------------------------------------------------------

Fe diagonal_functional(const FieldSpec& f, int k, Fe delta, const SymMatrix& a) {
  if (k < 0 || k > a.dim()) throw Error(ErrorKind::InvalidArgument, "k outside 0..m");
  if (k == 0) return Fe{0};
  Fe acc{0};
  for (int i = 0; i + 1 < k; ++i) acc = f.add(acc, a(i, i));
  return f.add(acc, f.mul(delta, a(k - 1, k - 1)));
}

KernelTypeCensus::KernelTypeCensus(int m)
    : m_(m),
      total_(std::size_t((m + 1) * 2 * (m + 1)), 0),
      par_(total_.size(), 0),
      hyp_(total_.size(), 0),
      ell_(total_.size(), 0) {}

std::size_t KernelTypeCensus::index(int k, int delta_class, int r) const {
  return std::size_t((k * 2 + class_index(delta_class)) * (m_ + 1) + r);
}

Count KernelTypeCensus::at(const std::vector<Count>& v, int k, int delta_class, int r) const {
  if (k < 0 || k > m_ || r < 0 || r > m_) return 0;
  return v[index(k, delta_class, r)];
}

void KernelTypeCensus::add(int k, int delta_class, int r, int type, Count n) {
  const auto i = index(k, delta_class, r);
  total_[i] += n;
  if (r % 2 == 1)
    par_[i] += n;
  else
    (type > 0 ? hyp_ : ell_)[i] += n;
}

void KernelTypeCensus::merge(const KernelTypeCensus& o) {
  for (std::size_t i = 0; i < total_.size(); ++i) {
    total_[i] += o.total_[i];
    par_[i] += o.par_[i];
    hyp_[i] += o.hyp_[i];
    ell_[i] += o.ell_[i];
  }
}

namespace {

KernelTypeCensus direct_census(const FieldSpec& f, int m, const ScanOptions& opt) {
  const Fe deltas[2] = {Fe{1}, f.canonical_nonsquare()};
  const int classes[2] = {1, -1};
  return scan_reduce(f, m, opt, KernelTypeCensus(m), [&](KernelTypeCensus& acc, const SymMatrix& a) {
    const auto rd = rank_disc(f, a);
    const int type = even_rank_type(f, rd.rank, rd.disc_class);
    acc.add(0, 1, rd.rank, type, 1);
    acc.add(0, -1, rd.rank, type, 1);
    Fe prefix{0};
    for (int k = 1; k <= m; ++k) {
      const Fe d = a(k - 1, k - 1);
      for (int c = 0; c < 2; ++c)
        if (f.add(prefix, f.mul(deltas[c], d)).value == 0) acc.add(k, classes[c], rd.rank, type, 1);
      prefix = f.add(prefix, d);
    }
  });
}

struct BorderedAcc {
  KernelTypeCensus census;
  HistogramCache cache;
  void merge(const BorderedAcc& o) { census.merge(o.census); }
};

// Every A in S_m is [[z, y], [y^T, B]] with B in S_{m-1}. Writing
// L B L^T = diag(d_1..d_r, 0..0) and y' = y L^T, A is congruent to the same
// border around the diagonal. If y' has support off the first r coordinates,
// rank A = r + 2 with discriminant disc(B) * (-1). Otherwise y' = (u, 0),
// and with v = sum u_i^2 / d_i the Schur complement is z - v: rank r + 1 with
// discriminant disc(B) * (z - v), or rank r when z = v. The histogram of v
// over u equals the histogram of sum d_i w_i^2 over w (substitute u_i = d_i w_i).
KernelTypeCensus bordered_census(const FieldSpec& f, int m, const ScanOptions& opt) {
  const int q = f.q();
  const Fe deltas[2] = {Fe{1}, f.canonical_nonsquare()};
  const int classes[2] = {1, -1};
  const int minus_one = f.chi(f.neg(Fe{1}));
  std::vector<Count> q_pow(std::size_t(m + 1));
  for (int i = 0; i <= m; ++i) q_pow[std::size_t(i)] = ipow(q, i);

  BorderedAcc proto{KernelTypeCensus(m), HistogramCache(f)};
  auto result = scan_reduce(f, m - 1, opt, proto, [&](BorderedAcc& acc, const SymMatrix& b) {
    std::array<Fe, kMaxDim> piv{};
    const int r = diagonal_pivots(f, b, piv);
    int disc = 1;
    for (int i = 0; i < r; ++i) disc *= f.chi(piv[std::size_t(i)]);
    const auto& hist = acc.cache.get(std::span<const Fe>(piv.data(), std::size_t(r)));
    const Count outside = q_pow[std::size_t(r)] * (q_pow[std::size_t(m - 1 - r)] - 1);
    const int outside_type = even_rank_type(f, r + 2, disc * minus_one);
    const int same_type = even_rank_type(f, r, disc);

    auto add_for_z = [&](int k, int cls, Fe z, Count weight) {
      if (outside > 0) acc.census.add(k, cls, r + 2, outside_type, outside * weight);
      for (int v = 0; v < q; ++v) {
        const Count n = hist[std::size_t(v)];
        if (n == 0) continue;
        const Fe schur = f.sub(z, Fe{std::uint8_t(v)});
        if (schur.value == 0)
          acc.census.add(k, cls, r, same_type, n * weight);
        else
          acc.census.add(k, cls, r + 1, even_rank_type(f, r + 1, disc * f.chi(schur)), n * weight);
      }
    };

    // k = 0: every z.
    for (int z = 0; z < q; ++z)
      for (int c = 0; c < 2; ++c) add_for_z(0, classes[c], Fe{std::uint8_t(z)}, 1);
    // k = 1: f = delta * z, so z = 0.
    for (int c = 0; c < 2; ++c) add_for_z(1, classes[c], Fe{0}, 1);
    // k >= 2: f_k(A) = z + f_{k-1}(B).
    Fe prefix{0};
    for (int k = 2; k <= m; ++k) {
      const Fe d = b(k - 2, k - 2);
      for (int c = 0; c < 2; ++c) add_for_z(k, classes[c], f.neg(f.add(prefix, f.mul(deltas[c], d))), 1);
      prefix = f.add(prefix, d);
    }
  });
  return result.census;
}

}  // namespace

KernelTypeCensus kernel_type_census(const FieldSpec& f, int m, KernelMethod method, const ScanOptions& opt) {
  if (m == 0) method = KernelMethod::Direct;
  if (method == KernelMethod::Auto) {
    bool fits = true;
    try {
      check_budget(f.q(), m, opt.budget);
    } catch (const Error&) {
      fits = false;
    }
    method = fits ? KernelMethod::Direct : KernelMethod::Bordered;
  }
  return method == KernelMethod::Direct ? direct_census(f, m, opt) : bordered_census(f, m, opt);
}

TypeSplit type_split(const FieldSpec& f, int k, int delta_class, int r, int m, std::uint64_t budget) {
  if (k < 0 || k > m) throw Error(ErrorKind::InvalidArgument, "k outside 0..m");
  if (r < 0 || r > m) throw Error(ErrorKind::InvalidArgument, "r outside 0..m");
  const auto c = kernel_type_census(f, m, KernelMethod::Direct, ScanOptions{budget, 1});
  TypeSplit out;
  if (r % 2 == 1) {
    out.p = c.parabolic(k, delta_class, r);
  } else {
    out.h = c.hyperbolic(k, delta_class, r);
    out.e = c.elliptic(k, delta_class, r);
  }
  return out;
}

}  // namespace symdet
