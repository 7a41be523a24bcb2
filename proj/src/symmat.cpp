#include "symdet/symmat.hpp"

#include <string>
#include <utility>

namespace symdet {

SymMatrix::SymMatrix(int m) : m_(m) {
  if (m < 0 || m > kMaxDim)
    throw Error(ErrorKind::InvalidArgument, "matrix size " + std::to_string(m) + " outside 0..8");
}

SymMatrix SymMatrix::identity(int m) {
  SymMatrix a(m);
  for (int i = 0; i < m; ++i) a.set(i, i, Fe{1});
  return a;
}

SymMatrix SymMatrix::diagonal(std::span<const Fe> diag) {
  SymMatrix a(int(diag.size()));
  for (int i = 0; i < a.dim(); ++i) a.set(i, i, diag[std::size_t(i)]);
  return a;
}

SymMatrix SymMatrix::canonical_diagonal(int m, int rank, Fe delta) {
  if (rank < 0 || rank > m) throw Error(ErrorKind::InvalidArgument, "rank outside 0..m");
  SymMatrix a(m);
  for (int i = 0; i + 1 < rank; ++i) a.set(i, i, Fe{1});
  if (rank > 0) a.set(rank - 1, rank - 1, delta);
  return a;
}

SymMatrix SymMatrix::trailing_minor() const {
  if (m_ == 0) throw Error(ErrorKind::InvalidArgument, "trailing minor of an empty matrix");
  SymMatrix b(m_ - 1);
  for (int i = 1; i < m_; ++i)
    for (int j = i; j < m_; ++j) b.set(i - 1, j - 1, (*this)(i, j));
  return b;
}

bool SymMatrix::is_zero() const {
  for (auto v : packed_view())
    if (v != 0) return false;
  return true;
}

bool operator==(const SymMatrix& a, const SymMatrix& b) {
  if (a.m_ != b.m_) return false;
  return std::equal(a.packed_view().begin(), a.packed_view().end(), b.packed_view().begin());
}

SquareMatrix SquareMatrix::identity(int m) {
  SquareMatrix a(m);
  for (int i = 0; i < m; ++i) a.set(i, i, Fe{1});
  return a;
}

bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.m_ != b.m_) return false;
  for (int i = 0; i < a.m_; ++i)
    for (int j = 0; j < a.m_; ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

SquareMatrix multiply(const FieldSpec& f, const SquareMatrix& a, const SquareMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "multiply");
  const int m = a.dim();
  SquareMatrix c(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Fe acc{0};
      for (int l = 0; l < m; ++l) acc = f.add(acc, f.mul(a(i, l), b(l, j)));
      c.set(i, j, acc);
    }
  return c;
}

bool is_invertible(const FieldSpec& f, const SquareMatrix& a) {
  const int m = a.dim();
  SquareMatrix w = a;
  int rank = 0;
  for (int col = 0; col < m && rank < m; ++col) {
    int piv = -1;
    for (int i = rank; i < m; ++i)
      if (w(i, col).value != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < m; ++j) {
      const Fe t = w(rank, j);
      w.set(rank, j, w(piv, j));
      w.set(piv, j, t);
    }
    const Fe inv = f.inv(w(rank, col));
    for (int i = rank + 1; i < m; ++i) {
      const Fe c = f.mul(w(i, col), inv);
      if (c.value == 0) continue;
      for (int j = 0; j < m; ++j) w.set(i, j, f.sub(w(i, j), f.mul(c, w(rank, j))));
    }
    ++rank;
  }
  return rank == m;
}

SymMatrix congruence(const FieldSpec& f, const SquareMatrix& p, const SymMatrix& a) {
  if (p.dim() != a.dim()) throw Error(ErrorKind::DimensionMismatch, "congruence");
  const int m = a.dim();
  SquareMatrix pa(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Fe acc{0};
      for (int l = 0; l < m; ++l) acc = f.add(acc, f.mul(p(i, l), a(l, j)));
      pa.set(i, j, acc);
    }
  SymMatrix out(m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Fe acc{0};
      for (int l = 0; l < m; ++l) acc = f.add(acc, f.mul(pa(i, l), p(j, l)));
      out.set(i, j, acc);
    }
  return out;
}

namespace {

// Dense working copy for the elimination, row-major with stride kMaxDim.
struct Work {
  std::uint8_t w[kMaxDim][kMaxDim];
};

void load(const SymMatrix& a, Work& work) {
  const int m = a.dim();
  const auto packed = a.packed_view();
  int idx = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j, ++idx) work.w[i][j] = work.w[j][i] = packed[std::size_t(idx)];
}

// Symmetric Gaussian elimination in place. Returns the rank; pivots are left
// on the leading diagonal. When Track is set, `l` accumulates the row
// operations so that L * A * L^T equals the final diagonal.
template <bool Track>
int eliminate(const FieldSpec& f, int m, Work& work, SquareMatrix* l) {
  const int q = f.q();
  const std::uint8_t* add = f.add_table();
  const std::uint8_t* sub = f.sub_table();
  const std::uint8_t* mul = f.mul_table();
  const std::uint8_t* inv = f.inv_table();
  auto& w = work.w;

  auto swap_index = [&](int i, int p) {
    if (i == p) return;
    for (int c = 0; c < m; ++c) std::swap(w[i][c], w[p][c]);
    for (int r = 0; r < m; ++r) std::swap(w[r][i], w[r][p]);
    if constexpr (Track)
      for (int c = 0; c < m; ++c) {
        const Fe t = (*l)(i, c);
        l->set(i, c, (*l)(p, c));
        l->set(p, c, t);
      }
  };

  int p = 0;
  for (; p < m; ++p) {
    int piv = -1;
    for (int i = p; i < m; ++i)
      if (w[i][i] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) {
      int pi = -1, pj = -1;
      for (int i = p; i < m && pi < 0; ++i)
        for (int j = i + 1; j < m; ++j)
          if (w[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) break;
      // Row then column j into i; the new (i, i) entry is 2 * w[i][j] != 0.
      for (int c = 0; c < m; ++c) w[pi][c] = add[w[pi][c] * q + w[pj][c]];
      for (int r = 0; r < m; ++r) w[r][pi] = add[w[r][pi] * q + w[r][pj]];
      if constexpr (Track)
        for (int c = 0; c < m; ++c) l->set(pi, c, f.add((*l)(pi, c), (*l)(pj, c)));
      piv = pi;
    }
    swap_index(piv, p);

    const std::uint8_t inv_d = inv[w[p][p]];
    for (int i = p + 1; i < m; ++i) {
      const std::uint8_t c = mul[w[i][p] * q + inv_d];
      if (c == 0) continue;
      for (int j = p + 1; j < m; ++j) w[i][j] = sub[w[i][j] * q + mul[c * q + w[p][j]]];
      w[i][p] = 0;
      if constexpr (Track)
        for (int col = 0; col < m; ++col) l->set(i, col, f.sub((*l)(i, col), f.mul(Fe{c}, (*l)(p, col))));
    }
    for (int j = p + 1; j < m; ++j) w[p][j] = 0;
  }
  return p;
}

}  // namespace

Diagonalization congruence_diagonalize(const FieldSpec& f, const SymMatrix& a) {
  const int m = a.dim();
  Work work{};
  load(a, work);
  Diagonalization out;
  out.transform = SquareMatrix::identity(m);
  out.rank = eliminate<true>(f, m, work, &out.transform);
  out.diagonal.resize(std::size_t(m));
  for (int i = 0; i < m; ++i) out.diagonal[std::size_t(i)] = Fe{i < out.rank ? work.w[i][i] : std::uint8_t(0)};
  return out;
}

DiagForm canonical_form(const FieldSpec& f, const SymMatrix& a) {
  const auto d = congruence_diagonalize(f, a);
  DiagForm out;
  out.rank = d.rank;
  out.transform = d.transform;
  if (d.rank > 0) {
    Fe prod{1};
    for (int i = 0; i < d.rank; ++i) prod = f.mul(prod, d.diagonal[std::size_t(i)]);
    out.delta_class = f.chi(prod);
  }
  return out;
}

RankDisc rank_disc(const FieldSpec& f, const SymMatrix& a) {
  const int m = a.dim();
  Work work;
  load(a, work);
  const int rank = eliminate<false>(f, m, work, nullptr);
  const std::uint8_t* mul = f.mul_table();
  std::uint8_t prod = 1;
  for (int i = 0; i < rank; ++i) prod = mul[prod * f.q() + work.w[i][i]];
  return {rank, f.chi(Fe{prod})};
}

int diagonal_pivots(const FieldSpec& f, const SymMatrix& a, std::array<Fe, kMaxDim>& out) {
  Work work;
  load(a, work);
  const int rank = eliminate<false>(f, a.dim(), work, nullptr);
  for (int i = 0; i < rank; ++i) out[std::size_t(i)] = Fe{work.w[i][i]};
  return rank;
}

int even_rank_type(const FieldSpec& f, int rank, int disc_class) {
  if (rank % 2 != 0) return 0;
  if (rank == 0) return 1;
  const int s = rank / 2;
  const int minus_one = f.chi(f.neg(Fe{1}));
  return (s % 2 == 1) ? disc_class * minus_one : disc_class;
}

// ---------------------------------------------------------------------------

namespace {

Count gcd(Count a, Count b) {
  while (b != 0) a = std::exchange(b, a % b);
  return a;
}

}  // namespace

Count sym_rank_count(int q, int r, int m) {
  if (r < 0 || r > m) return 0;
  // prod_{i=1}^{floor(r/2)} q^{2i}/(q^{2i}-1) * prod_{i=0}^{r-1} (q^{m-i}-1)
  // Cancel against the denominator factor by factor so intermediates stay
  // close to the result.
  Count num = 1;
  Count den = 1;
  for (int i = 1; i <= r / 2; ++i) den = checked_mul(den, ipow(q, 2 * i) - 1);
  auto times = [&](Count x) {
    const Count g = gcd(x, den);
    den /= g;
    num = checked_mul(num, x / g);
  };
  for (int i = 1; i <= r / 2; ++i) times(ipow(q, 2 * i));
  for (int i = 0; i < r; ++i) times(ipow(q, m - i) - 1);
  return exact_div(num, den);
}

Count cone_size(int q, int t, int m) {
  Count total = 0;
  for (int r = 0; r <= std::min(t, m); ++r) total = checked_add(total, sym_rank_count(q, r, m));
  return total;
}

Count projective_size(int q, int t, int m) {
  if (t < 0) return 0;
  return exact_div(cone_size(q, t, m) - 1, q - 1);
}

Count even_type_count(int q, int sign, int two_r, int m) {
  if (two_r % 2 != 0 || two_r < 0 || two_r > m) return 0;
  const int r = two_r / 2;
  Count num = 1;
  for (int i = 0; i < two_r; ++i) num = checked_mul(num, ipow(q, m) - ipow(q, i));
  Count den = 1;
  for (int i = 0; i < r; ++i) den = checked_mul(den, ipow(q, two_r) - ipow(q, 2 * i));
  const Count factor = sign > 0 ? ipow(q, r) + 1 : ipow(q, r) - 1;
  return exact_div(checked_mul(factor, exact_div(num, den)), 2);
}

RankCensus census(int q, int m) {
  RankCensus c;
  c.q = q;
  c.m = m;
  for (int r = 0; r <= m; ++r) c.s.push_back(sym_rank_count(q, r, m));
  for (int t = 0; t <= m; ++t) {
    c.n_s.push_back(cone_size(q, t, m));
    c.N_s.push_back(projective_size(q, t, m));
  }
  for (int r = 0; 2 * r <= m; ++r) {
    c.v_plus.push_back(even_type_count(q, +1, 2 * r, m));
    c.v_minus.push_back(even_type_count(q, -1, 2 * r, m));
  }
  return c;
}

// ---------------------------------------------------------------------------

Count space_size(int q, int m) { return ipow(q, packed_size(m)); }

void check_budget(int q, int m, std::uint64_t budget) {
  if (m < 0 || m > kMaxDim) throw Error(ErrorKind::InvalidArgument, "m outside 0..8");
  Count size;
  try {
    size = space_size(q, m);
  } catch (const Error&) {
    throw Error(ErrorKind::BudgetExceeded, "q^{m(m+1)/2} overflows");
  }
  if (size > Count(budget))
    throw Error(ErrorKind::BudgetExceeded,
                "q^{m(m+1)/2} = " + to_string(size) + " exceeds budget " + std::to_string(budget));
}

std::vector<SymMatrix> enumerate(const FieldSpec& f, int m, EnumMode mode, std::uint64_t budget) {
  std::vector<SymMatrix> out;
  for_each_matrix(f, m, mode, [&](const SymMatrix& a) { out.push_back(a); }, budget);
  return out;
}

EnumeratedCensus::EnumeratedCensus(int m_)
    : m(m_),
      by_rank(std::size_t(m_ + 1), 0),
      square_disc(std::size_t(m_ + 1), 0),
      nonsquare_disc(std::size_t(m_ + 1), 0),
      hyperbolic(std::size_t(m_ + 1), 0),
      elliptic(std::size_t(m_ + 1), 0) {}

void EnumeratedCensus::merge(const EnumeratedCensus& o) {
  for (std::size_t r = 0; r < by_rank.size(); ++r) {
    by_rank[r] += o.by_rank[r];
    square_disc[r] += o.square_disc[r];
    nonsquare_disc[r] += o.nonsquare_disc[r];
    hyperbolic[r] += o.hyperbolic[r];
    elliptic[r] += o.elliptic[r];
  }
}

EnumeratedCensus enumerate_census(const FieldSpec& f, int m, const ScanOptions& opt) {
  return scan_reduce(f, m, opt, EnumeratedCensus(m), [&](EnumeratedCensus& acc, const SymMatrix& a) {
    const auto rd = rank_disc(f, a);
    const auto r = std::size_t(rd.rank);
    ++acc.by_rank[r];
    if (rd.rank > 0) (rd.disc_class > 0 ? acc.square_disc : acc.nonsquare_disc)[r]++;
    if (rd.rank % 2 == 0)
      (even_rank_type(f, rd.rank, rd.disc_class) > 0 ? acc.hyperbolic : acc.elliptic)[r]++;
  });
}

}  // namespace symdet
