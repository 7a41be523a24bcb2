#include <random>

#include "doctest.h"
#include "symdet/symmat.hpp"

using namespace symdet;

namespace {

SymMatrix from_rows(int m, std::initializer_list<int> upper) {
  SymMatrix a(m);
  int idx = 0;
  for (int v : upper) a.set_packed(idx++, Fe{std::uint8_t(v)});
  return a;
}

SymMatrix diag_of(const FieldSpec&, int m, const std::vector<Fe>& d) {
  SymMatrix out(m);
  for (std::size_t i = 0; i < d.size(); ++i) out.set(int(i), int(i), d[i]);
  return out;
}

// Plain row reduction on the dense matrix: rank and, when full rank, det.
std::pair<int, int> rank_det(const FieldSpec& f, const SymMatrix& a) {
  const int m = a.dim();
  std::vector<std::vector<int>> M(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) M[std::size_t(i)][std::size_t(j)] = a(i, j).value;
  const int q = f.q();
  int rank = 0;
  long long det = 1;
  for (int c = 0; c < m; ++c) {
    int p = rank;
    while (p < m && M[std::size_t(p)][std::size_t(c)] == 0) ++p;
    if (p == m) {
      det = 0;
      continue;
    }
    if (p != rank) {
      std::swap(M[std::size_t(p)], M[std::size_t(rank)]);
      det = q - det;
    }
    const int piv = M[std::size_t(rank)][std::size_t(c)];
    det = det * piv % q;
    const int inv = f.inv(Fe{std::uint8_t(piv)}).value;
    for (int i = 0; i < m; ++i) {
      if (i == rank) continue;
      const int factor = M[std::size_t(i)][std::size_t(c)] * inv % q;
      for (int j = 0; j < m; ++j)
        M[std::size_t(i)][std::size_t(j)] =
            ((M[std::size_t(i)][std::size_t(j)] - factor * M[std::size_t(rank)][std::size_t(j)]) % q + q) % q;
    }
    ++rank;
  }
  return {rank, int(det % q)};
}

SquareMatrix random_invertible(const FieldSpec& f, int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, f.q() - 1);
  while (true) {
    SquareMatrix p(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) p.set(i, j, Fe{std::uint8_t(d(rng))});
    if (is_invertible(f, p)) return p;
  }
}

SymMatrix random_sym(const FieldSpec& f, int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, f.q() - 1);
  SymMatrix a(m);
  for (int i = 0; i < packed_size(m); ++i) a.set_packed(i, Fe{std::uint8_t(d(rng))});
  return a;
}

}  // namespace

TEST_CASE("packed layout") {
  CHECK(packed_size(3) == 6);
  CHECK(packed_index(3, 0, 0) == 0);
  CHECK(packed_index(3, 0, 2) == 2);
  CHECK(packed_index(3, 1, 1) == 3);
  CHECK(packed_index(3, 2, 1) == 4);
  CHECK(packed_index(3, 2, 2) == 5);
  const SymMatrix a = from_rows(3, {1, 2, 0, 1, 2, 0});
  CHECK(a(1, 0).value == 2);
  CHECK(a.trailing_minor() == from_rows(2, {1, 2, 0}));
}

TEST_CASE("diagonalization examples") {
  const FieldSpec f(3);
  const auto z = congruence_diagonalize(f, SymMatrix(3));
  CHECK(z.rank == 0);
  CHECK(z.transform == SquareMatrix::identity(3));

  const auto h = congruence_diagonalize(f, from_rows(2, {0, 1, 0}));
  REQUIRE(h.rank == 2);
  CHECK(f.chi(f.mul(h.diagonal[0], h.diagonal[1])) == f.chi(f.element(-1)));

  const auto e = congruence_diagonalize(f, from_rows(2, {1, 0, 0}));
  CHECK(e.rank == 1);
  CHECK(e.diagonal[0].value == 1);
}

TEST_CASE("canonical form examples") {
  const FieldSpec f3(3), f5(5);
  for (int k = 1; k <= 4; ++k) {
    const auto cf = canonical_form(f3, SymMatrix::identity(k));
    CHECK(cf.rank == k);
    CHECK(cf.delta_class == 1);
  }
  const auto a = canonical_form(f3, from_rows(2, {1, 0, 2}));
  CHECK(a.rank == 2);
  CHECK(a.delta_class == -1);
  const auto b = canonical_form(f5, from_rows(3, {2, 0, 0, 2, 0, 0}));
  CHECK(b.rank == 2);
  CHECK(b.delta_class == 1);
  CHECK(canonical_form(f5, SymMatrix(3)).delta_class == 0);
}

TEST_CASE("diagonalization round trip over every matrix") {
  for (auto [q, max_m] : {std::pair{3, 4}, std::pair{5, 3}}) {
    const FieldSpec f(q);
    for (int m = 1; m <= max_m; ++m) {
      CAPTURE(q);
      CAPTURE(m);
      std::size_t bad = 0, bad_rank = 0;
      for_each_matrix(f, m, [&](const SymMatrix& a) {
        const auto d = congruence_diagonalize(f, a);
        if (!is_invertible(f, d.transform) || congruence(f, d.transform, a) != diag_of(f, m, d.diagonal)) ++bad;
        for (int i = 0; i < d.rank; ++i)
          if (d.diagonal[std::size_t(i)].value == 0) ++bad;
        const auto [rank, det] = rank_det(f, a);
        const RankDisc rd = rank_disc(f, a);
        if (rank != d.rank || rd.rank != rank) ++bad_rank;
        if (rank == m && rd.disc_class != f.chi(Fe{std::uint8_t(det)})) ++bad_rank;
      });
      CHECK(bad == 0);
      CHECK(bad_rank == 0);
    }
  }
}

TEST_CASE("canonical form is a congruence invariant") {
  std::mt19937_64 rng(20260101);
  for (int q : {3, 5}) {
    const FieldSpec f(q);
    for (int m : {2, 3, 4}) {
      CAPTURE(q);
      CAPTURE(m);
      int bad = 0;
      for (int trial = 0; trial < 10000; ++trial) {
        const SymMatrix a = random_sym(f, m, rng);
        const SquareMatrix p = random_invertible(f, m, rng);
        const auto c1 = canonical_form(f, a);
        const auto c2 = canonical_form(f, congruence(f, p, a));
        if (c1.rank != c2.rank || c1.delta_class != c2.delta_class) ++bad;
      }
      CHECK(bad == 0);
    }
  }
}

TEST_CASE("enumeration examples") {
  const FieldSpec f(3);
  CHECK(enumerate(f, 2, EnumMode::all()).size() == 27);
  CHECK(enumerate(f, 2, EnumMode::rank_eq(2)).size() == 18);
  CHECK(enumerate(f, 3, EnumMode::rank_eq(1)).size() == 26);
  CHECK(enumerate(f, 3, EnumMode::rank_le(1)).size() == 27);
  // Lexicographic packed order.
  const auto all = enumerate(f, 2, EnumMode::all());
  CHECK(all.front() == SymMatrix(2));
  CHECK(all[1] == from_rows(2, {0, 0, 1}));
  CHECK(all.back() == from_rows(2, {2, 2, 2}));
}

TEST_CASE("budget guard") {
  const FieldSpec f(5);
  try {
    for_each_matrix(f, 5, [](const SymMatrix&) {}, 1000);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}

TEST_CASE("census examples") {
  const auto c = census(3, 3);
  CHECK(c.s == std::vector<Count>{1, 26, 234, 468});
  CHECK(c.n_s[3] == 729);
  CHECK(c.N_s[1] == 13);
  CHECK(even_type_count(3, 1, 2, 2) == 12);
  CHECK(even_type_count(3, -1, 2, 2) == 6);
  CHECK(sym_rank_count(3, -1, 3) == 0);
  CHECK(sym_rank_count(3, 4, 3) == 0);
  CHECK(cone_size(3, -1, 3) == 0);
}

TEST_CASE("closed-form census matches enumeration") {
  for (auto [q, max_m] : {std::pair{3, 4}, std::pair{5, 3}, std::pair{7, 2}}) {
    const FieldSpec f(q);
    for (int m = 1; m <= max_m; ++m) {
      CAPTURE(q);
      CAPTURE(m);
      const auto closed = census(q, m);
      const auto seen = enumerate_census(f, m);
      for (int r = 0; r <= m; ++r) CHECK(closed.s[std::size_t(r)] == seen.by_rank[std::size_t(r)]);
      for (int r = 0; 2 * r <= m; ++r) {
        CHECK(closed.v_plus[std::size_t(r)] == seen.hyperbolic[std::size_t(2 * r)]);
        CHECK(closed.v_minus[std::size_t(r)] == seen.elliptic[std::size_t(2 * r)]);
      }
    }
  }
}

TEST_CASE("projective sizes divide exactly") {
  for (int q : {3, 5, 7, 11})
    for (int m = 1; m <= kMaxDim; ++m)
      for (int t = 0; t <= m; ++t) CHECK_NOTHROW(projective_size(q, t, m));
  Count total = 0;
  for (Count s : census(5, 6).s) total += s;
  CHECK(total == ipow(5, 21));
}

TEST_CASE("reductions do not depend on the worker count") {
  const FieldSpec f(3);
  const auto a = enumerate_census(f, 4, ScanOptions{kDefaultBudget, 1});
  const auto b = enumerate_census(f, 4, ScanOptions{kDefaultBudget, 4});
  CHECK(a.by_rank == b.by_rank);
  CHECK(a.square_disc == b.square_disc);
  CHECK(a.hyperbolic == b.hyperbolic);
  CHECK(a.elliptic == b.elliptic);
}
