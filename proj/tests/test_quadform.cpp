#include "doctest.h"
#include "symdet/quadform.hpp"

using namespace symdet;

namespace {

SymMatrix from_rows(int m, std::initializer_list<int> upper) {
  SymMatrix a(m);
  int idx = 0;
  for (int v : upper) a.set_packed(idx++, Fe{std::uint8_t(v)});
  return a;
}

}  // namespace

TEST_CASE("classification examples") {
  const FieldSpec f(3);
  CHECK(classify(f, from_rows(2, {0, 1, 0})) == QuadFormClass{2, QuadKind::Hyperbolic});
  CHECK(classify(f, from_rows(2, {1, 0, 1})) == QuadFormClass{2, QuadKind::Elliptic});
  CHECK(classify(f, from_rows(3, {1, 0, 0, 0, 0, 0})) == QuadFormClass{1, QuadKind::Parabolic});
  CHECK(classify(f, SymMatrix(3)) == QuadFormClass{0, QuadKind::Zero});
}

TEST_CASE("lambda examples") {
  const FieldSpec f(3);
  CHECK(lambda(f, SymMatrix(2)) == 1);
  CHECK(lambda(f, from_rows(2, {0, 1, 0})) == 5);
  CHECK(lambda(f, from_rows(2, {1, 0, 1})) == 1);
}

TEST_CASE("gamma examples") {
  const FieldSpec f(3);
  for (int a = 1; a < 3; ++a) CHECK(gamma(f, SymMatrix(2), Fe{std::uint8_t(a)}) == 0);
  // X1 X2 = -alpha over F_3 has the two solutions (x, -alpha/x).
  const SymMatrix hyp = from_rows(2, {0, 1, 0});
  for (int a = 1; a < 3; ++a) {
    CHECK(gamma(f, hyp, Fe{std::uint8_t(a)}) == 2);
    CHECK(gamma_bf(f, hyp, Fe{std::uint8_t(a)}) == 2);
  }
  CHECK(gamma(f, from_rows(1, {1}), Fe{2}) == 2);
  try {
    gamma(f, hyp, Fe{0});
    FAIL("expected ZeroAlpha");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroAlpha);
  }
}

TEST_CASE("closed forms match both brute-force oracles") {
  for (auto [q, max_m] : {std::pair{3, 3}, std::pair{5, 3}, std::pair{7, 2}}) {
    const FieldSpec f(q);
    for (int m = 1; m <= max_m; ++m) {
      CAPTURE(q);
      CAPTURE(m);
      int bad = 0, bad_total = 0;
      for_each_matrix(f, m, [&](const SymMatrix& b) {
        const auto bf = rowspan_histogram_bf(f, b);
        const auto direct = rowspan_histogram_direct(f, b);
        if (bf != direct) ++bad;
        if (bf[0] != lambda(f, b)) ++bad;
        for (int a = 1; a < q; ++a)
          if (bf[f.neg(Fe{std::uint8_t(a)}).value] != gamma(f, b, Fe{std::uint8_t(a)})) ++bad;
        Count total = 0;
        for (Count c : direct) total += c;
        if (total != ipow(q, rank_disc(f, b).rank)) ++bad_total;
      });
      CHECK(bad == 0);
      CHECK(bad_total == 0);
    }
  }
}

TEST_CASE("discriminant and zero-count classifications agree") {
  for (auto [q, max_m] : {std::pair{3, 4}, std::pair{5, 3}}) {
    const FieldSpec f(q);
    HistogramCache cache(f);
    for (int m = 2; m <= max_m; ++m) {
      int bad = 0;
      for_each_matrix(f, m, [&](const SymMatrix& b) {
        const RankDisc rd = rank_disc(f, b);
        if (rd.rank == 0 || rd.rank % 2 == 1) return;
        const Count zeros = rowspan_histogram_bf(f, b, cache)[0];
        if (classify_by_zero_count(f, rd.rank, zeros) != classify(f, b)) ++bad;
      });
      CHECK(bad == 0);
    }
  }
}

TEST_CASE("zero counts of nondegenerate forms") {
  CHECK(nondegenerate_zero_count(3, 0, 1) == 1);
  CHECK(nondegenerate_zero_count(3, 1, 0) == 1);
  CHECK(nondegenerate_zero_count(3, 2, 1) == 5);
  CHECK(nondegenerate_zero_count(3, 2, -1) == 1);
  CHECK(nondegenerate_zero_count(3, 3, 0) == 9);
  CHECK(nondegenerate_zero_count(5, 4, 1) == 125 + 25 - 5);
}

TEST_CASE("type split examples") {
  const FieldSpec f(3);
  const auto zero_fn = type_split(f, 0, 1, 2, 2);
  CHECK(zero_fn.h == 12);
  CHECK(zero_fn.e == 6);
  CHECK(type_split(f, 1, 1, 1, 1).p == 0);
  // Rank-2 matrices [[0, b], [b, c]] need b != 0: 2 * 3 of them.
  Count expected = 0;
  for_each_matrix(f, 2, [&](const SymMatrix& b) {
    if (b(0, 0).value == 0 && rank_disc(f, b).rank == 2) ++expected;
  });
  const auto s = type_split(f, 1, 1, 2, 2);
  CHECK(s.h + s.e == expected);
  CHECK(expected == 6);
}

TEST_CASE("bordered kernel census matches direct enumeration") {
  for (auto [q, max_m] : {std::pair{3, 4}, std::pair{5, 3}, std::pair{7, 2}}) {
    const FieldSpec f(q);
    for (int m = 1; m <= max_m; ++m) {
      CAPTURE(q);
      CAPTURE(m);
      CHECK(kernel_type_census(f, m, KernelMethod::Bordered) == kernel_type_census(f, m, KernelMethod::Direct));
    }
  }
}

TEST_CASE("kernel census of the zero functional is the type census") {
  const FieldSpec f(5);
  const auto kc = kernel_type_census(f, 3, KernelMethod::Direct);
  CHECK(kc.hyperbolic(0, 1, 2) == even_type_count(5, 1, 2, 3));
  CHECK(kc.elliptic(0, -1, 2) == even_type_count(5, -1, 2, 3));
  CHECK(kc.parabolic(0, 1, 3) == sym_rank_count(5, 3, 3));
}
