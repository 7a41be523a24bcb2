#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "symdet/codes.hpp"

using namespace symdet;

namespace {

SymMatrix from_rows(int m, std::initializer_list<int> upper) {
  SymMatrix a(m);
  int idx = 0;
  for (int v : upper) a.set_packed(idx++, Fe{std::uint8_t(v)});
  return a;
}

SymMatrix random_sym(const FieldSpec& f, int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, f.q() - 1);
  SymMatrix a(m);
  for (int i = 0; i < packed_size(m); ++i) a.set_packed(i, Fe{std::uint8_t(d(rng))});
  return a;
}

SymMatrix canonical_of(const FieldSpec& f, const SymMatrix& a) {
  const auto cf = canonical_form(f, a);
  return SymMatrix::canonical_diagonal(a.dim(), cf.rank, f.class_representative(cf.rank == 0 ? 1 : cf.delta_class));
}

}  // namespace

TEST_CASE("trace pairing examples") {
  const FieldSpec f(3);
  const SymMatrix a = from_rows(2, {1, 2, 1});
  CHECK(trace_pairing(f, SymMatrix(2), a).value == 0);
  CHECK(trace_pairing(f, from_rows(2, {1, 0, 0}), from_rows(2, {2, 1, 0})).value == 2);
  CHECK(trace_pairing(f, SymMatrix::identity(2), a).value == 2);
  // Off-diagonal coefficients count twice.
  CHECK(trace_pairing(f, from_rows(2, {0, 1, 0}), from_rows(2, {0, 1, 0})).value == 2);
  try {
    trace_pairing(f, SymMatrix(2), SymMatrix(3));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("symmetrize examples") {
  const FieldSpec f(3);
  SquareMatrix sym(2);
  sym.set(0, 1, Fe{1});
  sym.set(1, 0, Fe{1});
  sym.set(1, 1, Fe{2});
  CHECK(symmetrize(f, sym) == from_rows(2, {0, 1, 2}));
  SquareMatrix e12(2);
  e12.set(0, 1, Fe{1});
  CHECK(symmetrize(f, e12) == from_rows(2, {0, 2, 0}));
  SquareMatrix anti(3);
  anti.set(0, 2, Fe{1});
  anti.set(2, 0, Fe{2});
  CHECK(symmetrize(f, anti) == SymMatrix(3));
}

TEST_CASE("symmetrize preserves the functional") {
  std::mt19937_64 rng(7);
  const FieldSpec f(5);
  std::uniform_int_distribution<int> d(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    SquareMatrix raw(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) raw.set(i, j, Fe{std::uint8_t(d(rng))});
    const SymMatrix g = symmetrize(f, raw);
    const SymMatrix a = random_sym(f, 3, rng);
    Fe direct{0};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) direct = f.add(direct, f.mul(raw(i, j), a(i, j)));
    CHECK(trace_pairing(f, g, a) == direct);
  }
}

TEST_CASE("code parameters") {
  const auto p = code_params({3, 3, 1, Variant::Projective});
  CHECK(p.length == 13);
  CHECK(p.dimension == 6);
  const auto a = code_params({3, 3, 3, Variant::Affine});
  CHECK(a.length == 729);
  CHECK(a.dimension == 6);
  const FieldSpec f(3);
  CHECK(Count(evaluation_points(f, {3, 3, 1, Variant::Projective}).size()) == 13);
  CHECK(Count(evaluation_points(f, {3, 3, 2, Variant::Affine}).size()) == code_params({3, 3, 2, Variant::Affine}).length);
  CHECK_THROWS_AS(validate({3, 3, 4, Variant::Affine}), Error);
  CHECK_THROWS_AS(validate({3, 9, 1, Variant::Affine}), Error);
  const auto g = generator_matrix(f, {3, 2, 1, Variant::Projective});
  CHECK(g.size() == 3);
  CHECK(g[0].size() == 4);
}

TEST_CASE("codeword weight examples") {
  const FieldSpec f(3);
  CHECK(codeword_weight_bf(f, SymMatrix(3), {3, 3, 2, Variant::Affine}) == 0);
  CHECK(codeword_weight_bf(f, from_rows(3, {1, 0, 0, 0, 0, 0}), {3, 3, 1, Variant::Affine}) == 18);
  CHECK(codeword_weight_bf(f, SymMatrix::identity(3), {3, 3, 2, Variant::Affine}) == 180);
}

TEST_CASE("full-rank evaluation gives the constant weight") {
  std::mt19937_64 rng(11);
  for (auto [q, m] : {std::pair{3, 2}, std::pair{3, 3}, std::pair{5, 2}}) {
    const FieldSpec f(q);
    const CodeId id{q, m, m, Variant::Affine};
    const auto pts = evaluation_points(f, id);
    const int n = packed_size(m);
    for (int trial = 0; trial < 50; ++trial) {
      const SymMatrix c = random_sym(f, m, rng);
      if (c.is_zero()) continue;
      CHECK(weight_on_points(f, c, pts) == ipow(q, n) - ipow(q, n - 1));
    }
  }
}

TEST_CASE("restricted weight examples") {
  const FieldSpec f(3);
  for (int r = 0; r <= 3; ++r) CHECK(restricted_weight_bf(f, 0, 1, r, 3) == 0);
  CHECK(restricted_weight_bf(f, 1, 1, 1, 3) == 18);
  CHECK(restricted_weight_bf(f, 2, -1, 0, 3) == 0);
}

TEST_CASE("restricted weights sum to the codeword weight") {
  for (auto [q, m] : {std::pair{3, 3}, std::pair{5, 2}, std::pair{3, 2}}) {
    const FieldSpec f(q);
    const auto table = restricted_weight_table_bf(f, m);
    for (int k = 0; k <= m; ++k)
      for (int dc : {1, -1}) {
        const SymMatrix fk = SymMatrix::canonical_diagonal(m, k, f.class_representative(dc));
        for (int t = 1; t <= m; ++t)
          CHECK(table.weight(k, dc, t) == codeword_weight_bf(f, fk, {q, m, t, Variant::Affine}));
        const auto rec = weight_record_bf(f, k, dc, m, m);
        Count sum = 0;
        for (Count w : rec.restricted) sum += w;
        CHECK(sum == rec.weight);
      }
  }
}

TEST_CASE("weight depends only on rank and discriminant class") {
  // Every F at q = 3, m <= 3 against its canonical diagonal representative.
  const FieldSpec f(3);
  for (int m = 1; m <= 3; ++m)
    for (int t = 1; t <= m; ++t) {
      const CodeId aff{3, m, t, Variant::Affine}, proj{3, m, t, Variant::Projective};
      const auto pa = evaluation_points(f, aff), pp = evaluation_points(f, proj);
      int bad = 0;
      for_each_matrix(f, m, [&](const SymMatrix& c) {
        const Count w = weight_on_points(f, c, pa);
        if (w != weight_on_points(f, canonical_of(f, c), pa)) ++bad;
        if (w != (f.q() - 1) * weight_on_points(f, c, pp)) ++bad;
      });
      CHECK(bad == 0);
    }
  // Sampled at m = 4.
  std::mt19937_64 rng(5);
  const CodeId id{3, 4, 3, Variant::Affine};
  const auto pts = evaluation_points(f, id);
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const SymMatrix c = random_sym(f, 4, rng);
    if (weight_on_points(f, c, pts) != weight_on_points(f, canonical_of(f, c), pts)) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("weights agree within a square class of delta") {
  for (int q : {3, 5, 7}) {
    const FieldSpec f(q);
    for (int m = 1; m <= 3; ++m)
      for (int t = 1; t <= m; ++t) {
        const auto pts = evaluation_points(f, {q, m, t, Variant::Affine});
        for (int k = 1; k <= m; ++k) {
          std::map<int, std::set<Count>> by_class;
          for (int d = 1; d < q; ++d) {
            const Fe delta{std::uint8_t(d)};
            by_class[f.chi(delta)].insert(weight_on_points(f, SymMatrix::canonical_diagonal(m, k, delta), pts));
          }
          CHECK(by_class[1].size() == 1);
          CHECK(by_class[-1].size() == 1);
        }
      }
  }
}

TEST_CASE("spectrum examples") {
  const FieldSpec f(3);
  const auto s1 = spectrum(f, {3, 1, 1, Variant::Affine});
  REQUIRE(s1.classes.size() == 3);
  CHECK(s1.classes[0].multiplicity == 1);
  CHECK(s1.classes[1].weight == 2);
  CHECK(s1.classes[2].weight == 2);

  const auto s = spectrum(f, {3, 3, 2, Variant::Affine});
  std::set<Count> nonzero;
  Count total = 0;
  for (const auto& [w, n] : s.weights) {
    if (w != 0) nonzero.insert(w);
    total += n;
  }
  CHECK(nonzero == std::set<Count>{162, 180});
  CHECK(total == 729);
  CHECK(s.weights.front() == std::pair<Count, Count>{0, 1});
  CHECK(s.weights.size() <= 7);
}
