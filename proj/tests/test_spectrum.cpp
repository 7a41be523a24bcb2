#include <set>

#include "doctest.h"
#include "symdet/spectrum.hpp"

using namespace symdet;

TEST_CASE("restricted weight formula examples") {
  const FieldSpec f(3);
  const KernelSums sums = kernel_sums(f, 3);
  CHECK(restricted_weight_formula(f, sums, 1, 1, 1, 3) == 18);
  CHECK(restricted_weight_formula(f, sums, 2, -1, 0, 3) == 0);
  for (int k = 1; k <= 3; ++k) CHECK(restricted_weight_formula(f, sums, k, 1, 4, 3) == 0);
  // f_0 vanishes, so the k = 1 sums carry no gamma terms.
  for (int r = 0; r < 3; ++r)
    for (int dc : {1, -1}) CHECK(sums.gamma_sum(1, dc, r) == 0);
}

TEST_CASE("weight theorem examples") {
  const FieldSpec f3(3), f5(5);
  CHECK(weight_theorem(f3, 3, 1, 2, 3) == 180);
  CHECK(weight_theorem(f3, 1, 1, 3, 4) == 14094);
  for (auto [q, m] : {std::pair{3, 3}, std::pair{3, 4}, std::pair{5, 3}}) {
    const FieldSpec f(q);
    const KernelSums sums = kernel_sums(f, m);
    const int n = packed_size(m);
    for (int k = 1; k <= m; ++k)
      for (int dc : {1, -1}) CHECK(weight_theorem(f, sums, k, dc, m, m) == ipow(q, n) - ipow(q, n - 1));
  }
}

TEST_CASE("closed-form W_1") {
  CHECK(weight_w1(3, 1, 3) == 18);
  CHECK(weight_w1(3, 2, 3) == 162);
  CHECK(weight_w1(3, 4, 5) == 3424842);
  for (int q : {3, 5, 7}) {
    const FieldSpec f(q);
    for (int m = 1; m <= (q == 7 ? 4 : 5); ++m) {
      const KernelSums sums = kernel_sums(f, m);
      for (int t = 1; t <= m; ++t) CHECK(weight_w1(q, t, m) == weight_theorem(f, sums, 1, 1, t, m));
    }
  }
}

TEST_CASE("weight difference identity examples") {
  const FieldSpec f(3);
  const auto lower3 = kernel_type_census(f, 2);
  const auto lower4 = kernel_type_census(f, 3);
  for (int dc : {1, -1}) CHECK(weight_diff_identity(f, lower3, 1, dc, 1, 3) == 0);
  CHECK(weight_diff_identity(f, lower3, 3, 1, 1, 3) == 18);
  CHECK(weight_diff_identity(f, lower4, 2, 1, 1, 4) == 0);
}

TEST_CASE("four methods agree") {
  for (auto [q, max_m] : {std::pair{3, 4}, std::pair{5, 3}, std::pair{7, 2}}) {
    const FieldSpec f(q);
    for (int m = 1; m <= max_m; ++m) {
      const WeightContext ctx = weight_context(f, m, true);
      for (int t = 1; t <= m; ++t)
        for (int k = 1; k <= m; ++k)
          for (int dc : {1, -1}) {
            const WeightReport wr = weight_report(f, ctx, k, dc, t, m);
            CAPTURE(q);
            CAPTURE(m);
            CAPTURE(t);
            CAPTURE(k);
            CAPTURE(dc);
            CHECK(wr.agree());
            CHECK(wr.values.front().first == WeightMethod::BruteForce);
            CHECK(wr.values.size() >= 3);
          }
    }
  }
}

TEST_CASE("minimum distance examples") {
  const FieldSpec f(3);
  CHECK(min_distance(f, 2, 3, Variant::Affine).distance == 162);
  const auto proj = min_distance(f, 2, 3, Variant::Projective);
  CHECK(proj.distance == 81);
  CHECK(*proj.corollary_value == 81);
  CHECK(corollary_min_distance(3, 1, 3) == 81);
  const auto odd = min_distance(f, 1, 3, Variant::Affine);
  CHECK(odd.distance == 12);
  CHECK(odd.method == "candidate-scan");
  CHECK(odd.minimizer->k == 2);
  CHECK(odd.prediction_holds);
}

TEST_CASE("even rank minimum is W_1 and the corollary gives the projective value") {
  for (auto [q, max_m] : {std::pair{3, 5}, std::pair{5, 4}, std::pair{7, 4}}) {
    const FieldSpec f(q);
    for (int m = 2; m <= max_m; ++m) {
      const KernelSums sums = kernel_sums(f, m);
      for (int t = 2; t <= m; t += 2) {
        const auto md = min_distance(f, sums, t, m, Variant::Affine, true);
        CAPTURE(q);
        CAPTURE(m);
        CAPTURE(t);
        CHECK(md.scan_agrees);
        CHECK(md.corollary_matches_projective);
      }
    }
  }
}

TEST_CASE("bound examples") {
  const FieldSpec f(3);
  const auto kc3 = kernel_type_census(f, 3);
  for (int dc : {1, -1}) {
    const auto b0 = bound_check(f, kc3, 0, dc, 1, 3);
    CHECK(b0.h - b0.e == b0.type_difference);
    CHECK(b0.inequality_holds);
  }
  for (int k = 0; k <= 3; ++k)
    for (int dc : {1, -1}) CHECK(bound_check(f, kc3, k, dc, 1, 3).inequality_holds);
  const auto kc4 = kernel_type_census(f, 4);
  for (int k = 0; k <= 4; ++k)
    for (int dc : {1, -1}) {
      const auto b = bound_check(f, kc4, k, dc, 2, 4);
      CHECK(b.inequality_holds);
      CHECK(b.chain_nonnegative);
    }
}

TEST_CASE("fiber census examples") {
  const FieldSpec f(3);
  const auto r = fiber_census(f, 1, 1, 1, 2);
  CHECK(r.all_pass());
  const auto& lower = r.strata[0];
  CHECK(lower.name == "rank 2t-2");
  CHECK(lower.matrices == 1);
  CHECK(lower.min_hyperbolic == 2);
  CHECK(lower.max_elliptic == 0);
  for (const auto& rep : fiber_census_all(f, 1, 3)) {
    CAPTURE(rep.k);
    CHECK(rep.all_pass());
    // Elliptic rank-2t minors with f != 0 carry q^{2t-1} + q^{t-1} = 4 elliptic extensions.
    const auto& top = rep.strata[4];
    if (top.elliptic_total > 0) CHECK(top.max_elliptic == 4);
  }
}

TEST_CASE("fiber census passes every stratum") {
  for (auto [q, max_m] : {std::pair{3, 4}, std::pair{5, 3}}) {
    const FieldSpec f(q);
    for (int m = 2; m <= max_m; ++m)
      for (int th = 1; 2 * th <= m; ++th) {
        const auto kc = kernel_type_census(f, m);
        for (const auto& r : fiber_census_all(f, th, m)) {
          CAPTURE(q);
          CAPTURE(m);
          CAPTURE(th);
          CAPTURE(r.k);
          CHECK(r.all_pass());
          CHECK(r.h == kc.hyperbolic(r.k, r.delta_class, 2 * th));
          CHECK(r.e == kc.elliptic(r.k, r.delta_class, 2 * th));
        }
      }
  }
}

TEST_CASE("odd rank ordering") {
  const FieldSpec f(3);
  const auto c = conjecture_check(f, 1, 3);
  CHECK(c.w2_low == 12);
  CHECK(c.w1 == 18);
  CHECK(c.w2_high == 24);
  CHECK(c.theta == 6);
  CHECK(c.holds());
  const auto c34 = conjecture_check(f, 3, 4);
  CHECK(c34.w1 == 14094);
  CHECK(c34.holds());
  // Exhaustive enumeration gives a gap of q^4(q-1)^2 here, not q^4(q-1).
  CHECK(c34.theta == 324);
}

TEST_CASE("W_2 equals W_1 at even rank") {
  // Direct formula evaluation where S_{m-1} is small, the difference identity
  // over the bordered census otherwise.
  for (int q : {3, 5, 7})
    for (int m = 2; m <= 5; ++m) {
      const FieldSpec f(q);
      const auto lower = kernel_type_census(f, m - 1, KernelMethod::Bordered);
      for (int th = 1; 2 * th <= m; ++th)
        for (int dc : {1, -1}) {
          CAPTURE(q);
          CAPTURE(m);
          CAPTURE(th);
          CHECK(weight_diff_identity(f, lower, 2, dc, th, m) == 0);
        }
    }
}

TEST_CASE("formula spectrum matches the enumerated spectrum") {
  for (auto [q, max_m] : {std::pair{3, 3}, std::pair{5, 2}}) {
    const FieldSpec f(q);
    for (int m = 1; m <= max_m; ++m) {
      const KernelSums sums = kernel_sums(f, m);
      for (int t = 1; t <= m; ++t)
        for (Variant v : {Variant::Affine, Variant::Projective}) {
          const CodeId id{q, m, t, v};
          const auto a = spectrum_from_formula(f, sums, id);
          const auto b = spectrum(f, id);
          CHECK(a.weights == b.weights);
          for (std::size_t i = 0; i < a.classes.size(); ++i) CHECK(a.classes[i].multiplicity == b.classes[i].multiplicity);
        }
    }
  }
}

TEST_CASE("distinct weights at even rank") {
  for (auto [q, max_m] : {std::pair{3, 5}, std::pair{5, 4}}) {
    const FieldSpec f(q);
    for (int m = 2; m <= max_m; ++m) {
      const KernelSums sums = kernel_sums(f, m);
      for (int t = 2; t <= m; t += 2) {
        const auto sp = spectrum_from_formula(f, sums, {q, m, t, Variant::Affine});
        std::set<Count> scan;
        for (int k = 1; k <= m; ++k)
          for (int dc : {1, -1}) scan.insert(weight_theorem(f, sums, k, dc, t, m));
        const int observed = int(sp.weights.size()) - 1;
        CHECK(observed == int(scan.size()));
        CHECK(observed <= 2 * m);
        MESSAGE("q=" << q << " m=" << m << " t=" << t << ": " << observed << " distinct non-zero weights, "
                     << (m + 1) / 2 - 1 << " from the estimate (m+1)/2-1");
      }
    }
  }
}
