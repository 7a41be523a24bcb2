#include <set>

#include "doctest.h"
#include "symdet/harness.hpp"

using namespace symdet;

TEST_CASE("polynomials in q") {
  const Poly q = Poly::var();
  const Poly p = q.pow(4) * (q - 1) + q.pow(2) * (q - 1);
  CHECK(p.eval(3) == 180);
  CHECK(p.coefficients() == std::vector<Count>{0, 0, -1, 1, -1, 1});
  CHECK((q - q).empty());
}

TEST_CASE("table fixtures") {
  CHECK(table_fixture(3).size() == 9);
  CHECK(table_fixture(4).size() == 16);
  CHECK(table_fixture(5).size() == 25);
  CHECK_THROWS_AS(table_fixture(6), Error);
  for (int m : {3, 4, 5}) {
    const int n = packed_size(m);
    for (const auto& c : table_fixture(m))
      if (c.t == m)
        for (int q : {3, 5, 7}) CHECK(c.base.eval(q) == ipow(q, n) - ipow(q, n - 1));
  }
}

TEST_CASE("m = 3 table at q = 3") {
  const FieldSpec f(3);
  const auto tr = reproduce_tables(f, 3, true);
  CHECK(tr.cells.size() == 10);
  CHECK(tr.all_match());
  CHECK(tr.brute_force);
  std::set<Count> w2;
  for (const auto& c : tr.cells)
    if (c.cell->k == 2 && c.cell->t == 1) w2.insert(c.formula);
  CHECK(w2 == std::set<Count>{12, 24});
}

TEST_CASE("m = 4 and m = 5 anchors") {
  const FieldSpec f(3);
  const auto t4 = reproduce_tables(f, 4, false);
  for (const auto& c : t4.cells)
    if (c.cell->k == 3 && c.cell->t == 2) {
      CHECK(c.expected == 1620);
      CHECK(c.match);
    }
  const auto t5 = reproduce_tables(f, 5, false);
  int last_column = 0;
  for (const auto& c : t5.cells)
    if (c.cell->t == 5) {
      CHECK(c.formula == 2 * ipow(3, 14));
      CHECK(c.match);
      ++last_column;
    }
  CHECK(last_column == 5);
}

TEST_CASE("sign bindings are stable across fields") {
  // Cells whose value at q = 3 fixes a binding keep matching at q = 5 and 7
  // exactly when the binding is right; plain t = 1 rows are a clean sample.
  for (int q : {5, 7}) {
    const FieldSpec f(q);
    const auto tr = reproduce_tables(f, 3, false);
    CHECK(tr.all_match());
    for (const auto& b : tr.bindings) CHECK(b.binding != 0);
  }
}

TEST_CASE("report rendering") {
  Report r;
  r.command = "demo";
  r.inputs = {{"q", 3}};
  r.results = {{"big", count_json(Count(1) << 80)}, {"small", count_json(42)}};
  r.expect_count("forty-two", 42, 42);
  r.expect("mismatch", 1, 2);
  r.rows.push_back({3, 2, 1, 1, -1, 4, "ThmWeightoffk"});
  CHECK(r.failures() == 1);
  CHECK_FALSE(r.all_pass());

  const auto j = Json::parse(render(r, Format::Json, std::nullopt));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"schema_version", "command", "inputs", "results", "checks", "runtime_ms"});
  CHECK(j["runtime_ms"].is_null());
  CHECK(j["results"]["big"] == "1208925819614629174706176");
  CHECK(j["results"]["small"] == 42);
  CHECK(j["checks"][1]["pass"] == false);

  CHECK(render(r, Format::Csv, 1.0) == "q,m,t,k,delta_class,weight,method\n3,2,1,1,nonsquare,4,ThmWeightoffk\n");
  const std::string md = render(r, Format::Markdown, std::nullopt);
  CHECK(md.find("# demo") == 0);
  CHECK(md.find("1 of 2 passed.") != std::string::npos);
}

TEST_CASE("commands") {
  const auto p = params_command({3, 3, 1, Variant::Projective});
  CHECK(p.results["n"] == 13);
  CHECK(p.results["k"] == 6);
  CHECK(p.all_pass());

  const FieldSpec f(3);
  const auto md = mindist_command(f, {3, 3, 2, Variant::Affine}, {});
  CHECK(md.results["d"] == 162);
  CHECK(md.results["method"] == "closed-form");
  CHECK(md.results["theorem"] == "mainthm");
  CHECK(md.all_pass());

  const auto w = weight_command(f, 3, 2, 3, 1, {});
  CHECK(w.results["weights"][0]["weight"] == 180);
  CHECK(w.all_pass());
}

TEST_CASE("lambda and gamma oracle check") {
  const FieldSpec f(5);
  const auto lg = lambda_gamma_check(f, 3);
  CHECK(lg.matrices == 15625);
  CHECK(lg.lambda_mismatches == 0);
  CHECK(lg.gamma_mismatches == 0);
  CHECK(lg.direct_checked == 15625);
  CHECK(lg.direct_mismatches == 0);
}

TEST_CASE("verify output does not depend on the worker count") {
  const FieldSpec f(3);
  const auto a = verify_command(f, 3, ScanOptions{kDefaultBudget, 1});
  const auto b = verify_command(f, 3, ScanOptions{kDefaultBudget, 3});
  CHECK(a.all_pass());
  CHECK(render(a, Format::Json, std::nullopt) == render(b, Format::Json, std::nullopt));
}
