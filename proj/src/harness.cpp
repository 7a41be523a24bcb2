#include "symdet/harness.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace symdet {

Json count_json(Count value) {
  if (auto v = to_int64(value)) return *v;
  return to_string(value);
}

const char* class_name(int delta_class) { return delta_class > 0 ? "square" : "nonsquare"; }

// ---------------------------------------------------------------------------
// Reports

void Report::expect(const std::string& name, const Json& expected, const Json& actual) {
  checks.push_back({name, expected, actual, expected == actual});
}

void Report::absorb(const std::string& prefix, const Report& other) {
  for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.expected, c.actual, c.pass});
}

bool Report::all_pass() const { return failures() == 0; }

std::size_t Report::failures() const {
  return std::size_t(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string plain(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string render(const Report& report, Format format, std::optional<double> runtime_ms) {
  std::ostringstream os;
  switch (format) {
    case Format::Json: {
      Json j;
      j["schema_version"] = kSchemaVersion;
      j["command"] = report.command;
      j["inputs"] = report.inputs;
      j["results"] = report.results;
      Json checks = Json::array();
      for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
      j["checks"] = std::move(checks);
      if (runtime_ms)
        j["runtime_ms"] = *runtime_ms;
      else
        j["runtime_ms"] = nullptr;
      os << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      if (!report.rows.empty()) {
        os << "q,m,t,k,delta_class,weight,method\n";
        for (const auto& r : report.rows)
          os << r.q << ',' << r.m << ',' << r.t << ',' << r.k << ',' << class_name(r.delta_class) << ','
             << to_string(r.weight) << ',' << csv_field(r.method) << "\n";
      } else {
        os << "name,expected,actual,pass\n";
        for (const auto& c : report.checks)
          os << csv_field(c.name) << ',' << csv_field(plain(c.expected)) << ',' << csv_field(plain(c.actual)) << ','
             << (c.pass ? "true" : "false") << "\n";
      }
      break;
    case Format::Markdown: {
      os << "# " << report.command << "\n\n## Inputs\n\n| key | value |\n|---|---|\n";
      for (const auto& [key, value] : report.inputs.items()) os << "| " << key << " | " << md_cell(plain(value)) << " |\n";
      os << "\n## Results\n\n```json\n" << report.results.dump(2) << "\n```\n";
      if (!report.rows.empty()) {
        os << "\n## Weights\n\n| q | m | t | k | delta class | weight | method |\n|---|---|---|---|---|---|---|\n";
        for (const auto& r : report.rows)
          os << "| " << r.q << " | " << r.m << " | " << r.t << " | " << r.k << " | " << class_name(r.delta_class)
             << " | " << to_string(r.weight) << " | " << r.method << " |\n";
      }
      os << "\n## Checks\n\n" << report.checks.size() - report.failures() << " of " << report.checks.size()
         << " passed.\n\n| check | expected | actual | pass |\n|---|---|---|---|\n";
      for (const auto& c : report.checks)
        os << "| " << md_cell(c.name) << " | " << md_cell(plain(c.expected)) << " | " << md_cell(plain(c.actual))
           << " | " << (c.pass ? "yes" : "**no**") << " |\n";
      if (runtime_ms) os << "\nruntime_ms: " << *runtime_ms << "\n";
      break;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Polynomials and fixtures

Poly::Poly(std::vector<Count> c) : c_(std::move(c)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Count Poly::eval(int q) const {
  Count v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = checked_add(checked_mul(v, q), *it);
  return v;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Count> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + Poly(-1) * b; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.c_.empty() || b.c_.empty()) return Poly();
  std::vector<Count> c(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

Poly Poly::pow(int e) const {
  Poly out(1);
  for (int i = 0; i < e; ++i) out = out * *this;
  return out;
}

namespace {

std::vector<TableCell> build_table(int m) {
  const Poly q = Poly::var();
  const Poly u = q - 1;  // q - 1
  auto Q = [&](int e) { return q.pow(e); };
  std::vector<TableCell> cells;
  auto add = [&](int k, int t, const char* label, const char* text, Poly base, Poly offset = Poly()) {
    cells.push_back({m, k, t, label, text, base, offset, !offset.empty()});
  };
  if (m == 3) {
    add(1, 1, "W_1", "q^2(q-1)", Q(2) * u);
    add(1, 2, "W_1", "q^4(q-1)", Q(4) * u);
    add(1, 3, "W_1", "q^5(q-1)", Q(5) * u);
    add(2, 1, "W_2", "q^2(q-1) +- q(q-1)", Q(2) * u, q * u);
    add(2, 2, "W_2", "q^4(q-1)", Q(4) * u);
    add(2, 3, "W_2", "q^5(q-1)", Q(5) * u);
    add(3, 1, "W_3", "q^2(q-1)", Q(2) * u);
    add(3, 2, "W_3", "q^4(q-1) + q^2(q-1)", Q(4) * u + Q(2) * u);
    add(3, 3, "W_3", "q^5(q-1)", Q(5) * u);
  } else if (m == 4) {
    const Poly w134 = Q(8) * u + Q(5) * u * u;
    add(1, 1, "W_1", "q^3(q-1)", Q(3) * u);
    add(1, 2, "W_1", "q^6(q-1)", Q(6) * u);
    add(1, 3, "W_1", "q^8(q-1) + q^5(q-1)^2", w134);
    add(1, 4, "W_1", "q^9(q-1)", Q(9) * u);
    add(2, 1, "W_2", "q^3(q-1) +- q^2(q-1)", Q(3) * u, Q(2) * u);
    add(2, 2, "W_2", "q^6(q-1)", Q(6) * u);
    add(2, 3, "W_2", "W_1(3,4) +- q^4(q-1)", w134, Q(4) * u);
    add(2, 4, "W_2", "q^9(q-1)", Q(9) * u);
    add(3, 1, "W_3", "q^3(q-1)", Q(3) * u);
    add(3, 2, "W_3", "q^6(q-1) + q^4(q-1)", Q(6) * u + Q(4) * u);
    add(3, 3, "W_3", "W_1(3,4)", w134);
    add(3, 4, "W_3", "q^9(q-1)", Q(9) * u);
    add(4, 1, "W_4", "q^3(q-1) +- q(q-1)", Q(3) * u, q * u);
    add(4, 2, "W_4", "q^6(q-1) + q^4(q-1)", Q(6) * u + Q(4) * u);
    add(4, 3, "W_4", "W_1(3,4) +- q^3(q-1)", w134, Q(3) * u);
    add(4, 4, "W_4", "q^9(q-1)", Q(9) * u);
  } else if (m == 5) {
    const Poly w125 = Q(8) * u;
    const Poly w135 = Q(11) * u + Q(8) * u * u + Q(6) * u * (Q(2) - 1);
    const Poly w145 = Q(13) * u + Q(10) * u * u;
    const Poly w325 = w125 + Q(6) * u;
    const Poly w345 = w145 + Q(8) * u * u;
    add(1, 1, "W_1", "q^4(q-1)", Q(4) * u);
    add(1, 2, "W_1", "q^8(q-1)", w125);
    add(1, 3, "W_1", "q^11(q-1) + q^8(q-1)^2 + q^6(q-1)(q^2-1)", w135);
    add(1, 4, "W_1", "q^13(q-1) + q^10(q-1)^2", w145);
    add(1, 5, "W_1", "q^14(q-1)", Q(14) * u);
    add(2, 1, "W_2", "q^4(q-1) +- q^3(q-1)", Q(4) * u, Q(3) * u);
    add(2, 2, "W_2", "W_1(2,5)", w125);
    add(2, 3, "W_2", "W_1(3,5) +- (q^7(q-1) + q^5(q-1)(q^2-1))", w135, Q(7) * u + Q(5) * u * (Q(2) - 1));
    add(2, 4, "W_2", "W_1(4,5)", w145);
    add(2, 5, "W_2", "q^14(q-1)", Q(14) * u);
    add(3, 1, "W_3", "q^4(q-1)", Q(4) * u);
    add(3, 2, "W_3", "W_1(2,5) + q^6(q-1)", w325);
    add(3, 3, "W_3", "W_1(3,5)", w135);
    add(3, 4, "W_3", "W_1(4,5) + q^8(q-1)^2", w345);
    add(3, 5, "W_3", "q^14(q-1)", Q(14) * u);
    add(4, 1, "W_4", "q^4(q-1) +- q^2(q-1)", Q(4) * u, Q(2) * u);
    add(4, 2, "W_4", "W_3(2,5)", w325);
    add(4, 3, "W_4", "W_1(3,5) +- (q^6(q-1) + q^4(q-1)(q^2-1))", w135, Q(6) * u + Q(4) * u * (Q(2) - 1));
    add(4, 4, "W_4", "W_3(4,5)", w345);
    add(4, 5, "W_4", "q^14(q-1)", Q(14) * u);
    // The last row is printed with the label W_4 again; it is the k = 5 row.
    add(5, 1, "W_4", "q^4(q-1)", Q(4) * u);
    add(5, 2, "W_4", "W_3(2,5) + q^4(q-1)", w325 + Q(4) * u);
    add(5, 3, "W_4", "W_1(3,5) +- q^3(q-1)", w135, Q(3) * u);
    add(5, 4, "W_4", "W_3(4,5) - q^6(q-1)", w345 - Q(6) * u);
    add(5, 5, "W_4", "q^14(q-1)", Q(14) * u);
  }
  return cells;
}

// chi((-1)^{floor(k/2)} delta) for the class representative delta.
int sign_class(const FieldSpec& f, int k, int delta_class) {
  Fe v = f.class_representative(delta_class);
  if ((k / 2) % 2 == 1) v = f.neg(v);
  return f.chi(v);
}

}  // namespace

const std::vector<TableCell>& table_fixture(int m) {
  static const std::vector<TableCell> t3 = build_table(3), t4 = build_table(4), t5 = build_table(5);
  switch (m) {
    case 3: return t3;
    case 4: return t4;
    case 5: return t5;
    default: throw Error(ErrorKind::InvalidArgument, "weight tables exist for m = 3, 4, 5 only");
  }
}

bool TableReport::all_match() const {
  for (const auto& c : cells)
    if (!c.match) return false;
  return true;
}

bool within_budget(int q, int m, std::uint64_t budget) { return space_size(q, m) <= Count(budget); }

TableReport reproduce_tables(const FieldSpec& f, int m, bool brute_force, const ScanOptions& opt) {
  const auto& cells = table_fixture(m);
  const int q = f.q();
  TableReport rep;
  rep.q = q;
  rep.m = m;

  const KernelSums sums = kernel_sums(f, m, opt);
  const FieldSpec f3(3);
  const KernelSums sums3 = q == 3 ? sums : kernel_sums(f3, m, opt);
  std::optional<RestrictedWeightTable> brute;
  if (brute_force && within_budget(q, m, opt.budget)) {
    brute = restricted_weight_table_bf(f, m, opt);
    rep.brute_force = true;
  }

  for (const auto& cell : cells) {
    if (cell.plus_minus) {
      // Which sign each class takes at q = 3, as a multiple of sign_class.
      const Count b3 = cell.base.eval(3), o3 = cell.offset.eval(3);
      int binding = 0;
      bool consistent = true;
      for (int dc : {1, -1}) {
        const Count w = weight_theorem(f3, sums3, cell.k, dc, cell.t, m);
        const int s = w == b3 + o3 ? 1 : (w == b3 - o3 ? -1 : 0);
        const int b = s * sign_class(f3, cell.k, dc);
        if (b == 0 || (binding != 0 && b != binding)) consistent = false;
        binding = b;
      }
      if (!consistent) binding = 0;
      rep.bindings.push_back({&cell, binding});
      for (int dc : {1, -1}) {
        CellResult r;
        r.cell = &cell;
        r.delta_class = dc;
        r.sign = binding * sign_class(f, cell.k, dc);
        r.expected = checked_add(cell.base.eval(q), checked_mul(r.sign, cell.offset.eval(q)));
        r.formula = weight_theorem(f, sums, cell.k, dc, cell.t, m);
        if (brute) r.brute = brute->weight(cell.k, dc, cell.t);
        r.match = binding != 0 && r.formula == r.expected && (!r.brute || *r.brute == r.expected);
        rep.cells.push_back(r);
      }
    } else {
      // One printed value stands for both classes.
      CellResult r;
      r.cell = &cell;
      r.delta_class = 0;
      r.expected = cell.base.eval(q);
      r.match = true;
      for (int dc : {1, -1}) {
        const Count w = weight_theorem(f, sums, cell.k, dc, cell.t, m);
        if (dc > 0) r.formula = w;
        r.match = r.match && w == r.expected;
        if (brute) {
          const Count b = brute->weight(cell.k, dc, cell.t);
          if (dc > 0) r.brute = b;
          r.match = r.match && b == r.expected;
        }
      }
      rep.cells.push_back(r);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// lambda / gamma oracle

LambdaGammaCheck lambda_gamma_check(const FieldSpec& f, int m, int direct_max_m, std::uint64_t budget) {
  const int q = f.q();
  std::vector<Count> lam(std::size_t(2 * (m + 1)), 0), gam(std::size_t(2 * (m + 1) * q), 0);
  for (int r = 0; r <= m; ++r)
    for (int c = 0; c < 2; ++c) {
      const int dc = c == 0 ? 1 : -1;
      lam[std::size_t(r * 2 + c)] = lambda_closed(f, r, dc);
      for (int a = 1; a < q; ++a) gam[std::size_t((r * 2 + c) * q + a)] = gamma_closed(f, r, dc, Fe{std::uint8_t(a)});
    }
  LambdaGammaCheck out;
  HistogramCache cache(f);
  std::array<Fe, kMaxDim> piv{};
  for_each_matrix(
      f, m,
      [&](const SymMatrix& b) {
        const RankDisc rd = rank_disc(f, b);
        const std::size_t c = std::size_t(rd.rank * 2 + class_index(rd.disc_class));
        const int r = diagonal_pivots(f, b, piv);
        const auto& hist = cache.get(std::span<const Fe>(piv.data(), std::size_t(r)));
        ++out.matrices;
        if (hist[0] != lam[c]) ++out.lambda_mismatches;
        bool gamma_ok = true;
        for (int a = 1; a < q; ++a)
          if (hist[std::size_t(f.neg(Fe{std::uint8_t(a)}).value)] != gam[c * std::size_t(q) + std::size_t(a)])
            gamma_ok = false;
        if (!gamma_ok) ++out.gamma_mismatches;
        if (m <= direct_max_m) {
          const auto direct = rowspan_histogram_direct(f, b);
          bool ok = direct[0] == lam[c];
          for (int a = 1; a < q; ++a)
            ok = ok && direct[std::size_t(f.neg(Fe{std::uint8_t(a)}).value)] == gam[c * std::size_t(q) + std::size_t(a)];
          ++out.direct_checked;
          if (!ok) ++out.direct_mismatches;
        }
      },
      budget);
  return out;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, what);
}

std::string tag(int t, int k, int dc) {
  return "t=" + std::to_string(t) + " k=" + std::to_string(k) + " delta=" + class_name(dc);
}

Json count_array(const std::vector<Count>& v) {
  Json a = Json::array();
  for (Count x : v) a.push_back(count_json(x));
  return a;
}

// Rank of a matrix over F_q by row reduction.
int matrix_rank(const FieldSpec& f, std::vector<std::vector<Fe>> rows) {
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < int(rows.size()); ++c) {
    std::size_t p = std::size_t(rank);
    while (p < rows.size() && rows[p][c].value == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[std::size_t(rank)]);
    const Fe inv = f.inv(rows[std::size_t(rank)][c]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == std::size_t(rank) || rows[i][c].value == 0) continue;
      const Fe factor = f.mul(rows[i][c], inv);
      for (std::size_t j = c; j < cols; ++j)
        rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[std::size_t(rank)][j]));
    }
    ++rank;
  }
  return rank;
}

Json spectrum_json(const Spectrum& s) {
  Json classes = Json::array();
  for (const auto& c : s.classes)
    classes.push_back({{"k", c.k},
                       {"delta_class", c.k == 0 ? Json("none") : Json(class_name(c.delta_class))},
                       {"weight", count_json(c.weight)},
                       {"multiplicity", count_json(c.multiplicity)}});
  Json weights = Json::array();
  for (const auto& [w, n] : s.weights) weights.push_back({{"weight", count_json(w)}, {"multiplicity", count_json(n)}});
  return {{"classes", classes}, {"weights", weights}};
}

Json census_json(const RankCensus& c) {
  return {{"s", count_array(c.s)},
          {"n_s", count_array(c.n_s)},
          {"N_s", count_array(c.N_s)},
          {"v_plus", count_array(c.v_plus)},
          {"v_minus", count_array(c.v_minus)}};
}

// Enumerated rank and type tallies against the closed forms.
void census_checks(Report& rep, const FieldSpec& f, int m, const ScanOptions& opt) {
  const RankCensus closed = census(f.q(), m);
  const EnumeratedCensus seen = enumerate_census(f, m, opt);
  for (int r = 0; r <= m; ++r) rep.expect_count("s(" + std::to_string(r) + ")", closed.s[std::size_t(r)], seen.by_rank[std::size_t(r)]);
  for (int r = 0; 2 * r <= m; ++r) {
    rep.expect_count("v_plus(" + std::to_string(2 * r) + ")", closed.v_plus[std::size_t(r)],
                     seen.hyperbolic[std::size_t(2 * r)]);
    rep.expect_count("v_minus(" + std::to_string(2 * r) + ")", closed.v_minus[std::size_t(r)],
                     seen.elliptic[std::size_t(2 * r)]);
  }
}

const TableCell* table_cell(int m, int k, int t) {
  if (m < 3 || m > 5) return nullptr;
  for (const auto& c : table_fixture(m))
    if (c.k == k && c.t == t) return &c;
  return nullptr;
}

Json conjecture_json(const ConjectureReport& c) {
  return {{"t", c.t},
          {"w2_low", count_json(c.w2_low)},
          {"w1", count_json(c.w1)},
          {"w2_high", count_json(c.w2_high)},
          {"low_class", class_name(c.minus_delta_square_class)},
          {"theta", count_json(c.theta)},
          {"ordered", c.ordered},
          {"equal_gaps", c.equal_gaps},
          {"reversed_ordering", c.reversed_ordering},
          {"low_is_global_min", c.low_is_global_min},
          {"holds", c.holds()}};
}

void conjecture_checks(Report& rep, const ConjectureReport& c, const std::string& prefix) {
  rep.expect_true(prefix + "W2(-delta square) < W1 < W2(-delta nonsquare)", c.ordered);
  rep.expect_true(prefix + "equal gaps", c.equal_gaps);
  rep.expect_true(prefix + "W2(-delta square) is the minimum weight", c.low_is_global_min);
  if (const TableCell* cell = table_cell(c.m, 2, c.t); cell && cell->plus_minus)
    rep.expect_count(prefix + "theta matches " + cell->text, cell->offset.eval(c.q), c.theta);
}

Json fiber_json(const FiberReport& r) {
  Json strata = Json::array();
  for (const auto& s : r.strata)
    strata.push_back({{"stratum", s.name},
                      {"minors", count_json(s.matrices)},
                      {"passed", count_json(s.passed)},
                      {"hyperbolic_total", count_json(s.hyperbolic_total)},
                      {"elliptic_total", count_json(s.elliptic_total)},
                      {"hyperbolic_fiber", {count_json(s.min_hyperbolic), count_json(s.max_hyperbolic)}},
                      {"elliptic_fiber", {count_json(s.min_elliptic), count_json(s.max_elliptic)}}});
  return {{"k", r.k}, {"delta_class", class_name(r.delta_class)}, {"h", count_json(r.h)}, {"e", count_json(r.e)},
          {"strata", strata}};
}

Json bound_json(const BoundReport& b) {
  return {{"k", b.k},
          {"delta_class", class_name(b.delta_class)},
          {"h_minus_e", count_json(b.h - b.e)},
          {"bound", b.bound.str()},
          {"type_difference", count_json(b.type_difference)},
          {"slack", b.slack.str()},
          {"inequality_holds", b.inequality_holds},
          {"chain_nonnegative", b.chain_nonnegative},
          {"chain_is_zero", b.chain_is_zero}};
}

void min_distance_fields(Json& out, const MinDistanceReport& md) {
  out["d"] = count_json(md.distance);
  out["affine_d"] = count_json(md.affine_distance);
  out["method"] = md.method;
  out["theorem"] = md.theorem;
  if (md.minimizer) out["minimizer"] = {{"k", md.minimizer->k}, {"delta_class", class_name(md.minimizer->delta_class)}};
  if (md.corollary_value) {
    out["corollary_value"] = count_json(*md.corollary_value);
    out["corollary_variant"] = "projective";
    out["corollary_note"] =
        "the corollary's formula evaluates to W_1/(q-1), the projective distance, although its statement names the "
        "affine code";
  } else {
    out["predicted_minimizer"] = {{"k", 2}, {"delta_class", class_name(md.predicted_class)}};
    out["prediction_holds"] = md.prediction_holds;
  }
}

}  // namespace

Report params_command(const CodeId& id) {
  validate(id);
  Report rep;
  rep.command = "params";
  rep.inputs = {{"q", id.q}, {"m", id.m}, {"t", id.t}, {"variant", to_string(id.variant)}};
  const CodeParams p = code_params(id);
  rep.results = {{"n", count_json(p.length)}, {"k", p.dimension}};
  const FieldSpec f(id.q);
  if (within_budget(id.q, id.m, 1u << 16)) {
    const auto rows = generator_matrix(f, id);
    rep.expect_count("length equals the number of evaluation points", p.length,
                     rows.empty() ? 0 : Count(rows[0].size()));
    rep.expect("generator matrix has full rank", p.dimension, matrix_rank(f, rows));
  }
  return rep;
}

Report weight_command(const FieldSpec& f, int m, int t, std::optional<int> k, std::optional<int> delta_class,
                      const ScanOptions& opt) {
  validate(CodeId{f.q(), m, t, Variant::Affine});
  require(!k || (*k >= 1 && *k <= m), "--k must lie in 1..m");
  Report rep;
  rep.command = "weight";
  rep.inputs = {{"q", f.q()}, {"m", m}, {"t", t}};
  if (k) rep.inputs["k"] = *k;
  if (delta_class) rep.inputs["delta_class"] = class_name(*delta_class);
  const bool brute = within_budget(f.q(), m, opt.budget);
  rep.inputs["brute_force"] = brute;
  const WeightContext ctx = weight_context(f, m, brute, opt);
  Json weights = Json::array();
  for (int kk = 1; kk <= m; ++kk) {
    if (k && kk != *k) continue;
    for (int dc : {1, -1}) {
      if (delta_class && dc != *delta_class) continue;
      const WeightReport wr = weight_report(f, ctx, kk, dc, t, m);
      Json methods = Json::object();
      for (const auto& [method, v] : wr.values) {
        methods[to_string(method)] = count_json(v);
        if (method != WeightMethod::ThmWeightoffk)
          rep.expect_count(tag(t, kk, dc) + " " + to_string(method), wr.value, v);
      }
      weights.push_back({{"k", kk}, {"delta_class", class_name(dc)}, {"weight", count_json(wr.value)},
                         {"methods", methods}, {"agree", wr.agree()}});
      rep.rows.push_back({f.q(), m, t, kk, dc, wr.value, "ThmWeightoffk"});
    }
  }
  rep.results = {{"weights", weights}};
  return rep;
}

Report spectrum_command(const FieldSpec& f, const CodeId& id, const ScanOptions& opt) {
  validate(id);
  Report rep;
  rep.command = "spectrum";
  rep.inputs = {{"q", id.q}, {"m", id.m}, {"t", id.t}, {"variant", to_string(id.variant)}};
  const KernelSums sums = kernel_sums(f, id.m, opt);
  const Spectrum sp = spectrum_from_formula(f, sums, id);
  CodeId other = id;
  other.variant = id.variant == Variant::Affine ? Variant::Projective : Variant::Affine;
  const Spectrum sp_other = spectrum_from_formula(f, sums, other);
  rep.results = spectrum_json(sp);
  const int nonzero = int(std::count_if(sp.weights.begin(), sp.weights.end(), [](auto& w) { return w.first != 0; }));
  rep.results["distinct_nonzero_weights"] = nonzero;
  if (id.t % 2 == 0) rep.results["distinct_weight_estimate"] = (id.m + 1) / 2 - 1;

  Count total = 0;
  for (const auto& [w, n] : sp.weights) total += n;
  rep.expect_count("multiplicities sum to q^N", ipow(f.q(), packed_size(id.m)), total);
  rep.expect_true("at most 2m+1 distinct weights", int(sp.weights.size()) <= 2 * id.m + 1);
  for (std::size_t i = 0; i < sp.classes.size(); ++i) {
    const auto& a = id.variant == Variant::Affine ? sp.classes[i] : sp_other.classes[i];
    const auto& p = id.variant == Variant::Affine ? sp_other.classes[i] : sp.classes[i];
    if (a.k == 0) continue;
    rep.expect_count(tag(id.t, a.k, a.delta_class) + " affine = (q-1) projective", a.weight,
                     checked_mul(p.weight, f.q() - 1));
  }
  if (within_budget(f.q(), id.m, opt.budget)) {
    const Spectrum bf = spectrum(f, id, opt);
    for (std::size_t i = 0; i < sp.classes.size(); ++i) {
      const auto& c = sp.classes[i];
      if (c.k == 0) continue;
      rep.expect_count(tag(id.t, c.k, c.delta_class) + " weight by enumeration", c.weight, bf.classes[i].weight);
      rep.expect_count(tag(id.t, c.k, c.delta_class) + " multiplicity by enumeration", c.multiplicity,
                       bf.classes[i].multiplicity);
    }
  }
  for (const auto& c : sp.classes)
    if (c.k > 0) rep.rows.push_back({f.q(), id.m, id.t, c.k, c.delta_class, c.weight, "ThmWeightoffk"});
  return rep;
}

Report mindist_command(const FieldSpec& f, const CodeId& id, const ScanOptions& opt) {
  validate(id);
  Report rep;
  rep.command = "mindist";
  rep.inputs = {{"q", id.q}, {"m", id.m}, {"t", id.t}, {"variant", to_string(id.variant)}};
  const KernelSums sums = kernel_sums(f, id.m, opt);
  const MinDistanceReport md = min_distance(f, sums, id.t, id.m, id.variant, true);
  min_distance_fields(rep.results, md);
  Json cands = Json::array();
  for (const auto& c : md.candidates) {
    cands.push_back({{"k", c.k}, {"delta_class", class_name(c.delta_class)}, {"weight", count_json(c.weight)}});
    rep.rows.push_back({f.q(), id.m, id.t, c.k, c.delta_class, c.weight, "ThmWeightoffk"});
  }
  rep.results["candidates"] = cands;
  if (id.t % 2 == 0) {
    rep.expect_count("minimum over candidates equals W_1", md.affine_distance, md.minimizer->weight);
    rep.expect_count("corollary formula equals the projective distance", exact_div(md.affine_distance, f.q() - 1),
                     *md.corollary_value);
  }
  rep.expect_count("closed-form W_1 equals the k=1 weight", weight_w1(f.q(), id.t, id.m),
                   weight_theorem(f, sums, 1, 1, id.t, id.m));
  if (within_budget(f.q(), id.m, opt.budget)) {
    const auto bf = restricted_weight_table_bf(f, id.m, opt);
    Count best = -1;
    for (int k = 1; k <= id.m; ++k)
      for (int dc : {1, -1})
        if (best < 0 || bf.weight(k, dc, id.t) < best) best = bf.weight(k, dc, id.t);
    rep.expect_count("minimum over enumerated weights", md.affine_distance, best);
  }
  return rep;
}

Report fibers_command(const FieldSpec& f, int m, int two_t, std::optional<int> k, std::optional<int> delta_class,
                      const ScanOptions& opt) {
  require(two_t >= 2 && two_t % 2 == 0 && two_t <= m, "--t must be an even rank 2t with 2 <= 2t <= m");
  require(!k || (*k >= 1 && *k <= m), "--k must lie in 1..m");
  Report rep;
  rep.command = "fibers";
  rep.inputs = {{"q", f.q()}, {"m", m}, {"t", two_t}};
  if (k) rep.inputs["k"] = *k;
  if (delta_class) rep.inputs["delta_class"] = class_name(*delta_class);
  const auto all = fiber_census_all(f, two_t / 2, m, opt.budget);
  const KernelTypeCensus kc = kernel_type_census(f, m, KernelMethod::Bordered, opt);
  Json reports = Json::array();
  for (const auto& r : all) {
    if ((k && r.k != *k) || (delta_class && r.delta_class != *delta_class)) continue;
    reports.push_back(fiber_json(r));
    const std::string p = "k=" + std::to_string(r.k) + " delta=" + class_name(r.delta_class) + " ";
    for (const auto& s : r.strata) rep.expect_count(p + s.name + ": minors passing", s.matrices, s.passed);
    rep.expect_count(p + "fibers sum to h", kc.hyperbolic(r.k, r.delta_class, two_t), r.h);
    rep.expect_count(p + "fibers sum to e", kc.elliptic(r.k, r.delta_class, two_t), r.e);
  }
  rep.results = {{"fibers", reports}};
  return rep;
}

Report conjecture_command(const FieldSpec& f, int m, int t, const ScanOptions& opt) {
  require(t % 2 == 1 && t >= 1 && t < m && m <= kMaxDim, "--t must be odd with t < m");
  Report rep;
  rep.command = "conjecture";
  rep.inputs = {{"q", f.q()}, {"m", m}, {"t", t}};
  const ConjectureReport c = conjecture_check(f, t, m, opt);
  rep.results = conjecture_json(c);
  conjecture_checks(rep, c, "");
  return rep;
}

namespace {

Json table_json(const TableReport& tr) {
  Json cells = Json::array();
  for (const auto& c : tr.cells) {
    Json j = {{"k", c.cell->k},
              {"t", c.cell->t},
              {"label", c.cell->label},
              {"text", c.cell->text},
              {"delta_class", c.delta_class == 0 ? Json("both") : Json(class_name(c.delta_class))},
              {"expected", count_json(c.expected)},
              {"formula", count_json(c.formula)}};
    if (c.cell->plus_minus) j["sign"] = c.sign > 0 ? "+" : (c.sign < 0 ? "-" : "unresolved");
    if (c.brute) j["brute_force"] = count_json(*c.brute);
    j["match"] = c.match;
    cells.push_back(j);
  }
  Json bindings = Json::array();
  for (const auto& b : tr.bindings)
    bindings.push_back({{"k", b.cell->k},
                        {"t", b.cell->t},
                        {"rule", b.binding == 0 ? std::string("unresolved")
                                                : std::string(b.binding > 0 ? "+" : "-") +
                                                      " when chi((-1)^floor(k/2) delta) = 1"}});
  return {{"cells", cells}, {"sign_bindings", bindings}, {"brute_force", tr.brute_force}};
}

void table_checks(Report& rep, const TableReport& tr, const std::string& prefix) {
  for (const auto& c : tr.cells) {
    std::string name = prefix + c.cell->label + "(" + std::to_string(c.cell->t) + "," + std::to_string(tr.m) +
                       ") k=" + std::to_string(c.cell->k);
    if (c.delta_class != 0) name += std::string(" delta=") + class_name(c.delta_class);
    Json actual = count_json(c.formula);
    if (c.brute && *c.brute != c.formula) actual = {{"formula", count_json(c.formula)}, {"brute_force", count_json(*c.brute)}};
    rep.checks.push_back({name + " = " + c.cell->text, count_json(c.expected), actual, c.match});
  }
}

}  // namespace

Report tables_command(const FieldSpec& f, int m, const ScanOptions& opt) {
  Report rep;
  rep.command = "tables";
  rep.inputs = {{"q", f.q()}, {"m", m}};
  const TableReport tr = reproduce_tables(f, m, true, opt);
  rep.results = table_json(tr);
  table_checks(rep, tr, "");
  const KernelSums sums = kernel_sums(f, m, opt);
  for (int t = 1; t <= m; ++t)
    for (int k = 1; k <= m; ++k)
      for (int dc : {1, -1}) rep.rows.push_back({f.q(), m, t, k, dc, weight_theorem(f, sums, k, dc, t, m), "ThmWeightoffk"});
  return rep;
}

Report verify_command(const FieldSpec& f, int m, const ScanOptions& opt) {
  require(m >= 1 && m <= kMaxDim, "--m must lie in 1..8");
  const int q = f.q();
  Report rep;
  rep.command = "verify";
  rep.inputs = {{"q", q}, {"m", m}};
  const bool brute = within_budget(q, m, opt.budget);
  rep.inputs["brute_force"] = brute;
  Json results = Json::object();
  results["census"] = census_json(census(q, m));

  if (brute) {
    census_checks(rep, f, m, opt);
    const auto lg = lambda_gamma_check(f, m, 3, opt.budget);
    rep.expect_count("lambda closed form vs enumeration, mismatching B", 0, lg.lambda_mismatches);
    rep.expect_count("gamma closed form vs enumeration, mismatching B", 0, lg.gamma_mismatches);
    if (lg.direct_checked > 0)
      rep.expect_count("lambda/gamma vs row-span enumeration, mismatching B", 0, lg.direct_mismatches);
    rep.expect_true("kernel type census: bordered = direct",
                    kernel_type_census(f, m, KernelMethod::Bordered, opt) ==
                        kernel_type_census(f, m, KernelMethod::Direct, opt));
  }

  // Weights, four ways.
  const WeightContext ctx = weight_context(f, m, brute, opt);
  Json weights = Json::array();
  for (int t = 1; t <= m; ++t)
    for (int k = 1; k <= m; ++k)
      for (int dc : {1, -1}) {
        const WeightReport wr = weight_report(f, ctx, k, dc, t, m);
        for (const auto& [method, v] : wr.values)
          if (method != WeightMethod::ThmWeightoffk) rep.expect_count(tag(t, k, dc) + " " + to_string(method), wr.value, v);
        weights.push_back({{"t", t}, {"k", k}, {"delta_class", class_name(dc)}, {"weight", count_json(wr.value)}});
        rep.rows.push_back({q, m, t, k, dc, wr.value, brute ? "ThmWeightoffk=BruteForce" : "ThmWeightoffk"});
      }
  results["weights"] = weights;

  // Minimum distances.
  Json dists = Json::array();
  for (int t = 1; t <= m; ++t) {
    const auto md = min_distance(f, ctx.sums, t, m, Variant::Affine, true);
    Json d = {{"t", t}};
    min_distance_fields(d, md);
    d["projective_d"] = count_json(exact_div(md.affine_distance, q - 1));
    dists.push_back(d);
    if (t % 2 == 0) {
      rep.expect_count("t=" + std::to_string(t) + " minimum over candidates equals W_1", md.affine_distance,
                       md.minimizer->weight);
      rep.expect_count("t=" + std::to_string(t) + " corollary formula equals the projective distance",
                       exact_div(md.affine_distance, q - 1), *md.corollary_value);
    }
  }
  results["min_distance"] = dists;

  // Kernel difference bound, all k, every even rank.
  if (m >= 2) {
    const KernelTypeCensus kc = kernel_type_census(f, m, KernelMethod::Auto, opt);
    Json bounds = Json::array();
    for (int th = 1; 2 * th <= m; ++th)
      for (int k = 0; k <= m; ++k)
        for (int dc : {1, -1}) {
          const auto b = bound_check(f, kc, k, dc, th, m);
          Json bj = bound_json(b);
          bj["two_t"] = 2 * th;
          bounds.push_back(bj);
          const std::string p = "2t=" + std::to_string(2 * th) + " k=" + std::to_string(k) + " delta=" + class_name(dc);
          rep.expect_true(p + " h - e <= bound", b.inequality_holds);
          rep.expect_true(p + " (v+ - v-) - bound >= 0", b.chain_nonnegative);
        }
    results["bounds"] = bounds;
  }

  // Fibers.
  if (m >= 2 && brute) {
    const KernelTypeCensus kc = kernel_type_census(f, m, KernelMethod::Auto, opt);
    Json fibers = Json::array();
    for (int th = 1; 2 * th <= m; ++th)
      for (const auto& r : fiber_census_all(f, th, m, opt.budget)) {
        Json fj = fiber_json(r);
        fj["two_t"] = 2 * th;
        fibers.push_back(fj);
        const std::string p =
            "fibers 2t=" + std::to_string(2 * th) + " k=" + std::to_string(r.k) + " delta=" + class_name(r.delta_class) + " ";
        for (const auto& s : r.strata) rep.expect_count(p + s.name + ": minors passing", s.matrices, s.passed);
        rep.expect_count(p + "sum to h", kc.hyperbolic(r.k, r.delta_class, 2 * th), r.h);
        rep.expect_count(p + "sum to e", kc.elliptic(r.k, r.delta_class, 2 * th), r.e);
      }
    results["fibers"] = fibers;
  }

  // Odd-rank ordering.
  Json conj = Json::array();
  for (int t = 1; t < m; t += 2) {
    const auto c = conjecture_check(f, ctx.sums, t, m);
    conj.push_back(conjecture_json(c));
    conjecture_checks(rep, c, "conjecture t=" + std::to_string(t) + " ");
  }
  results["conjecture"] = conj;

  // Spectrum structure.
  for (int t = 1; t <= m; ++t) {
    const Spectrum sp = spectrum_from_formula(f, ctx.sums, CodeId{q, m, t, Variant::Affine});
    rep.expect_true("t=" + std::to_string(t) + " at most 2m+1 distinct weights", int(sp.weights.size()) <= 2 * m + 1);
  }

  if (m >= 3 && m <= 5) {
    const TableReport tr = reproduce_tables(f, m, brute, opt);
    results["tables"] = table_json(tr);
    table_checks(rep, tr, "table ");
  }
  rep.results = std::move(results);
  return rep;
}

Report corpus_command(const ScanOptions& opt) {
  Report rep;
  rep.command = "corpus";
  rep.inputs = {{"fields", {3, 5, 7}}, {"max_m", {{"3", 5}, {"5", 4}, {"7", 3}}}};
  constexpr std::uint64_t kCheckBudget = 1u << 17;
  Json entries = Json::array();
  for (const auto& [q, max_m] : {std::pair{3, 5}, std::pair{5, 4}, std::pair{7, 3}}) {
    const FieldSpec f(q);
    for (int m = 1; m <= max_m; ++m) {
      const std::string p = "q=" + std::to_string(q) + " m=" + std::to_string(m) + " ";
      const bool check = within_budget(q, m, kCheckBudget);
      Json e = {{"q", q}, {"m", m}, {"census", census_json(census(q, m))}};
      if (check) {
        Report sub;
        census_checks(sub, f, m, opt);
        rep.absorb(p + "census ", sub);
      }
      const KernelSums sums = kernel_sums(f, m, opt);
      std::optional<RestrictedWeightTable> bf;
      if (check) bf = restricted_weight_table_bf(f, m, opt);

      Json params = Json::array(), weights = Json::array(), dists = Json::array(), spectra = Json::array(),
           conj = Json::array();
      for (int t = 1; t <= m; ++t) {
        const auto pa = code_params({q, m, t, Variant::Affine});
        const auto pp = code_params({q, m, t, Variant::Projective});
        params.push_back({{"t", t},
                          {"affine", {{"n", count_json(pa.length)}, {"k", pa.dimension}}},
                          {"projective", {{"n", count_json(pp.length)}, {"k", pp.dimension}}}});
        for (int k = 1; k <= m; ++k)
          for (int dc : {1, -1}) {
            const Count w = weight_theorem(f, sums, k, dc, t, m);
            weights.push_back({{"t", t}, {"k", k}, {"delta_class", class_name(dc)}, {"weight", count_json(w)}});
            if (bf) rep.expect_count(p + tag(t, k, dc) + " weight by enumeration", w, bf->weight(k, dc, t));
          }
        const auto md = min_distance(f, sums, t, m, Variant::Affine, true);
        dists.push_back({{"t", t},
                         {"affine", count_json(md.affine_distance)},
                         {"projective", count_json(exact_div(md.affine_distance, q - 1))},
                         {"method", md.method},
                         {"theorem", md.theorem}});
        if (t % 2 == 0) rep.expect_count(p + "t=" + std::to_string(t) + " d = W_1", md.affine_distance, md.minimizer->weight);
        const Spectrum sp = spectrum_from_formula(f, sums, {q, m, t, Variant::Affine});
        Json sw = Json::array();
        for (const auto& [w, n] : sp.weights) sw.push_back({count_json(w), count_json(n)});
        spectra.push_back({{"t", t}, {"weights", sw}});
        if (t % 2 == 1 && t < m) {
          const auto c = conjecture_check(f, sums, t, m);
          conj.push_back(conjecture_json(c));
        }
      }
      e["params"] = params;
      e["weights"] = weights;
      e["min_distance"] = dists;
      e["spectra"] = spectra;
      if (!conj.empty()) e["conjecture"] = conj;
      if (m >= 3 && m <= 5) {
        const TableReport tr = reproduce_tables(f, m, check, opt);
        int matched = 0;
        for (const auto& c : tr.cells) matched += c.match ? 1 : 0;
        e["tables"] = {{"cells", tr.cells.size()}, {"matched", matched}};
        Report sub;
        table_checks(sub, tr, "");
        rep.absorb(p + "table ", sub);
      }
      entries.push_back(e);
    }
  }
  rep.results = {{"entries", entries}};
  return rep;
}

}  // namespace symdet
