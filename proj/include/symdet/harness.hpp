#pragma once

// Report assembly and emission, weight-table fixtures, and the command
// implementations shared by the CLI and the test suites.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "symdet/codes.hpp"
#include "symdet/spectrum.hpp"

namespace symdet {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Counts that fit in 64 bits become JSON integers, larger ones strings.
Json count_json(Count value);
const char* class_name(int delta_class);  // "square" / "nonsquare"

struct Check {
  std::string name;
  Json expected;
  Json actual;
  bool pass = false;
};

struct WeightRow {
  int q = 0, m = 0, t = 0, k = 0, delta_class = 1;
  Count weight = 0;
  std::string method;
};

struct Report {
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  std::vector<Check> checks;
  std::vector<WeightRow> rows;

  void expect(const std::string& name, const Json& expected, const Json& actual);
  void expect_count(const std::string& name, Count expected, Count actual) {
    expect(name, count_json(expected), count_json(actual));
  }
  void expect_true(const std::string& name, bool actual) { expect(name, true, actual); }
  /// Appends another report's checks, prefixing their names.
  void absorb(const std::string& prefix, const Report& other);
  bool all_pass() const;
  std::size_t failures() const;
};

enum class Format { Json, Csv, Markdown };

/// runtime_ms is written as null when absent so that output can be compared
/// byte for byte.
std::string render(const Report& report, Format format, std::optional<double> runtime_ms);

// ---------------------------------------------------------------------------
// Weight-table fixtures

/// Integer polynomial in q, coefficients by ascending degree.
class Poly {
 public:
  Poly() = default;
  Poly(Count constant) : c_{constant} {}
  static Poly var() { return Poly(std::vector<Count>{0, 1}); }
  Count eval(int q) const;
  bool empty() const { return c_.empty(); }
  const std::vector<Count>& coefficients() const { return c_; }
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly pow(int e) const;

 private:
  explicit Poly(std::vector<Count> c);
  void trim();
  std::vector<Count> c_;
};

struct TableCell {
  int m = 0, k = 0, t = 0;
  std::string label;  // row label as printed; the m = 5 table prints W_4 twice
  std::string text;   // the cell as printed
  Poly base;
  Poly offset;        // zero for cells without a +/- term
  bool plus_minus = false;
};

/// The printed weight tables for m = 3, 4, 5.
const std::vector<TableCell>& table_fixture(int m);

struct CellResult {
  const TableCell* cell = nullptr;
  int delta_class = 1;
  int sign = 0;                     // resolved sign of the offset; 0 for plain cells
  Count expected = 0;
  Count formula = 0;
  std::optional<Count> brute;
  bool match = false;
};

struct SignBinding {
  const TableCell* cell = nullptr;
  /// sign(delta) = binding * chi((-1)^{floor(k/2)} delta); 0 if q = 3 left it unresolved.
  int binding = 0;
};

struct TableReport {
  int q = 0, m = 0;
  std::vector<CellResult> cells;
  std::vector<SignBinding> bindings;
  bool brute_force = false;
  bool all_match() const;
};

/// Resolves the sign binding of every +/- cell at q = 3 and then evaluates the
/// table at q. Brute force runs when `brute_force` is set and S_m fits the budget.
TableReport reproduce_tables(const FieldSpec& f, int m, bool brute_force, const ScanOptions& opt = {});

// ---------------------------------------------------------------------------
// Commands

struct LambdaGammaCheck {
  Count matrices = 0;
  Count lambda_mismatches = 0;
  Count gamma_mismatches = 0;
  Count direct_checked = 0;     // matrices also checked without diagonalizing
  Count direct_mismatches = 0;
};

/// Closed-form lambda / gamma against brute-force counts for every B in S_m
/// and every alpha. The non-diagonalizing oracle also runs when m <= direct_max_m.
LambdaGammaCheck lambda_gamma_check(const FieldSpec& f, int m, int direct_max_m = 3,
                                    std::uint64_t budget = kDefaultBudget);

bool within_budget(int q, int m, std::uint64_t budget);

Report params_command(const CodeId& id);
Report weight_command(const FieldSpec& f, int m, int t, std::optional<int> k, std::optional<int> delta_class,
                      const ScanOptions& opt);
Report spectrum_command(const FieldSpec& f, const CodeId& id, const ScanOptions& opt);
Report mindist_command(const FieldSpec& f, const CodeId& id, const ScanOptions& opt);
Report verify_command(const FieldSpec& f, int m, const ScanOptions& opt);
Report fibers_command(const FieldSpec& f, int m, int two_t, std::optional<int> k, std::optional<int> delta_class,
                      const ScanOptions& opt);
Report conjecture_command(const FieldSpec& f, int m, int t, const ScanOptions& opt);
Report tables_command(const FieldSpec& f, int m, const ScanOptions& opt);
/// Every verified value for q in {3, 5, 7}: q = 3 up to m = 5, q = 5 up to
/// m = 4, q = 7 up to m = 3. Enumeration cross-checks run where S_m has at
/// most 2^17 elements.
Report corpus_command(const ScanOptions& opt);

}  // namespace symdet
