// Command-line front end: parameters, weights, spectra, minimum distances and
// the verification reports.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "symdet/harness.hpp"

namespace {

using namespace symdet;

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kBudget = 3 };

struct Flags {
  int q = 0, m = 0, t = 0, k = 0;
  std::string delta_class, variant = "affine", format = "json", out;
  std::uint64_t budget = kDefaultBudget;
  int workers = 1;
  bool no_timing = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void need(bool present, const std::string& flag, const std::string& command) {
  if (!present) throw UsageError(flag + " is required for " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weights and minimum distances of codes from symmetric determinantal varieties"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags fl;
  auto* q_opt = app.add_option("--q", fl.q, "field order, an odd prime <= 251");
  auto* m_opt = app.add_option("--m", fl.m, "matrix size")->check(CLI::Range(1, kMaxDim));
  auto* t_opt = app.add_option("--t", fl.t, "rank bound (the even rank 2t for fibers)")->check(CLI::PositiveNumber);
  auto* k_opt = app.add_option("--k", fl.k, "rank of the coefficient matrix")->check(CLI::PositiveNumber);
  app.add_option("--delta-class", fl.delta_class, "square class of delta")
      ->check(CLI::IsMember({"square", "nonsquare"}));
  app.add_option("--variant", fl.variant, "code variant")->check(CLI::IsMember({"affine", "projective"}));
  app.add_option("--format", fl.format, "output format")->check(CLI::IsMember({"json", "csv", "md"}));
  app.add_option("--out", fl.out, "write the report here instead of stdout");
  app.add_option("--budget", fl.budget, "largest matrix space to enumerate")->check(CLI::PositiveNumber);
  app.add_option("--workers", fl.workers, "enumeration worker threads")->check(CLI::Range(1, 256));
  app.add_flag("--no-timing", fl.no_timing, "write runtime_ms as null");

  const std::map<std::string, std::string> commands = {
      {"params", "code length and dimension"},
      {"weight", "weight of f_k^delta by every applicable method"},
      {"spectrum", "weight spectrum with multiplicities"},
      {"mindist", "minimum distance"},
      {"verify", "every cross-check for one (q, m)"},
      {"fibers", "fiber census over trailing minors"},
      {"conjecture", "ordering of W_2 around W_1 at odd rank"},
      {"tables", "reproduce the printed weight table for m = 3, 4, 5"},
      {"corpus", "regression corpus for q = 3, 5, 7"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  Report report;
  try {
    if (cmd != "corpus") need(q_opt->count() > 0, "--q", cmd);
    if (cmd != "corpus") need(m_opt->count() > 0, "--m", cmd);
    if (cmd == "params" || cmd == "weight" || cmd == "spectrum" || cmd == "mindist" || cmd == "fibers" ||
        cmd == "conjecture")
      need(t_opt->count() > 0, "--t", cmd);
    if (k_opt->count() > 0 && fl.k > fl.m) throw UsageError("--k must not exceed --m");
    if (t_opt->count() > 0 && fl.t > fl.m) throw UsageError("--t must not exceed --m");
    if (cmd == "tables" && (fl.m < 3 || fl.m > 5)) throw UsageError("--m must be 3, 4 or 5 for tables");

    const ScanOptions opt{fl.budget, fl.workers};
    const Variant variant = fl.variant == "projective" ? Variant::Projective : Variant::Affine;
    std::optional<int> k, dc;
    if (k_opt->count() > 0) k = fl.k;
    if (!fl.delta_class.empty()) dc = fl.delta_class == "square" ? 1 : -1;

    if (cmd == "corpus") {
      report = corpus_command(opt);
    } else {
      const FieldSpec f(fl.q);
      const CodeId id{fl.q, fl.m, fl.t, variant};
      if (cmd == "params") report = params_command(id);
      else if (cmd == "weight") report = weight_command(f, fl.m, fl.t, k, dc, opt);
      else if (cmd == "spectrum") report = spectrum_command(f, id, opt);
      else if (cmd == "mindist") report = mindist_command(f, id, opt);
      else if (cmd == "verify") report = verify_command(f, fl.m, opt);
      else if (cmd == "fibers") report = fibers_command(f, fl.m, fl.t, k, dc, opt);
      else if (cmd == "conjecture") report = conjecture_command(f, fl.m, fl.t, opt);
      else if (cmd == "tables") report = tables_command(f, fl.m, opt);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::BudgetExceeded: return kBudget;
      case ErrorKind::Overflow: return kMismatch;
      default: return kUsage;
    }
  }

  std::optional<double> runtime;
  if (!fl.no_timing)
    runtime = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const Format format = fl.format == "csv" ? Format::Csv : (fl.format == "md" ? Format::Markdown : Format::Json);
  const std::string text = render(report, format, runtime);
  if (fl.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(fl.out, std::ios::binary);
    if (!os) {
      std::cerr << "usage error: cannot write --out " << fl.out << "\n";
      return kUsage;
    }
    os << text;
  }
  if (!report.all_pass()) {
    std::cerr << report.failures() << " check(s) failed\n";
    return kMismatch;
  }
  return kOk;
}
