// Command line front end: count, constant, verify, report.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "d4count/archimedean.hpp"
#include "d4count/counter.hpp"
#include "d4count/report.hpp"
#include "d4count/verify.hpp"

using namespace d4count;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kNoConvergence = 3 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// "start:factor:steps" -> round(start * factor^k), k < steps, duplicates after rounding dropped.
std::vector<i64> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("--grid expects start:factor:steps");
  i64 start;
  double factor;
  int steps;
  try {
    start = std::stoll(parts[0]);
    factor = std::stod(parts[1]);
    steps = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw UsageError("--grid: cannot parse '" + text + "'");
  }
  if (start < 1 || !(factor > 1) || steps < 1) throw UsageError("--grid needs start >= 1, factor > 1, steps >= 1");
  std::vector<i64> Bs;
  for (int k = 0; k < steps; ++k) {
    const double b = std::round(static_cast<double>(start) * std::pow(factor, k));
    if (b > static_cast<double>(kMaxCountBound)) throw UsageError("--grid exceeds the largest supported B");
    const auto B = static_cast<i64>(b);
    if (Bs.empty() || B > Bs.back()) Bs.push_back(B);
  }
  return Bs;
}

void print_checks(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and asymptotic counts of rational points on a split D4 quartic del Pezzo surface"};
  app.require_subcommand(1);

  auto* count = app.add_subcommand("count", "count points of height <= B");
  i64 B = 0;
  std::string grid, method = "torsor", counts_out;
  unsigned threads = 1;
  bool no_timing = false;
  auto* opt_B = count->add_option("--B", B, "height bound")->check(CLI::Range(i64{1}, kMaxCountBound));
  auto* opt_grid = count->add_option("--grid", grid, "geometric grid start:factor:steps");
  opt_B->excludes(opt_grid);
  count->add_option("--method", method, "torsor or oracle")->check(CLI::IsMember({"torsor", "oracle"}));
  count->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));
  count->add_option("--out", counts_out, "CSV path (stdout if omitted)");
  count->add_flag("--no-timing", no_timing, "write elapsed_ms as 0 for reproducible files");

  auto* constant = app.add_subcommand("constant", "leading constant of the asymptotic");
  i64 prime_limit = 1'000'000;
  double tol = kDefaultOmegaTol;
  std::uint64_t max_evals = kDefaultOmegaMaxEvals;
  std::string constant_out;
  constant->add_option("--prime-limit", prime_limit, "largest prime in the Euler product")
      ->check(CLI::Range(i64{2}, i64{4'000'000'000}));
  constant->add_option("--tol", tol, "quadrature tolerance for omega_inf")->check(CLI::PositiveNumber);
  constant->add_option("--max-evals", max_evals, "evaluation budget of the outer quadrature (exit 3 if exceeded)")
      ->check(CLI::Range(std::uint64_t{15}, std::uint64_t{100'000'000}));
  constant->add_option("--out", constant_out, "JSON path (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "run self-checks");
  std::string suite = "all";
  VerifyOptions vopt;
  verify->add_option("--suite", suite, "all, bijection, densities, archimedean or geometry")
      ->check(CLI::IsMember({"all", "bijection", "densities", "archimedean", "geometry"}));
  verify->add_option("--B", vopt.B, "bijection range")->check(CLI::Range(i64{1}, i64{100'000}));
  verify->add_option("--seed", vopt.seed, "random seed");

  auto* report = app.add_subcommand("report", "combine counts and constant into a JSON report");
  std::string report_counts, report_constant, report_out;
  report->add_option("--counts", report_counts, "counts CSV")->required();
  report->add_option("--constant", report_constant, "constant JSON")->required();
  report->add_option("--out", report_out, "report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (count->parsed()) {
      if (!*opt_B && !*opt_grid) throw UsageError("count needs --B or --grid");
      const std::vector<i64> Bs = *opt_B ? std::vector<i64>{B} : parse_grid(grid);
      auto records = count_series(Bs, method_from_string(method), threads);
      if (no_timing)
        for (auto& r : records) r.elapsed_ms = 0.0;
      if (counts_out.empty())
        write_counts_csv(std::cout, records);
      else
        write_counts_csv(counts_out, records);
      return kOk;
    }
    if (constant->parsed()) {
      const auto b = peyre_constant(prime_limit, tol, max_evals);
      const auto j = to_json(b);
      if (constant_out.empty())
        std::cout << j.dump(2) << '\n';
      else
        write_json(constant_out, j);
      return kOk;
    }
    if (verify->parsed()) {
      const auto checks = run_suite(suite, vopt);
      print_checks(checks);
      for (const auto& c : checks)
        if (!c.passed) return kCheckFailed;
      return kOk;
    }
    if (report->parsed()) {
      const auto records = read_counts_csv(report_counts);
      const auto peyre = peyre_from_json(read_json(report_constant));
      std::optional<FitResult> fit;
      try {
        fit = fit_polynomial(records);
      } catch (const std::invalid_argument& e) {
        std::cerr << "warning: no fit (" << e.what() << ")\n";
      }
      write_json(report_out, report_json(records, peyre, fit));
      std::cout << "c_total " << format_double(peyre.c_total) << '\n';
      if (fit) std::cout << "a5 " << format_double(fit->a[5]) << "  a5/c " << format_double(fit->a[5] / peyre.c_total) << '\n';
      return kOk;
    }
  } catch (const QuadratureError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
