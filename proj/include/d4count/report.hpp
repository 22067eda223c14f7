#pragma once

// Leading constant assembly, the log-polynomial fit and file formats.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "d4count/archimedean.hpp"
#include "d4count/counter.hpp"
#include "d4count/densities.hpp"

namespace d4count {

struct PeyreBreakdown {
  Rational alpha{1, 34560};
  Rational beta{1};
  double omega_inf = 0.0;
  double euler_G0 = 0.0;
  double tail_bound = 0.0;  // absolute bound on the Euler product truncation
  double c_total = 0.0;
};

/// alpha * beta * omega_inf * euler_G0 with the fixed alpha and beta.
PeyreBreakdown assemble_peyre(double omega_inf, double euler_G0, double tail_bound);

/// Full evaluation: omega_infinity(tol, max_evals) and euler_product_G0(prime_limit).
PeyreBreakdown peyre_constant(i64 prime_limit, double tol, std::uint64_t max_evals = kDefaultOmegaMaxEvals);

struct FitResult {
  std::array<double, 6> a{};  // N(B)/B ~ sum_k a[k] (log B)^k
  double residual = 0.0;      // Euclidean norm of the residual in N/B
  i64 B_min = 0;
  i64 B_max = 0;
};

inline constexpr std::size_t kFitMinRecords = 8;

/// Least squares of N/B on 1, log B, ..., (log B)^5. Needs at least 8 records
/// with strictly ascending B and B_max >= 1000 B_min.
FitResult fit_polynomial(const std::vector<CountRecord>& records);

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

inline constexpr const char* kCsvHeader = "B,count,method,elapsed_ms";

void write_counts_csv(std::ostream& out, const std::vector<CountRecord>& records);
std::vector<CountRecord> read_counts_csv(std::istream& in);
void write_counts_csv(const std::string& path, const std::vector<CountRecord>& records);
std::vector<CountRecord> read_counts_csv(const std::string& path);

nlohmann::json to_json(const CountRecord& r);
nlohmann::json to_json(const PeyreBreakdown& b);
nlohmann::json to_json(const FitResult& f, double c_total);
PeyreBreakdown peyre_from_json(const nlohmann::json& j);

/// {"counts": [...], "peyre": {...}, "fit": {...} or null}
nlohmann::json report_json(const std::vector<CountRecord>& records, const PeyreBreakdown& peyre,
                           const std::optional<FitResult>& fit);

/// Writes j.dump(2) plus a trailing newline.
void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

}  // namespace d4count
