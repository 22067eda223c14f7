#include "d4count/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include <Eigen/Dense>

#include "d4count/archimedean.hpp"

namespace d4count {

PeyreBreakdown assemble_peyre(double omega_inf, double euler_G0, double tail_bound) {
  PeyreBreakdown b;
  b.omega_inf = omega_inf;
  b.euler_G0 = euler_G0;
  b.tail_bound = tail_bound;
  b.c_total = boost::rational_cast<double>(b.alpha * b.beta) * omega_inf * euler_G0;
  return b;
}

PeyreBreakdown peyre_constant(i64 prime_limit, double tol, std::uint64_t max_evals) {
  if (prime_limit < 2) throw std::invalid_argument("peyre_constant: prime_limit must be >= 2");
  const auto omega = omega_infinity(tol, max_evals);
  const auto euler = euler_product_G0(prime_limit);
  return assemble_peyre(omega.value, euler.value, euler.tail_bound);
}

FitResult fit_polynomial(const std::vector<CountRecord>& records) {
  if (records.size() < kFitMinRecords)
    throw std::invalid_argument("fit_polynomial: need at least " + std::to_string(kFitMinRecords) + " records");
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].B < 1) throw std::invalid_argument("fit_polynomial: B must be positive");
    if (i > 0 && records[i].B <= records[i - 1].B) throw std::invalid_argument("fit_polynomial: B must be strictly ascending");
  }
  const i64 B_min = records.front().B, B_max = records.back().B;
  if (static_cast<double>(B_max) < 1000.0 * static_cast<double>(B_min))
    throw std::invalid_argument("fit_polynomial: records must span at least three decades of B");

  const auto n = static_cast<Eigen::Index>(records.size());
  Eigen::MatrixXd X(n, 6);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = records[static_cast<std::size_t>(i)];
    const double L = std::log(static_cast<double>(r.B));
    double p = 1.0;
    for (int k = 0; k < 6; ++k, p *= L) X(i, k) = p;
    y(i) = static_cast<double>(r.count) / static_cast<double>(r.B);
  }
  // Unit-norm columns before the QR; the powers of log B differ by orders of magnitude.
  Eigen::VectorXd scale = X.colwise().norm().transpose();
  for (int k = 0; k < 6; ++k) X.col(k) /= scale(k);
  const Eigen::VectorXd z = X.colPivHouseholderQr().solve(y);

  FitResult f;
  for (int k = 0; k < 6; ++k) f.a[static_cast<std::size_t>(k)] = z(k) / scale(k);
  f.residual = (X * z - y).norm();
  f.B_min = B_min;
  f.B_max = B_max;
  return f;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

namespace {

template <class T>
T parse_number(std::string_view s, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error(std::string("counts csv: bad ") + what + " '" + std::string(s) + "'");
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

void write_counts_csv(std::ostream& out, const std::vector<CountRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records)
    out << r.B << ',' << r.count << ',' << to_string(r.method) << ',' << format_double(r.elapsed_ms) << '\n';
}

std::vector<CountRecord> read_counts_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("counts csv: missing or wrong header");
  std::vector<CountRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      cells.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cells.size() != 4) throw std::runtime_error("counts csv: expected 4 columns in '" + line + "'");
    CountRecord r;
    r.B = parse_number<i64>(cells[0], "B");
    r.count = parse_number<std::uint64_t>(cells[1], "count");
    r.method = method_from_string(std::string(cells[2]));
    r.elapsed_ms = parse_number<double>(cells[3], "elapsed_ms");
    out.push_back(r);
  }
  return out;
}

void write_counts_csv(const std::string& path, const std::vector<CountRecord>& records) {
  auto out = open_out(path);
  write_counts_csv(out, records);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<CountRecord> read_counts_csv(const std::string& path) {
  auto in = open_in(path);
  return read_counts_csv(in);
}

namespace {
std::string rational_string(const Rational& r) {
  std::ostringstream s;
  s << r.numerator() << '/' << r.denominator();
  return r.denominator() == 1 ? std::to_string(r.numerator()) : s.str();
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_number<i64>(s, "rational"));
  return Rational(parse_number<i64>(std::string_view(s).substr(0, slash), "rational"),
                  parse_number<i64>(std::string_view(s).substr(slash + 1), "rational"));
}
}  // namespace

nlohmann::json to_json(const CountRecord& r) {
  return {{"B", r.B}, {"count", r.count}, {"method", to_string(r.method)}, {"elapsed_ms", r.elapsed_ms}};
}

nlohmann::json to_json(const PeyreBreakdown& b) {
  return {{"alpha", rational_string(b.alpha)}, {"beta", rational_string(b.beta)},
          {"omega_inf", b.omega_inf},          {"euler_G0", b.euler_G0},
          {"tail_bound", b.tail_bound},        {"c_total", b.c_total}};
}

nlohmann::json to_json(const FitResult& f, double c_total) {
  return {{"a", f.a},
          {"residual", f.residual},
          {"B_min", f.B_min},
          {"B_max", f.B_max},
          {"ratio_a5_over_c", f.a[5] / c_total}};
}

PeyreBreakdown peyre_from_json(const nlohmann::json& j) {
  PeyreBreakdown b = assemble_peyre(j.at("omega_inf").get<double>(), j.at("euler_G0").get<double>(),
                                    j.at("tail_bound").get<double>());
  if (parse_rational(j.at("alpha").get<std::string>()) != b.alpha ||
      parse_rational(j.at("beta").get<std::string>()) != b.beta)
    throw std::runtime_error("constant json: unexpected alpha or beta");
  b.c_total = j.at("c_total").get<double>();
  return b;
}

nlohmann::json report_json(const std::vector<CountRecord>& records, const PeyreBreakdown& peyre,
                           const std::optional<FitResult>& fit) {
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& r : records) counts.push_back(to_json(r));
  return {{"counts", counts}, {"peyre", to_json(peyre)}, {"fit", fit ? to_json(*fit, peyre.c_total) : nlohmann::json()}};
}

void write_json(const std::string& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

nlohmann::json read_json(const std::string& path) {
  auto in = open_in(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("'" + path + "': " + e.what());
  }
}

}  // namespace d4count
