#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "d4count/archimedean.hpp"
#include "d4count/report.hpp"

using namespace d4count;

namespace {

std::vector<CountRecord> synthetic(double (*q)(double)) {
  std::vector<CountRecord> out;
  for (int k = 0; k < 13; ++k) {
    const i64 B = static_cast<i64>(std::llround(1e6 * std::pow(10.0, k / 4.0)));
    const double L = std::log(static_cast<double>(B));
    // large B keeps the rounding of N to an integer below 1e-6 in N/B
    out.push_back({B, static_cast<std::uint64_t>(std::llround(static_cast<double>(B) * q(L))), Method::torsor, 0.0});
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("d4count_test_" + name)).string();
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("assemble_peyre") {
    const auto b = assemble_peyre(1.0, 1.0, 0.0);
    CHECK(b.alpha == Rational(1, 34560));
    CHECK(b.beta == Rational(1));
    CHECK(b.c_total == doctest::Approx(2.8935185185185185e-5).epsilon(1e-12));
    CHECK(assemble_peyre(2.0, 1.0, 0).c_total == doctest::Approx(2 * b.c_total).epsilon(1e-15));
    CHECK(assemble_peyre(1.0, 3.0, 0).c_total == doctest::Approx(3 * b.c_total).epsilon(1e-15));
  }

  TEST_CASE("peyre_constant") {
    const auto b = peyre_constant(1'000'000, kDefaultOmegaTol);
    CHECK(b.alpha == Rational(1, 34560));
    CHECK(b.c_total == doctest::Approx(b.omega_inf * b.euler_G0 / 34560).epsilon(1e-15));
    CHECK(b.c_total == doctest::Approx(4.279898543728117e-06).epsilon(1e-6));  // frozen
    CHECK(b.tail_bound > 0);
    CHECK_THROWS_AS(peyre_constant(1, 1e-5), std::invalid_argument);
  }

  TEST_CASE("fit_polynomial on its own model class") {
    auto f = fit_polynomial(synthetic([](double L) { return 2 * std::pow(L, 5) + 3; }));
    CHECK(f.a[5] == doctest::Approx(2).epsilon(1e-6));
    // a0 is the worst-conditioned coefficient; rounding N to integers moves it by ~1e-5
    CHECK(std::abs(f.a[0] - 3) < 1e-3);
    f = fit_polynomial(synthetic([](double) { return 7.0; }));
    CHECK(f.a[0] == doctest::Approx(7).epsilon(1e-9));
    for (int k = 1; k < 6; ++k) CHECK(std::abs(f.a[static_cast<std::size_t>(k)]) < 1e-9);
    CHECK(f.B_min == 1'000'000);
    CHECK(f.B_max == 1'000'000'000);
  }

  TEST_CASE("fit_polynomial is deterministic and rejects thin input") {
    auto recs = synthetic([](double L) { return 0.01 * std::pow(L, 5) + std::sin(L); });
    const auto a = fit_polynomial(recs), b = fit_polynomial(recs);
    CHECK(a.a == b.a);
    CHECK(a.residual == b.residual);
    CHECK_THROWS_AS(fit_polynomial({recs.begin(), recs.begin() + 7}), std::invalid_argument);
    CHECK_THROWS_AS(fit_polynomial({recs.begin(), recs.begin() + 9}), std::invalid_argument);  // two decades
    std::swap(recs[2], recs[3]);
    CHECK_THROWS_AS(fit_polynomial(recs), std::invalid_argument);
  }

  TEST_CASE("format_double round trips") {
    std::mt19937_64 rng(61);
    for (int k = 0; k < 10'000; ++k) {
      const double x = std::ldexp(std::uniform_real_distribution<double>(-1, 1)(rng), static_cast<int>(rng() % 200) - 100);
      CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.5) == "1.5");
  }

  TEST_CASE("CSV writer") {
    std::ostringstream s;
    write_counts_csv(s, {});
    CHECK(s.str() == "B,count,method,elapsed_ms\n");
    s.str("");
    write_counts_csv(s, {{1, 7, Method::torsor, 0.25}});
    CHECK(s.str() == "B,count,method,elapsed_ms\n1,7,torsor,0.25\n");
  }

  TEST_CASE("CSV round trip") {
    const std::vector<CountRecord> recs{{1, 7, Method::torsor, 0.0123},
                                        {200, 6095, Method::oracle, 1234.5},
                                        {1'000'000, 202'770'747, Method::torsor, 1.0 / 3}};
    std::stringstream s;
    write_counts_csv(s, recs);
    CHECK(read_counts_csv(s) == recs);

    const auto path = temp_path("counts.csv");
    write_counts_csv(path, recs);
    CHECK(read_counts_csv(path) == recs);
    const auto first = slurp(path);
    write_counts_csv(path, recs);
    CHECK(slurp(path) == first);
    std::filesystem::remove(path);
  }

  TEST_CASE("CSV reader rejects malformed input") {
    std::istringstream bad_header("B,count,method\n1,7,torsor\n");
    CHECK_THROWS(read_counts_csv(bad_header));
    std::istringstream bad_row("B,count,method,elapsed_ms\n1,x,torsor,0\n");
    CHECK_THROWS(read_counts_csv(bad_row));
    std::istringstream short_row("B,count,method,elapsed_ms\n1,7,torsor\n");
    CHECK_THROWS(read_counts_csv(short_row));
    std::istringstream bad_method("B,count,method,elapsed_ms\n1,7,sieve,0\n");
    CHECK_THROWS(read_counts_csv(bad_method));
    CHECK_THROWS(read_counts_csv(std::string("/nonexistent/dir/counts.csv")));
  }

  TEST_CASE("constant JSON round trip") {
    const auto b = assemble_peyre(31.5, 0.0046, 7e-9);
    const auto j = to_json(b);
    CHECK(j.at("alpha") == "1/34560");
    CHECK(j.at("beta") == "1");
    const auto back = peyre_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.omega_inf == b.omega_inf);
    CHECK(back.euler_G0 == b.euler_G0);
    CHECK(back.tail_bound == b.tail_bound);
    CHECK(back.c_total == b.c_total);
    auto broken = j;
    broken["alpha"] = "1/2";
    CHECK_THROWS(peyre_from_json(broken));
    broken = j;
    broken.erase("omega_inf");
    CHECK_THROWS(peyre_from_json(broken));
  }

  TEST_CASE("report JSON schema") {
    const auto recs = synthetic([](double L) { return 0.01 * std::pow(L, 5) + 2; });
    const auto peyre = assemble_peyre(31.5, 0.0046, 7e-9);
    const auto fit = fit_polynomial(recs);
    const auto j = report_json(recs, peyre, fit);
    REQUIRE(j.at("counts").is_array());
    CHECK(j.at("counts").size() == recs.size());
    for (const auto& r : j.at("counts")) {
      CHECK(r.at("B").is_number_integer());
      CHECK(r.at("count").is_number_unsigned());
      CHECK(r.at("method").is_string());
      CHECK(r.at("elapsed_ms").is_number());
    }
    for (const char* key : {"omega_inf", "euler_G0", "tail_bound", "c_total"}) CHECK(j.at("peyre").at(key).is_number_float());
    CHECK(j.at("peyre").at("alpha") == "1/34560");
    CHECK(j.at("fit").at("a").size() == 6);
    CHECK(j.at("fit").at("residual").is_number());
    CHECK(j.at("fit").at("ratio_a5_over_c").get<double>() == doctest::Approx(fit.a[5] / peyre.c_total));
    CHECK(report_json(recs, peyre, std::nullopt).at("fit").is_null());

    const auto path = temp_path("report.json");
    write_json(path, j);
    const auto first = slurp(path);
    CHECK(read_json(path) == j);
    write_json(path, report_json(recs, peyre, fit_polynomial(recs)));
    CHECK(slurp(path) == first);
    std::filesystem::remove(path);
  }
}
