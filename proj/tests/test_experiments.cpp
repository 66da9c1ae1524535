#include <doctest.h>

#include <cmath>

#include "multdens/errors.hpp"
#include "multdens/experiments.hpp"
#include "oracles.hpp"

using namespace multdens;

TEST_CASE("integer densities") {
  const u64 one[] = {1}, two[] = {2}, big[] = {500};
  const IntegerDensities full = integer_densities(MultiplesSieve(one, 100), 100);
  CHECK(full.nu0 == 1.0);
  oracle::Rational h = 0;
  for (u64 k = 1; k <= 100; ++k) h += oracle::Rational(1, k);
  CHECK(full.nu1 == doctest::Approx(h.convert_to<double>() / std::log(100.0)).epsilon(1e-14));
  CHECK(full.nu1 == doctest::Approx(1.1264247157299376).epsilon(1e-14));

  CHECK(integer_densities(MultiplesSieve(two, 100), 100).nu0 == 0.5);
  const IntegerDensities none = integer_densities(MultiplesSieve(big, 100), 100);
  CHECK(none.nu0 == 0.0);
  CHECK(none.nu1 == 0.0);

  for (u64 x : {2, 17, 1000}) CHECK(integer_densities(MultiplesSieve(one, 1000), x).nu0 == 1.0);
  CHECK_THROWS_AS(integer_densities(MultiplesSieve(one, 100), 1), InvalidArgument);
  CHECK_THROWS_AS(integer_densities(MultiplesSieve(one, 100), 101), InvalidArgument);
}

TEST_CASE("set generators") {
  CHECK(primes_in_range(1, 20) == std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19});
  CHECK(primes_in_range(24, 28).empty());
  CHECK(primes_in_range(2, 100).size() == 25);
  const std::pair<u64, u64> ranges[] = {{5, 7}, {1, 2}, {6, 9}};
  CHECK(interval_union(ranges) == std::vector<u64>{1, 2, 5, 6, 7, 8, 9});
}

TEST_CASE("truncation is monotone in N") {
  TruncationExperiment exp{primes_in_range(1, 100), {2, 3, 5, 10, 30, 100}, {100, 1000, 20000}};
  const auto rows = run_truncation(exp, {2, 1024});
  REQUIRE(rows.size() == 18);
  for (u64 x : exp.x_grid) {
    double prev0 = -1.0, prev1 = -1.0;
    for (const auto& r : rows) {
      if (r.x != x) continue;
      CHECK(r.nu1 >= prev1);
      CHECK(r.nu0 >= prev0);
      CHECK(r.nu0 <= 1.0);
      prev0 = r.nu0;
      prev1 = r.nu1;
    }
  }
  // A_2 = {2}: exactly the even numbers.
  CHECK(rows.front().n == 2);
  CHECK(rows.front().nu0 == 0.5);

  const auto again = run_truncation(exp, {1, 7});
  REQUIRE(again.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(again[i].nu0 == rows[i].nu0);
    CHECK(again[i].nu1 == rows[i].nu1);
  }
}

TEST_CASE("truncation of a single generator is constant") {
  const auto rows = run_truncation({{2}, {2, 5, 50}, {1000}});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].nu1 == rows[1].nu1);
  CHECK(rows[1].nu1 == rows[2].nu1);
  CHECK(run_truncation({{3, 5}, {2}, {100}}).front().nu1 == 0.0);
  CHECK_THROWS_AS(run_truncation({{2}, {5, 2}, {100}}), InvalidArgument);
  CHECK_THROWS_AS(run_truncation({{2}, {}, {100}}), InvalidArgument);
}

TEST_CASE("density chain table") {
  const FactorSieve sieve(10000);
  const u64 grid[] = {1, 100, 10000};
  const auto full = run_theorem2_table(IntervalFamily::parse("const:0,1"), MultiplesSpec({1}, {1}, 1), grid, sieve);
  REQUIRE(full.size() == 3);
  CHECK_FALSE(full[0].nu.has_value());
  for (std::size_t i = 1; i < 3; ++i)
    for (double v : *full[i].nu) CHECK(v == 1.0);

  const u64 one_point[] = {10000};
  const auto rows = run_theorem2_table(IntervalFamily::parse("const:0,1"), MultiplesSpec({2}, {3}, 1), one_point, sieve);
  const auto& nu = *rows[0].nu;
  for (double a : nu) {
    CHECK(std::fabs(a - 1.0 / 12) <= 0.05);
    for (double b : nu) CHECK(std::fabs(a - b) <= 0.05);
  }
  CHECK_THROWS_AS(run_theorem2_table(IntervalFamily::parse("zeropow:0.5"), MultiplesSpec({2}, {3}, 1), grid, sieve),
                  PreconditionError);
}

TEST_CASE("shrinking interval experiment") {
  const FactorSieve sieve(20000);
  const u64 grid[] = {1000, 10000};
  const auto full = run_theorem5(IntervalFamily::parse("const:0,1"), MultiplesSpec({1}, {1}, 1), grid, sieve);
  for (const auto& r : full) {
    CHECK(r.nu11 == 1.0);
    CHECK(to_string(r.reference) == "1/1");
  }
  const auto rows = run_theorem5(IntervalFamily::parse("shrink:1,0.5"), MultiplesSpec({2}, {3}, 1), grid, sieve);
  const auto again = run_theorem5(IntervalFamily::parse("shrink:1,0.5"), MultiplesSpec({2}, {3}, 1), grid, sieve, {3, 100});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].nu11 >= 0.0);
    CHECK(rows[i].nu11 <= 1.0);
    CHECK(to_string(rows[i].reference) == "1/12");
    CHECK(rows[i].distance == doctest::Approx(std::fabs(rows[i].nu11 - 1.0 / 12)));
    CHECK(again[i].nu11 == rows[i].nu11);
  }
  CHECK_THROWS_AS(run_theorem5(IntervalFamily::parse("shrink:1,1"), MultiplesSpec({2}, {3}, 1), grid, sieve),
                  PreconditionError);
}
