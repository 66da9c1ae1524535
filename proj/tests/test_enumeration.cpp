#include <doctest.h>

#include <set>

#include "multdens/enumeration.hpp"
#include "multdens/reference.hpp"
#include "oracles.hpp"

using namespace multdens;

namespace {

std::vector<std::pair<u64, u64>> as_pairs(const std::vector<ReducedFraction>& v) {
  std::vector<std::pair<u64, u64>> out;
  for (auto f : v) out.push_back({f.m, f.n});
  return out;
}

}  // namespace

TEST_CASE("enumerate small Farey sets") {
  const FactorSieve sieve(1000);
  const auto unit = enumerate_fractions(4, IntervalAt::exact({0, 1}, {1, 1}), sieve);
  CHECK(as_pairs(unit) == std::vector<std::pair<u64, u64>>{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}});

  const auto upper = enumerate_fractions(3, IntervalAt::exact({1, 1}, {2, 1}), sieve);
  CHECK(as_pairs(upper) == std::vector<std::pair<u64, u64>>{{3, 2}, {4, 3}, {5, 3}});

  CHECK(enumerate_fractions(1, IntervalAt::exact({0, 1}, {1, 1}), sieve).empty());
}

TEST_CASE("unit interval count matches totient sums") {
  const FactorSieve sieve(1000);
  const auto phi = oracle::totients(1000);
  u64 expected = 0;
  for (u64 x = 1; x <= 1000; ++x) {
    if (x >= 2) expected += phi[x];
    if (x % 37 == 0 || x == 100 || x == 1000) {
      REQUIRE(FareyEnumerator(x, IntervalAt::exact({0, 1}, {1, 1}), sieve).count() == expected);
    }
  }
  CHECK(FareyEnumerator(100, IntervalAt::exact({0, 1}, {1, 1}), sieve).count() == 3043);
}

TEST_CASE("enumeration matches brute force without duplicates") {
  const FactorSieve sieve(500);
  struct Case {
    u64 a1, b1, a2, b2;
  };
  for (const Case c : {Case{0, 1, 1, 1}, Case{1, 1, 2, 1}, Case{0, 1, 3, 1}, Case{1, 2, 3, 1}}) {
    for (u64 x : {1, 2, 7, 64, 500}) {
      const IntervalAt interval = IntervalAt::exact({c.a1, c.b1}, {c.a2, c.b2});
      for (u64 block : {1, 7, 1024}) {
        const auto got = FareyEnumerator(x, interval, sieve, block).collect();
        const auto want = oracle::farey(x, c.a1, c.b1, c.a2, c.b2);
        REQUIRE(as_pairs(got) == want);
        const std::set<ReducedFraction> unique(got.begin(), got.end());
        REQUIRE(unique.size() == got.size());
        for (auto f : got) {
          REQUIRE(gcd(f.m, f.n) == 1);
          REQUIRE(c.a1 * f.n < f.m * c.b1);
          REQUIRE(f.m * c.b2 < c.a2 * f.n);
        }
      }
      REQUIRE(as_pairs(reference::enumerate_fractions(x, interval)) == oracle::farey(x, c.a1, c.b1, c.a2, c.b2));
    }
  }
}

TEST_CASE("blocks partition the denominators") {
  const FactorSieve sieve(100);
  const FareyEnumerator e(100, IntervalAt::exact({0, 1}, {1, 1}), sieve, 30);
  CHECK(e.block_count() == 4);
  CHECK(e.block_bounds(0) == std::pair<u64, u64>{1, 30});
  CHECK(e.block_bounds(3) == std::pair<u64, u64>{91, 100});
  CHECK_THROWS_AS(FareyEnumerator(101, IntervalAt(), sieve), InvalidArgument);
}

TEST_CASE("multiples sieve") {
  const u64 a23[] = {2, 3};
  const MultiplesSieve s = build_multiples_sieve(a23, 10);
  std::vector<u64> hits;
  for (u64 k = 1; k <= 10; ++k) {
    if (s.contains(k)) hits.push_back(k);
  }
  CHECK(hits == std::vector<u64>{2, 3, 4, 6, 8, 9, 10});
  CHECK(s.count() == 7);

  const u64 one[] = {1};
  CHECK(build_multiples_sieve(one, 5).count() == 5);
  const u64 seven[] = {7};
  CHECK(build_multiples_sieve(seven, 6).count() == 0);

  const u64 mixed[] = {4, 6, 15};
  const MultiplesSieve m(mixed, 300);
  for (u64 k = 1; k <= 300; ++k) REQUIRE(m.contains(k) == (k % 4 == 0 || k % 6 == 0 || k % 15 == 0));
}

TEST_CASE("membership in M(A,B|q)") {
  const u64 two[] = {2};
  const u64 three[] = {3};
  const MultiplesSieve sa(two, 100), sb(three, 100);
  CHECK(in_multiples({2, 3}, MultiplesSpec({2}, {3}, 1), sa, sb));
  CHECK(in_multiples({2, 3}, MultiplesSpec({2}, {3}, 5), sa, sb));
  CHECK_FALSE(in_multiples({5, 3}, MultiplesSpec({2}, {3}, 5), sa, sb));
  CHECK_FALSE(in_multiples({2, 3}, MultiplesSpec({2}, {3}, 3), sa, sb));
  CHECK_THROWS_AS(in_multiples({202, 3}, MultiplesSpec({2}, {3}, 1), sa, sb), InvalidArgument);

  const u64 one[] = {1};
  const MultiplesSieve all(one, 200);
  const MultiplesSpec full({1}, {1}, 1);
  for (const auto& [m, n] : oracle::farey(50, 0, 1, 3, 1)) REQUIRE(in_multiples({m, n}, full, all, all));
}

TEST_CASE("multiples spec normalization") {
  const MultiplesSpec s({3, 2, 3}, {5}, 1);
  CHECK(s.a() == std::vector<u64>{2, 3});
  CHECK_THROWS_AS(MultiplesSpec({}, {1}, 1), InvalidArgument);
  CHECK_THROWS_AS(MultiplesSpec({0}, {1}, 1), InvalidArgument);
  CHECK_THROWS_AS(MultiplesSpec({1}, {1}, 0), InvalidArgument);
}

TEST_CASE("coprimality classes") {
  CHECK(in_coprimality_class({1, 1}, CoprimalitySpec(1, 1, 1)));
  CHECK_FALSE(in_coprimality_class({3, 4}, CoprimalitySpec(2, 3, 5)));
  CHECK_FALSE(in_coprimality_class({5, 7}, CoprimalitySpec(2, 3, 5)));
  CHECK(in_coprimality_class({7, 11}, CoprimalitySpec(2, 3, 5)));
  CHECK_THROWS_AS(CoprimalitySpec(2, 4, 1), InvalidArgument);
  CHECK_THROWS_AS(CoprimalitySpec(0, 1, 1), InvalidArgument);

  // Against the literal definition with full products.
  const CoprimalitySpec spec(2, 3, 5);
  for (const auto& [m, n] : oracle::farey(200, 0, 1, 3, 1)) {
    const bool want = std::gcd(m * n, u64{2}) == 1 && std::gcd(m * 3, n * 5) == 1;
    REQUIRE(in_coprimality_class({m, n}, spec) == want);
  }
}
