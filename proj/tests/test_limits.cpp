#include <doctest.h>

#include <random>

#include "multdens/errors.hpp"
#include "multdens/limits.hpp"
#include "oracles.hpp"

using namespace multdens;

namespace {

// Product bound recomputed from trial factorization.
oracle::Rational product_bound(const std::vector<u64>& a, const std::vector<u64>& b, u64 q) {
  oracle::Rational v = 1;
  for (auto [p, e] : oracle::trial_factorize(q)) v *= 1 - oracle::Rational(2, p + 1);
  std::vector<u64> all(a);
  for (u64 y : b) {
    if (std::find(all.begin(), all.end(), y) == all.end()) all.push_back(y);
  }
  for (u64 c : all) {
    oracle::Rational inner(1, c);
    for (auto [p, e] : oracle::trial_factorize(c)) inner *= 1 - oracle::Rational(1, p + 1);
    v *= 1 - inner;
  }
  return v;
}

bool hypotheses_hold(const std::vector<u64>& a, const std::vector<u64>& b) {
  for (u64 x : a)
    for (u64 y : b)
      if (std::gcd(x, y) != 1) return false;
  for (const auto* s : {&a, &b})
    for (u64 x : *s)
      for (u64 y : *s)
        if (std::gcd(x, y / std::gcd(x, y)) != 1) return false;
  return true;
}

}  // namespace

TEST_CASE("single pair densities") {
  const FactorSieve sieve(10000);
  CHECK(pair_density(2, 3, 1, sieve).to_string() == "1/12");
  CHECK(pair_density(1, 1, 1, sieve).to_string() == "1/1");
  CHECK(pair_density(1, 1, 2, sieve).to_string() == "1/3");
  CHECK(pair_density(2, 2, 1, sieve).to_string() == "0/1");
  CHECK(pair_density(2, 3, 2, sieve).to_string() == "0/1");
  for (u64 a = 1; a <= 40; ++a)
    for (u64 b = 1; b <= 40; ++b)
      for (u64 q : {1, 2, 5, 7, 30, 77})
        REQUIRE(pair_density(a, b, q, sieve).value() == oracle::pair_limit(a, b, q));
}

TEST_CASE("inclusion-exclusion examples") {
  const FactorSieve sieve(10000);
  const u64 two[] = {2}, three[] = {3}, one[] = {1}, two_three[] = {2, 3};
  CHECK(ie_density(two, three, 1, sieve).to_string() == "1/12");
  CHECK(ie_density(two_three, one, 1, sieve).to_string() == "1/2");
  CHECK(ie_density(one, one, 1, sieve).to_string() == "1/1");
}

TEST_CASE("inclusion-exclusion against unpruned subset sums") {
  const FactorSieve sieve(100000);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<u64> a(1 + rng() % 3), b(1 + rng() % 3);
    for (auto& v : a) v = 1 + rng() % 30;
    for (auto& v : b) v = 1 + rng() % 30;
    const u64 q = 1 + rng() % 12;
    const oracle::Rational want = oracle::ie_limit(a, b, q);
    for (int threads : {1, 3}) {
      const DensityValue got = ie_density(a, b, q, sieve, threads);
      INFO("trial " << trial);
      REQUIRE(got.value() == want);
    }
  }
}

TEST_CASE("inclusion-exclusion is monotone and bounded by the union") {
  const FactorSieve sieve(100000);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<u64> a(1 + rng() % 3), b(1 + rng() % 3);
    for (auto& v : a) v = 1 + rng() % 40;
    for (auto& v : b) v = 1 + rng() % 40;
    const u64 q = 1 + rng() % 6;
    const ExactRational base = ie_density(a, b, q, sieve).value();

    std::vector<u64> bigger = a;
    bigger.push_back(1 + rng() % 40);
    REQUIRE(ie_density(bigger, b, q, sieve).value() >= base);

    ExactRational union_bound = 0;
    for (u64 x : a)
      for (u64 y : b) union_bound += pair_density(x, y, q, sieve).value();
    REQUIRE(base <= union_bound);
    REQUIRE(base >= 0);
    REQUIRE(base <= 1);
  }
}

TEST_CASE("inclusion-exclusion capacity") {
  const FactorSieve sieve(1000);
  std::vector<u64> a(5), b(5);
  for (u64 i = 0; i < 5; ++i) a[i] = 2 * i + 3, b[i] = 2 * i + 4;
  CHECK_THROWS_AS(ie_density(a, b, 1, sieve), CapacityError);
  const u64 zero[] = {0}, one[] = {1};
  CHECK_THROWS_AS(ie_density(zero, one, 1, sieve), InvalidArgument);
  CHECK_THROWS_AS(ie_density(one, one, 0, sieve), InvalidArgument);
}

TEST_CASE("larger inclusion-exclusion stays within the cap and agrees across threads") {
  const FactorSieve sieve(1000000);
  const std::vector<u64> a = {2, 3, 5, 7, 11, 13, 17};
  const std::vector<u64> b = {1, 19, 23};
  const DensityValue one = ie_density(a, b, 1, sieve, 1);
  const DensityValue many = ie_density(a, b, 1, sieve, 4);
  CHECK(one == many);
  CHECK(one.value() > 0);
  CHECK(one.value() < 1);
}

TEST_CASE("product bound hypotheses") {
  CHECK(check_theorem4_hypotheses(std::vector<u64>{2}, std::vector<u64>{3}).ok);
  CHECK(check_theorem4_hypotheses(std::vector<u64>{4, 6}, std::vector<u64>{5}).ok == hypotheses_hold({4, 6}, {5}));
  const HypothesisReport bad = check_theorem4_hypotheses(std::vector<u64>{2}, std::vector<u64>{4});
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.violations.empty());
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<u64> a(1 + rng() % 3), b(1 + rng() % 3);
    for (auto& v : a) v = 1 + rng() % 50;
    for (auto& v : b) v = 1 + rng() % 50;
    REQUIRE(check_theorem4_hypotheses(a, b).ok == hypotheses_hold(a, b));
  }
}

TEST_CASE("product bound values") {
  const FactorSieve sieve(100000);
  const u64 two[] = {2}, three[] = {3}, four[] = {4};
  CHECK(to_string(theorem4_bound(two, three, 1, sieve)) == "1/2");
  CHECK_THROWS_AS(theorem4_bound(two, four, 1, sieve), PreconditionError);
  const Theorem4Check c = verify_theorem4(two, three, 1, sieve);
  CHECK(c.holds);
  CHECK_FALSE(c.trivial);
  CHECK(to_string(c.one_minus_density) == "11/12");
  const Theorem4Check t = verify_theorem4(two, three, 3, sieve);
  CHECK(t.trivial);
  CHECK(t.holds);
}

TEST_CASE("generated instances satisfy the hypotheses and the bound") {
  const FactorSieve sieve(1000000);
  std::mt19937_64 rng(42);
  int nontrivial = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Theorem4Instance inst = generate_theorem4_instance(rng);
    REQUIRE(hypotheses_hold(inst.a, inst.b));
    REQUIRE(inst.a.size() * inst.b.size() <= kMaxPairs);
    const Theorem4Check c = verify_theorem4(inst.a, inst.b, inst.q, sieve);
    REQUIRE(c.bound == product_bound(inst.a, inst.b, inst.q));
    REQUIRE(c.holds);
    REQUIRE(c.one_minus_density >= c.bound);
    nontrivial += c.trivial ? 0 : 1;
  }
  CHECK(nontrivial > 10);
}
