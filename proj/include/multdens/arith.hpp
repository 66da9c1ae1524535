#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace multdens {

using u64 = std::uint64_t;

/// Exact rational in lowest terms with positive denominator.
using ExactRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Renders as "p/q", always with an explicit denominator.
std::string to_string(const ExactRational& r);
double to_double(const ExactRational& r);

struct PrimePower {
  u64 prime;
  unsigned exponent;
  bool operator==(const PrimePower&) const = default;
};

/// Smallest-prime-factor table for 2..limit. Immutable once built, so it can
/// be shared freely between worker threads.
class FactorSieve {
 public:
  explicit FactorSieve(u64 limit);

  u64 limit() const { return limit_; }
  /// Smallest prime factor of n, 2 <= n <= limit.
  u64 spf(u64 n) const;
  bool is_prime(u64 n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }

  std::vector<PrimePower> factorize(u64 n) const;
  /// Distinct prime divisors of n in increasing order.
  std::vector<u64> prime_divisors(u64 n) const;
  int mobius(u64 n) const;

  template <class F>
  void for_each_prime_divisor(u64 n, F&& f) const {
    check_range(n);
    while (n > 1) {
      const u64 p = spf_[n];
      f(p);
      while (n % p == 0) n /= p;
    }
  }

 private:
  void check_range(u64 n) const;

  u64 limit_;
  std::vector<std::uint32_t> spf_;
};

FactorSieve build_sieve(u64 limit);

u64 gcd(u64 a, u64 b);
/// Throws OverflowError if the result does not fit in 64 bits.
u64 lcm(u64 a, u64 b);
/// Throws OverflowError on wraparound.
u64 checked_mul(u64 a, u64 b);

/// Prod_{p|q0} (1 - 2/(p+1)) * Prod_{p|q1 q2} (1 - 1/(p+1)).
/// q0, q1, q2 must be pairwise coprime.
ExactRational pi_product(u64 q0, u64 q1, u64 q2, const FactorSieve& sieve);

/// (1/c) * Prod_{p|c} (1 - 1/(p+1)).
ExactRational unit_factor(u64 c, const FactorSieve& sieve);

/// Same two products taken over an explicit list of distinct primes, for
/// values (lcms of many elements) that exceed the sieve range.
ExactRational q_factor_from_primes(std::span<const u64> primes);
ExactRational unit_product_from_primes(std::span<const u64> primes);

}  // namespace multdens
