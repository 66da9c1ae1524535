#include "multdens/arith.hpp"

#include <limits>
#include <numeric>

#include "multdens/errors.hpp"

namespace multdens {

namespace {

constexpr u64 kMaxSieveLimit = u64{1} << 31;

}  // namespace

std::string to_string(const ExactRational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const ExactRational& r) { return r.convert_to<double>(); }

FactorSieve::FactorSieve(u64 limit) : limit_(limit) {
  if (limit < 2) {
    throw InvalidArgument("sieve limit must be at least 2, got " + std::to_string(limit));
  }
  if (limit > kMaxSieveLimit) {
    throw InvalidArgument("sieve limit " + std::to_string(limit) + " exceeds 2^31");
  }
  // Linear sieve: every composite is struck exactly once by its smallest prime.
  spf_.assign(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (u64 i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      if (p > spf_[i] || i * p > limit) break;
      spf_[i * p] = p;
    }
  }
}

void FactorSieve::check_range(u64 n) const {
  if (n < 1 || n > limit_) {
    throw InvalidArgument(std::to_string(n) + " outside sieve range [1, " +
                          std::to_string(limit_) + "]");
  }
}

u64 FactorSieve::spf(u64 n) const {
  if (n < 2 || n > limit_) {
    throw InvalidArgument(std::to_string(n) + " outside sieve range [2, " +
                          std::to_string(limit_) + "]");
  }
  return spf_[n];
}

std::vector<PrimePower> FactorSieve::factorize(u64 n) const {
  check_range(n);
  std::vector<PrimePower> out;
  while (n > 1) {
    const u64 p = spf_[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

std::vector<u64> FactorSieve::prime_divisors(u64 n) const {
  check_range(n);
  std::vector<u64> out;
  while (n > 1) {
    const u64 p = spf_[n];
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  return out;
}

int FactorSieve::mobius(u64 n) const {
  check_range(n);
  int sign = 1;
  while (n > 1) {
    const u64 p = spf_[n];
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return sign;
}

FactorSieve build_sieve(u64 limit) { return FactorSieve(limit); }

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 checked_mul(u64 a, u64 b) {
  u64 out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError(std::to_string(a) + " * " + std::to_string(b) + " overflows 64 bits");
  }
  return out;
}

u64 lcm(u64 a, u64 b) {
  if (a == 0 || b == 0) throw InvalidArgument("lcm arguments must be positive");
  u64 out;
  if (__builtin_mul_overflow(a / std::gcd(a, b), b, &out)) {
    throw OverflowError("lcm(" + std::to_string(a) + ", " + std::to_string(b) +
                        ") overflows 64 bits");
  }
  return out;
}

ExactRational q_factor_from_primes(std::span<const u64> primes) {
  BigInt num = 1, den = 1;
  for (u64 p : primes) {
    num *= p - 1;
    den *= p + 1;
  }
  return ExactRational(num, den);
}

ExactRational unit_product_from_primes(std::span<const u64> primes) {
  BigInt num = 1, den = 1;
  for (u64 p : primes) {
    num *= p;
    den *= p + 1;
  }
  return ExactRational(num, den);
}

ExactRational pi_product(u64 q0, u64 q1, u64 q2, const FactorSieve& sieve) {
  if (q0 == 0 || q1 == 0 || q2 == 0) throw InvalidArgument("pi_product arguments must be positive");
  if (std::gcd(q0, q1) != 1 || std::gcd(q0, q2) != 1 || std::gcd(q1, q2) != 1) {
    throw InvalidArgument("pi_product requires pairwise coprime q0, q1, q2");
  }
  // q1 and q2 are coprime, so the primes of q1*q2 are the disjoint union.
  std::vector<u64> p12 = sieve.prime_divisors(q1);
  const std::vector<u64> p2 = sieve.prime_divisors(q2);
  p12.insert(p12.end(), p2.begin(), p2.end());
  return q_factor_from_primes(sieve.prime_divisors(q0)) * unit_product_from_primes(p12);
}

ExactRational unit_factor(u64 c, const FactorSieve& sieve) {
  return unit_product_from_primes(sieve.prime_divisors(c)) / ExactRational(c);
}

}  // namespace multdens
