#pragma once

#include <algorithm>
#include <compare>
#include <span>
#include <vector>

#include "multdens/arith.hpp"
#include "multdens/errors.hpp"
#include "multdens/intervals.hpp"

namespace multdens {

/// m/n with gcd(m, n) = 1.
struct ReducedFraction {
  u64 m;
  u64 n;
  auto operator<=>(const ReducedFraction&) const = default;
};

/// The triple (A, B, q) defining M(A,B|q) = {m/n : m in M(A), n in M(B), mn coprime to q}.
class MultiplesSpec {
 public:
  /// Sorts and deduplicates A and B; rejects empty sets, zeros and q = 0.
  MultiplesSpec(std::vector<u64> a, std::vector<u64> b, u64 q = 1);

  const std::vector<u64>& a() const { return a_; }
  const std::vector<u64>& b() const { return b_; }
  u64 q() const { return q_; }
  bool operator==(const MultiplesSpec&) const = default;

 private:
  std::vector<u64> a_;
  std::vector<u64> b_;
  u64 q_;
};

/// The coprimality class Q_{q0,q1,q2} = {m/n : mn coprime to q0, m*q1 coprime to n*q2}.
class CoprimalitySpec {
 public:
  CoprimalitySpec(u64 q0, u64 q1, u64 q2);

  u64 q0() const { return q0_; }
  u64 q1() const { return q1_; }
  u64 q2() const { return q2_; }
  bool operator==(const CoprimalitySpec&) const = default;

 private:
  u64 q0_, q1_, q2_;
};

/// flags[k] is set iff some a in A divides k, for 1 <= k <= limit.
class MultiplesSieve {
 public:
  MultiplesSieve(std::span<const u64> a, u64 limit);

  u64 limit() const { return limit_; }
  bool contains(u64 k) const { return k >= 1 && k <= limit_ && flags_[k]; }
  u64 count() const;

 private:
  u64 limit_;
  std::vector<bool> flags_;
};

MultiplesSieve build_multiples_sieve(std::span<const u64> a, u64 limit);

/// Throws InvalidArgument if either sieve does not cover the fraction.
bool in_multiples(const ReducedFraction& f, const MultiplesSpec& spec, const MultiplesSieve& sieve_a,
                  const MultiplesSieve& sieve_b);
bool in_coprimality_class(const ReducedFraction& f, const CoprimalitySpec& spec);

/// Worker count (0 = OpenMP default) and the n-block size used to partition
/// enumeration. Results never depend on either.
struct ExecPolicy {
  int threads = 0;
  u64 block_size = 1024;
};

/// Enumerates F^I_x = {m/n reduced : n <= x, lambda1 < m/n < lambda2}, split
/// into contiguous blocks of denominators. Within a block fractions arrive in
/// increasing (n, m) order; blocks are independent and may be consumed
/// concurrently. Coprimality with n is established by striking multiples of
/// the prime divisors of n inside the numerator window.
class FareyEnumerator {
 public:
  FareyEnumerator(u64 x, IntervalAt interval, const FactorSieve& sieve, u64 block_size = 1024);

  u64 x() const { return x_; }
  const IntervalAt& interval() const { return interval_; }
  u64 block_count() const { return x_ == 0 ? 0 : (x_ + block_size_ - 1) / block_size_; }
  /// Inclusive denominator range [first, last] of a block.
  std::pair<u64, u64> block_bounds(u64 block) const {
    const u64 first = block * block_size_ + 1;
    return {first, std::min(x_, first + block_size_ - 1)};
  }

  /// Calls visit(m, n) for every fraction of the block. Returns the number of
  /// denominators whose window boundary was flagged ambiguous.
  template <class Visit>
  u64 for_each_in_block(u64 block, Visit&& visit) const {
    thread_local std::vector<unsigned char> struck;
    const auto [first, last] = block_bounds(block);
    u64 ambiguous = 0;
    for (u64 n = first; n <= last; ++n) {
      const NumeratorRange r = interval_.numerator_range(n);
      ambiguous += r.ambiguous ? 1 : 0;
      if (r.empty()) continue;
      if (n == 1) {
        for (u64 m = r.lo; m <= r.hi; ++m) visit(m, n);
        continue;
      }
      struck.assign(r.size(), 0);
      sieve_->for_each_prime_divisor(n, [&](u64 p) {
        for (u64 m = (r.lo + p - 1) / p * p; m <= r.hi; m += p) struck[m - r.lo] = 1;
      });
      for (u64 m = r.lo; m <= r.hi; ++m) {
        if (!struck[m - r.lo]) visit(m, n);
      }
    }
    return ambiguous;
  }

  template <class Visit>
  u64 for_each(Visit&& visit) const {
    u64 ambiguous = 0;
    for (u64 b = 0; b < block_count(); ++b) ambiguous += for_each_in_block(b, visit);
    return ambiguous;
  }

  /// All fractions, ordered by (n, m).
  std::vector<ReducedFraction> collect() const;
  u64 count() const;

 private:
  u64 x_;
  IntervalAt interval_;
  const FactorSieve* sieve_;
  u64 block_size_;
};

inline std::vector<ReducedFraction> enumerate_fractions(u64 x, const IntervalAt& interval,
                                                        const FactorSieve& sieve) {
  return FareyEnumerator(x, interval, sieve).collect();
}

}  // namespace multdens
