#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <omp.h>

#include "multdens/arith.hpp"
#include "multdens/enumeration.hpp"
#include "multdens/intervals.hpp"
#include "multdens/kahan.hpp"

namespace multdens {

/// Weights m^{-r1} n^{-r2} with r1, r2 in {0, 1}.
struct SumExponents {
  unsigned r1 = 0;
  unsigned r2 = 0;

  SumExponents() = default;
  SumExponents(unsigned r1_, unsigned r2_);
  /// "00", "01", "10" or "11".
  static SumExponents parse(std::string_view text);
  std::string to_string() const { return std::to_string(r1) + std::to_string(r2); }
  /// Index 2*r1 + r2 into WeightedSums::value.
  std::size_t index() const { return 2 * r1 + r2; }
  bool operator==(const SumExponents&) const = default;

  static std::array<SumExponents, 4> all() { return {{{0, 0}, {0, 1}, {1, 0}, {1, 1}}}; }
};

struct SumResult {
  double value = 0.0;
  u64 term_count = 0;
  u64 x = 0;
  IntervalAt interval;
  SumExponents exponents;
  /// Denominators whose numerator window hit a floating endpoint within a
  /// few ulps of an integer.
  u64 precision_warnings = 0;
};

/// All four weighted sums over one set of fractions.
struct WeightedSums {
  std::array<double, 4> value{};
  u64 count = 0;

  double get(SumExponents e) const { return value[e.index()]; }
};

struct SplitSums {
  WeightedSums member;
  WeightedSums total;
  u64 precision_warnings = 0;
};

namespace detail {

struct BlockSums {
  std::array<KahanSum, 4> member;
  std::array<KahanSum, 4> total;
  u64 member_count = 0;
  u64 total_count = 0;
  u64 ambiguous = 0;
};

BlockSums combine(const BlockSums& a, const BlockSums& b);
SplitSums finish(const BlockSums& s);

// Adds the per-denominator partials (count, sum of 1/m) with weights
// 1, 1/n, 1, 1/n for exponents 00, 01, 10, 11.
inline void flush_denominator(std::array<KahanSum, 4>& acc, u64 n, u64 count, const KahanSum& inv_m) {
  if (count == 0) return;
  const double c = static_cast<double>(count);
  const double h = inv_m.value();
  const double inv_n = 1.0 / static_cast<double>(n);
  acc[0].add(c);
  acc[1].add(c * inv_n);
  acc[2].add(h);
  acc[3].add(h * inv_n);
}

}  // namespace detail

/// Single pass over F^I_x computing the four weighted sums both over the
/// fractions accepted by `member` and over all of F^I_x. Blocks of
/// denominators run in parallel; the result is bit-identical for any thread
/// count.
template <class Pred>
SplitSums split_sums(u64 x, const IntervalAt& interval, const FactorSieve& sieve, Pred&& member,
                     const ExecPolicy& policy = {}) {
  const FareyEnumerator fractions(x, interval, sieve, policy.block_size);
  const u64 blocks = fractions.block_count();
  std::vector<detail::BlockSums> parts(blocks);
  const int threads = policy.threads > 0 ? policy.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long long b = 0; b < static_cast<long long>(blocks); ++b) {
    detail::BlockSums s;
    u64 cur = 0, in_count = 0, all_count = 0;
    KahanSum in_inv, all_inv;
    auto flush = [&] {
      detail::flush_denominator(s.member, cur, in_count, in_inv);
      detail::flush_denominator(s.total, cur, all_count, all_inv);
      s.member_count += in_count;
      s.total_count += all_count;
      in_count = all_count = 0;
      in_inv = all_inv = KahanSum{};
    };
    s.ambiguous = fractions.for_each_in_block(static_cast<u64>(b), [&](u64 m, u64 n) {
      if (n != cur) {
        flush();
        cur = n;
      }
      const double inv_m = 1.0 / static_cast<double>(m);
      ++all_count;
      all_inv.add(inv_m);
      if (member(ReducedFraction{m, n})) {
        ++in_count;
        in_inv.add(inv_m);
      }
    });
    flush();
    parts[static_cast<std::size_t>(b)] = s;
  }
  return detail::finish(pairwise_reduce<detail::BlockSums>(parts, detail::combine));
}

using FractionPredicate = std::function<bool(const ReducedFraction&)>;

/// S^{r1 r2}_{x,I}(R) by direct enumeration, R given as a predicate.
SumResult s_direct(u64 x, const IntervalAt& interval, SumExponents exps, const FractionPredicate& member,
                   const FactorSieve& sieve, const ExecPolicy& policy = {});

/// S^{r1 r2}_{x,I}(Q_{q0,q1,q2}) through the Moebius double sum
///   sum_{d} mu(d) d^{-r1} sum_{n <= x, n coprime q0 q1, d/(d,q0 q2) | n} n^{-r2}
///     sum_{lambda1 n/d < m < lambda2 n/d} m^{-r1},
/// evaluated with d = e*g, g | rad(q0 q2), e squarefree and coprime to
/// q0 q1 q2. The m-window for each n is the same integer range the direct
/// enumeration uses, so both paths sum over identical terms.
SumResult s_mobius(u64 x, const IntervalAt& interval, SumExponents exps, const CoprimalitySpec& spec,
                   const FactorSieve& sieve, const ExecPolicy& policy = {});

/// H(k) = sum_{j <= k} 1/j. Tabulated up to 10^5, asymptotic expansion above.
double harmonic_prefix(u64 k);

/// Member and full sums of M(A,B|q) at one scale, all four exponent pairs.
struct DensityPoint {
  u64 x = 0;
  IntervalAt interval;
  SplitSums sums;

  bool empty() const { return sums.total.count == 0; }
  /// Throws UndefinedDensity when F^I_x is empty.
  double density(SumExponents e) const;
};

DensityPoint density_point(u64 x, const IntervalAt& interval, const MultiplesSpec& spec, const FactorSieve& sieve,
                           const ExecPolicy& policy = {});

/// nu^{r1 r2}_x(M(A,B|q)). Throws UndefinedDensity if F^I_x is empty.
double empirical_density(u64 x, const IntervalAt& interval, SumExponents exps, const MultiplesSpec& spec,
                         const FactorSieve& sieve, const ExecPolicy& policy = {});

/// One density per grid point with interval = family.evaluate(x).
std::vector<std::pair<u64, double>> density_sequence(std::span<const u64> x_grid, const IntervalFamily& family,
                                                     SumExponents exps, const MultiplesSpec& spec,
                                                     const FactorSieve& sieve, const ExecPolicy& policy = {});

/// Largest numerator any fraction of F^I_x can have.
u64 max_numerator(u64 x, const IntervalAt& interval);

}  // namespace multdens
