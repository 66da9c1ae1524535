#include "multdens/sums.hpp"

#include <cmath>
#include <numbers>

#include "multdens/errors.hpp"

namespace multdens {

namespace {

constexpr u64 kHarmonicTableSize = 100000;

const std::vector<double>& harmonic_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kHarmonicTableSize + 1, 0.0);
    KahanSum h;
    for (u64 j = 1; j <= kHarmonicTableSize; ++j) {
      h.add(1.0 / static_cast<double>(j));
      t[j] = h.value();
    }
    return t;
  }();
  return table;
}

WeightedSums to_weighted(const std::array<KahanSum, 4>& acc, u64 count) {
  WeightedSums w;
  for (std::size_t i = 0; i < 4; ++i) w.value[i] = acc[i].value();
  w.count = count;
  return w;
}

// Subsets of the distinct primes of q0*q2 as (g, mu(g)).
std::vector<std::pair<u64, int>> squarefree_divisors(const std::vector<u64>& primes) {
  std::vector<std::pair<u64, int>> out{{1, 1}};
  for (u64 p : primes) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back({out[i].first * p, -out[i].second});
  }
  return out;
}

struct MobiusBlock {
  KahanSum sum;
  long long exact = 0;  // exponents 00: integer counts, summed exactly
};

}  // namespace

SumExponents::SumExponents(unsigned r1_, unsigned r2_) : r1(r1_), r2(r2_) {
  if (r1 > 1 || r2 > 1) throw InvalidArgument("exponents must be 0 or 1");
}

SumExponents SumExponents::parse(std::string_view text) {
  if (text.size() != 2 || (text[0] != '0' && text[0] != '1') || (text[1] != '0' && text[1] != '1')) {
    throw InvalidArgument("exponents must be one of 00, 01, 10, 11, got '" + std::string(text) + "'");
  }
  return SumExponents(static_cast<unsigned>(text[0] - '0'), static_cast<unsigned>(text[1] - '0'));
}

namespace detail {

BlockSums combine(const BlockSums& a, const BlockSums& b) {
  BlockSums out = a;
  for (std::size_t i = 0; i < 4; ++i) {
    out.member[i].add(b.member[i]);
    out.total[i].add(b.total[i]);
  }
  out.member_count += b.member_count;
  out.total_count += b.total_count;
  out.ambiguous += b.ambiguous;
  return out;
}

SplitSums finish(const BlockSums& s) {
  return SplitSums{to_weighted(s.member, s.member_count), to_weighted(s.total, s.total_count), s.ambiguous};
}

}  // namespace detail

SumResult s_direct(u64 x, const IntervalAt& interval, SumExponents exps, const FractionPredicate& member,
                   const FactorSieve& sieve, const ExecPolicy& policy) {
  const SplitSums s = split_sums(x, interval, sieve, member, policy);
  return SumResult{s.member.get(exps), s.member.count, x, interval, exps, s.precision_warnings};
}

SumResult s_mobius(u64 x, const IntervalAt& interval, SumExponents exps, const CoprimalitySpec& spec,
                   const FactorSieve& sieve, const ExecPolicy& policy) {
  if (policy.block_size == 0) throw InvalidArgument("block size must be positive");
  if (x >= 2 && sieve.limit() < x) {
    throw InvalidArgument("factor sieve limit " + std::to_string(sieve.limit()) + " below x = " +
                          std::to_string(x));
  }
  const u64 q0 = spec.q0(), q1 = spec.q1(), q2 = spec.q2();
  std::vector<u64> rad_primes;
  for (u64 q : {q0, q2}) {
    if (q > 1) {
      const auto p = sieve.prime_divisors(q);
      rad_primes.insert(rad_primes.end(), p.begin(), p.end());
    }
  }
  const auto g_list = squarefree_divisors(rad_primes);
  auto coprime_q01 = [&](u64 k) { return gcd(k, q0) == 1 && gcd(k, q1) == 1; };

  const u64 blocks = x == 0 ? 0 : (x + policy.block_size - 1) / policy.block_size;
  std::vector<MobiusBlock> parts(blocks);
  const int threads = policy.threads > 0 ? policy.threads : omp_get_max_threads();
  const bool count_only = exps.r1 == 0 && exps.r2 == 0;

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long long b = 0; b < static_cast<long long>(blocks); ++b) {
    MobiusBlock acc;
    const u64 first = static_cast<u64>(b) * policy.block_size + 1;
    const u64 last = std::min(x, first + policy.block_size - 1);
    for (u64 e = first; e <= last; ++e) {
      const int mu_e = e == 1 ? 1 : sieve.mobius(e);
      if (mu_e == 0 || !coprime_q01(e) || gcd(e, q2) != 1) continue;
      for (u64 k = 1; k <= x / e; ++k) {
        if (!coprime_q01(k)) continue;
        const u64 n = e * k;
        const NumeratorRange r = interval.numerator_range(n);
        if (r.empty()) continue;
        const double weight_n = exps.r2 == 1 ? 1.0 / static_cast<double>(n) : 1.0;
        for (const auto& [g, mu_g] : g_list) {
          const u64 d = e * g;
          // multiples m = d*j of d inside [lo, hi]
          const u64 j_lo = (r.lo + d - 1) / d;
          const u64 j_hi = r.hi / d;
          if (j_lo > j_hi) continue;
          const int sign = mu_e * mu_g;
          if (count_only) {
            acc.exact += sign * static_cast<long long>(j_hi - j_lo + 1);
            continue;
          }
          const double inner = exps.r1 == 1
                                   ? (harmonic_prefix(j_hi) - harmonic_prefix(j_lo - 1)) / static_cast<double>(d)
                                   : static_cast<double>(j_hi - j_lo + 1);
          acc.sum.add(sign * weight_n * inner);
        }
      }
    }
    parts[static_cast<std::size_t>(b)] = acc;
  }
  const MobiusBlock total = pairwise_reduce<MobiusBlock>(parts, [](const MobiusBlock& a, const MobiusBlock& c) {
    MobiusBlock out = a;
    out.sum.add(c.sum);
    out.exact += c.exact;
    return out;
  });

  SumResult out{count_only ? static_cast<double>(total.exact) : total.sum.value(), 0, x, interval, exps, 0};
  // Term count and boundary warnings come from the window sizes alone; the
  // class count is the 00 value.
  if (count_only) {
    out.term_count = static_cast<u64>(total.exact);
  } else {
    out.term_count = static_cast<u64>(s_mobius(x, interval, SumExponents{0, 0}, spec, sieve, policy).value);
  }
  for (u64 n = 1; n <= x; ++n) out.precision_warnings += interval.numerator_range(n).ambiguous ? 1 : 0;
  if (out.term_count == 0) out.value = 0.0;  // cancellation residue on an empty class
  return out;
}

double harmonic_prefix(u64 k) {
  if (k <= kHarmonicTableSize) return harmonic_table()[k];
  const double kd = static_cast<double>(k);
  const double inv = 1.0 / kd;
  const double inv2 = inv * inv;
  return std::log(kd) + std::numbers::egamma + 0.5 * inv - inv2 / 12.0 + inv2 * inv2 / 120.0;
}

double DensityPoint::density(SumExponents e) const {
  if (empty()) {
    throw UndefinedDensity("F^I_x is empty at x = " + std::to_string(x) + "; density undefined");
  }
  return sums.member.get(e) / sums.total.get(e);
}

u64 max_numerator(u64 x, const IntervalAt& interval) {
  if (x == 0) return 0;
  const NumeratorRange r = interval.numerator_range(x);
  return r.empty() ? 0 : r.hi;
}

DensityPoint density_point(u64 x, const IntervalAt& interval, const MultiplesSpec& spec, const FactorSieve& sieve,
                           const ExecPolicy& policy) {
  const MultiplesSieve sieve_a(spec.a(), std::max<u64>(1, max_numerator(x, interval)));
  const MultiplesSieve sieve_b(spec.b(), std::max<u64>(1, x));
  const u64 q = spec.q();
  auto member = [&](const ReducedFraction& f) {
    return sieve_a.contains(f.m) && sieve_b.contains(f.n) && (q == 1 || (gcd(f.m, q) == 1 && gcd(f.n, q) == 1));
  };
  return DensityPoint{x, interval, split_sums(x, interval, sieve, member, policy)};
}

double empirical_density(u64 x, const IntervalAt& interval, SumExponents exps, const MultiplesSpec& spec,
                         const FactorSieve& sieve, const ExecPolicy& policy) {
  return density_point(x, interval, spec, sieve, policy).density(exps);
}

std::vector<std::pair<u64, double>> density_sequence(std::span<const u64> x_grid, const IntervalFamily& family,
                                                     SumExponents exps, const MultiplesSpec& spec,
                                                     const FactorSieve& sieve, const ExecPolicy& policy) {
  for (std::size_t i = 1; i < x_grid.size(); ++i) {
    if (x_grid[i] <= x_grid[i - 1]) throw InvalidArgument("x grid must be strictly increasing");
  }
  std::vector<std::pair<u64, double>> out;
  out.reserve(x_grid.size());
  for (u64 x : x_grid) {
    const IntervalAt interval = family.evaluate(static_cast<double>(x));
    out.emplace_back(x, empirical_density(x, interval, exps, spec, sieve, policy));
  }
  return out;
}

}  // namespace multdens
