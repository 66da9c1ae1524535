#include "multdens/reference.hpp"

#include <numeric>

namespace multdens::reference {

std::vector<ReducedFraction> enumerate_fractions(u64 x, const IntervalAt& interval) {
  std::vector<ReducedFraction> out;
  for (u64 n = 1; n <= x; ++n) {
    const NumeratorRange r = interval.numerator_range(n);
    for (u64 m = r.lo; m <= r.hi; ++m) {
      if (std::gcd(m, n) == 1) out.push_back({m, n});
    }
  }
  return out;
}

SumResult s_direct(u64 x, const IntervalAt& interval, SumExponents exps, const FractionPredicate& member) {
  KahanSum sum;
  u64 count = 0, ambiguous = 0;
  for (u64 n = 1; n <= x; ++n) {
    const NumeratorRange r = interval.numerator_range(n);
    ambiguous += r.ambiguous ? 1 : 0;
    for (u64 m = r.lo; m <= r.hi; ++m) {
      if (std::gcd(m, n) != 1 || !member(ReducedFraction{m, n})) continue;
      double term = 1.0;
      if (exps.r1 == 1) term /= static_cast<double>(m);
      if (exps.r2 == 1) term /= static_cast<double>(n);
      sum.add(term);
      ++count;
    }
  }
  return SumResult{sum.value(), count, x, interval, exps, ambiguous};
}

}  // namespace multdens::reference
