#pragma once

#include <vector>

#include "multdens/enumeration.hpp"
#include "multdens/sums.hpp"

// Serial brute-force counterparts of the parallel kernels: a gcd per pair and
// one running sum. Slow, but with no shared machinery, so the tests and the
// benchmark can hold the fast paths against them.
namespace multdens::reference {

std::vector<ReducedFraction> enumerate_fractions(u64 x, const IntervalAt& interval);

SumResult s_direct(u64 x, const IntervalAt& interval, SumExponents exps, const FractionPredicate& member);

}  // namespace multdens::reference
