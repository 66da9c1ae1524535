#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "multdens/arith.hpp"
#include "multdens/enumeration.hpp"
#include "multdens/intervals.hpp"
#include "multdens/limits.hpp"
#include "multdens/sums.hpp"

namespace multdens {

/// nu^0_x(A) = (1/x) #(A n [1,x]) and nu^1_x(A) = (1/log x) sum_{n in A, n <= x} 1/n.
struct IntegerDensities {
  double nu0 = 0.0;
  double nu1 = 0.0;
  u64 x = 0;
};

/// Requires 2 <= x <= sieve.limit(). The harmonic part is summed left to
/// right without compensation: rounding is monotone, so a superset of A
/// never yields a smaller nu1.
IntegerDensities integer_densities(const MultiplesSieve& sieve, u64 x);

/// Primes p with lo <= p <= hi.
std::vector<u64> primes_in_range(u64 lo, u64 hi);
/// Sorted union of the inclusive integer ranges.
std::vector<u64> interval_union(std::span<const std::pair<u64, u64>> ranges);

/// Densities of M(A_N), A_N = A n [1, N], over a grid of N and x.
struct TruncationExperiment {
  std::vector<u64> a;
  std::vector<u64> n_grid;
  std::vector<u64> x_grid;
};

struct TruncationRow {
  u64 n = 0;
  u64 x = 0;
  double nu0 = 0.0;
  double nu1 = 0.0;
};

/// Rows ordered by N, then x.
std::vector<TruncationRow> run_truncation(const TruncationExperiment& exp, const ExecPolicy& policy = {});

struct Theorem2Row {
  u64 x = 0;
  /// nu00, nu01, nu10, nu11; unset when F^I_x is empty.
  std::optional<std::array<double, 4>> nu;
};

/// Tabulates all four densities for a fixed interval. The inequality chains
/// between their upper and lower limits are not checked here.
std::vector<Theorem2Row> run_theorem2_table(const IntervalFamily& family, const MultiplesSpec& spec,
                                            std::span<const u64> x_grid, const FactorSieve& sieve,
                                            const ExecPolicy& policy = {});

struct Theorem5Row {
  u64 x = 0;
  IntervalAt interval;
  double nu11 = 0.0;
  ExactRational reference;
  double distance = 0.0;
};

/// nu^{11}_x along a shrinking interval family against the exact limit from
/// inclusion-exclusion. Requires validate_theorem5(family).
std::vector<Theorem5Row> run_theorem5(const IntervalFamily& family, const MultiplesSpec& spec,
                                      std::span<const u64> x_grid, const FactorSieve& sieve,
                                      const ExecPolicy& policy = {});

}  // namespace multdens
