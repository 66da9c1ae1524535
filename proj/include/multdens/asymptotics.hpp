#pragma once

#include <span>
#include <vector>

#include "multdens/arith.hpp"
#include "multdens/enumeration.hpp"
#include "multdens/intervals.hpp"
#include "multdens/sums.hpp"

namespace multdens {

struct MainTermReport {
  u64 x = 0;
  IntervalAt interval;
  SumExponents exponents;
  CoprimalitySpec spec{1, 1, 1};
  double main_term = 0.0;
  double empirical = 0.0;
  /// empirical / main_term when main_term > 0.
  double ratio = 0.0;
  /// The function inside the O(.) of the matching asymptotic, for display.
  double error_scale = 0.0;
};

/// Pi(q0,q1,q2) times the leading term of S^{r1 r2}_{x,I}(Q_{q0,q1,q2}):
///   00: (3/pi^2)(l2-l1) x^2          01: (6/pi^2)(l2-l1) x
///   10, l1>0: (6/pi^2) log(l2/l1) x  11, l1>0: (6/pi^2) log(l2/l1) log x
///   10, l1=0: (6/pi^2) x log(l2 x)
///   11, l1=0: (3/pi^2) log^2(l2 x)        if 1/x < l2 <= 1
///             (3/pi^2) log x log(l2^2 x)  if l2 > 1
/// Throws PreconditionError outside the regime (l1 = 0 with l2 <= 1/x for
/// r1 = 1).
double main_term(u64 x, const IntervalAt& interval, SumExponents exps, const CoprimalitySpec& spec,
                 const FactorSieve& sieve);

/// The remainder function of the same case, without its implied constant.
double main_term_error_scale(u64 x, const IntervalAt& interval, SumExponents exps);

/// Main term against the exact sum (Moebius path) at one point.
MainTermReport lemma_check(u64 x, const IntervalAt& interval, SumExponents exps, const CoprimalitySpec& spec,
                           const FactorSieve& sieve, const ExecPolicy& policy = {});

struct CorollaryRow {
  MainTermReport term;
  double full_sum = 0.0;
  /// S(Q_{q0,q1,q2}) / S(Q^+).
  double ratio = 0.0;
  ExactRational pi;
  double distance = 0.0;
};

/// Requires validate_theorem3(family).
std::vector<CorollaryRow> corollary_ratio_report(std::span<const u64> x_grid, const IntervalFamily& family,
                                                 SumExponents exps, const CoprimalitySpec& spec,
                                                 const FactorSieve& sieve, const ExecPolicy& policy = {});

struct RescaleReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_difference = 0.0;
  bool holds = false;
  u64 scaled_x = 0;
  IntervalAt scaled_interval;
};

inline constexpr double kRescaleTolerance = 1e-9;

/// Checks S_{x,I}(M(a,b|q)) = a^{-r1} b^{-r2} S_{x/b, (b/a) I}(Q_{q,a,b}) with
/// both sides by direct enumeration. Requires a, b coprime, ab coprime to q,
/// and x >= b.
RescaleReport pair_rescale_check(u64 a, u64 b, u64 q, u64 x, const IntervalAt& interval, SumExponents exps,
                                 const FactorSieve& sieve, const ExecPolicy& policy = {});
RescaleReport pair_rescale_check(u64 a, u64 b, u64 q, u64 x, const IntervalFamily& family, SumExponents exps,
                                 const FactorSieve& sieve, const ExecPolicy& policy = {});

}  // namespace multdens
