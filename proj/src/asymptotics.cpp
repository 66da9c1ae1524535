#include "multdens/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "multdens/errors.hpp"

namespace multdens {

namespace {

constexpr double kThreeOverPiSq = 3.0 / (std::numbers::pi * std::numbers::pi);
constexpr double kSixOverPiSq = 6.0 / (std::numbers::pi * std::numbers::pi);

void check_regime(u64 x, const IntervalAt& interval, SumExponents exps) {
  if (x < 2) throw PreconditionError("main terms need x >= 2");
  if (exps.r1 == 1 && interval.lower_is_zero() && !(interval.lambda2() * static_cast<double>(x) > 1.0)) {
    throw PreconditionError("lambda1 = 0 with lambda2 <= 1/x is outside the asymptotic regime");
  }
}

}  // namespace

double main_term(u64 x, const IntervalAt& interval, SumExponents exps, const CoprimalitySpec& spec,
                 const FactorSieve& sieve) {
  check_regime(x, interval, exps);
  const double pi = to_double(pi_product(spec.q0(), spec.q1(), spec.q2(), sieve));
  const double xd = static_cast<double>(x);
  const double l1 = interval.lambda1();
  const double l2 = interval.lambda2();
  const double width = l2 - l1;
  const double lx = std::log(xd);

  double term = 0.0;
  if (exps.r1 == 0) {
    term = exps.r2 == 0 ? kThreeOverPiSq * width * xd * xd : kSixOverPiSq * width * xd;
  } else if (!interval.lower_is_zero()) {
    const double lr = std::log(l2 / l1);
    term = exps.r2 == 0 ? kSixOverPiSq * lr * xd : kSixOverPiSq * lr * lx;
  } else if (exps.r2 == 0) {
    term = kSixOverPiSq * xd * std::log(l2 * xd);
  } else if (l2 <= 1.0) {
    const double l = std::log(l2 * xd);
    term = kThreeOverPiSq * l * l;
  } else {
    term = kThreeOverPiSq * lx * std::log(l2 * l2 * xd);
  }
  return pi * term;
}

double main_term_error_scale(u64 x, const IntervalAt& interval, SumExponents exps) {
  check_regime(x, interval, exps);
  const double xd = static_cast<double>(x);
  const double l1 = interval.lambda1();
  const double l2 = interval.lambda2();
  const double lx = std::log(xd);
  if (exps.r1 == 0) {
    const double tail = exps.r2 == 0 ? lx : lx * lx;
    return lx / xd + tail / ((l2 - l1) * xd);
  }
  if (!interval.lower_is_zero()) {
    const double spread = l1 * std::log(l2 / l1);
    return exps.r2 == 0 ? lx / xd + lx * lx / (spread * xd) : 1.0 / lx + 1.0 / (spread * lx);
  }
  if (exps.r2 == 0) return 1.0 / std::log(l2 * xd) + lx / xd;
  if (l2 <= 1.0) {
    const double l = std::log(l2 * xd);
    return lx / (l * l);
  }
  return std::log(l2 * xd) / (lx * std::log(l2 * l2 * xd));
}

MainTermReport lemma_check(u64 x, const IntervalAt& interval, SumExponents exps, const CoprimalitySpec& spec,
                           const FactorSieve& sieve, const ExecPolicy& policy) {
  MainTermReport r;
  r.x = x;
  r.interval = interval;
  r.exponents = exps;
  r.spec = spec;
  r.main_term = main_term(x, interval, exps, spec, sieve);
  r.error_scale = main_term_error_scale(x, interval, exps);
  r.empirical = s_mobius(x, interval, exps, spec, sieve, policy).value;
  r.ratio = r.main_term > 0.0 ? r.empirical / r.main_term : 0.0;
  return r;
}

std::vector<CorollaryRow> corollary_ratio_report(std::span<const u64> x_grid, const IntervalFamily& family,
                                                 SumExponents exps, const CoprimalitySpec& spec,
                                                 const FactorSieve& sieve, const ExecPolicy& policy) {
  const Validation v = validate_theorem3(family);
  if (!v.ok) throw PreconditionError("interval family " + family.to_string() + " rejected: " + v.reason);
  const ExactRational pi = pi_product(spec.q0(), spec.q1(), spec.q2(), sieve);
  const CoprimalitySpec everything(1, 1, 1);
  std::vector<CorollaryRow> rows;
  for (u64 x : x_grid) {
    CorollaryRow row;
    const IntervalAt interval = family.evaluate(static_cast<double>(x));
    row.term = lemma_check(x, interval, exps, spec, sieve, policy);
    row.full_sum = spec == everything ? row.term.empirical : s_mobius(x, interval, exps, everything, sieve, policy).value;
    if (row.full_sum == 0.0) throw UndefinedDensity("F^I_x is empty at x = " + std::to_string(x));
    row.ratio = row.term.empirical / row.full_sum;
    row.pi = pi;
    row.distance = std::fabs(row.ratio - to_double(pi));
    rows.push_back(std::move(row));
  }
  return rows;
}

RescaleReport pair_rescale_check(u64 a, u64 b, u64 q, u64 x, const IntervalAt& interval, SumExponents exps,
                                 const FactorSieve& sieve, const ExecPolicy& policy) {
  if (a == 0 || b == 0 || q == 0) throw InvalidArgument("a, b, q must be positive");
  if (gcd(a, b) != 1 || gcd(a, q) != 1 || gcd(b, q) != 1) {
    throw PreconditionError("rescaling needs a coprime to b and ab coprime to q");
  }
  if (x < b) throw PreconditionError("rescaling needs x/b >= 1");

  RescaleReport r;
  auto lhs_member = [&](const ReducedFraction& f) {
    return f.m % a == 0 && f.n % b == 0 && gcd(f.m, q) == 1 && gcd(f.n, q) == 1;
  };
  r.lhs = s_direct(x, interval, exps, lhs_member, sieve, policy).value;

  r.scaled_x = x / b;
  r.scaled_interval = interval.scaled(b, a);
  const CoprimalitySpec cls(q, a, b);
  auto rhs_member = [&](const ReducedFraction& f) { return in_coprimality_class(f, cls); };
  const double factor = (exps.r1 == 1 ? 1.0 / static_cast<double>(a) : 1.0) *
                        (exps.r2 == 1 ? 1.0 / static_cast<double>(b) : 1.0);
  r.rhs = factor * s_direct(r.scaled_x, r.scaled_interval, exps, rhs_member, sieve, policy).value;

  const double scale = std::max({std::fabs(r.lhs), std::fabs(r.rhs), 1e-300});
  r.relative_difference = r.lhs == r.rhs ? 0.0 : std::fabs(r.lhs - r.rhs) / scale;
  r.holds = r.relative_difference <= kRescaleTolerance;
  return r;
}

RescaleReport pair_rescale_check(u64 a, u64 b, u64 q, u64 x, const IntervalFamily& family, SumExponents exps,
                                 const FactorSieve& sieve, const ExecPolicy& policy) {
  return pair_rescale_check(a, b, q, x, family.evaluate(static_cast<double>(x)), exps, sieve, policy);
}

}  // namespace multdens
