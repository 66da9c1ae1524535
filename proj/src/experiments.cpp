#include "multdens/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <omp.h>

#include "multdens/errors.hpp"

namespace multdens {

namespace {

void require_increasing(std::span<const u64> grid, const char* name) {
  if (grid.empty()) throw InvalidArgument(std::string(name) + " must be nonempty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw InvalidArgument(std::string(name) + " must be strictly increasing");
  }
}

}  // namespace

IntegerDensities integer_densities(const MultiplesSieve& sieve, u64 x) {
  if (x < 2) throw InvalidArgument("integer densities need x >= 2");
  if (x > sieve.limit()) {
    throw InvalidArgument("x = " + std::to_string(x) + " beyond multiples sieve limit " +
                          std::to_string(sieve.limit()));
  }
  u64 count = 0;
  double harmonic = 0.0;
  for (u64 k = 1; k <= x; ++k) {
    if (!sieve.contains(k)) continue;
    ++count;
    harmonic += 1.0 / static_cast<double>(k);
  }
  const double xd = static_cast<double>(x);
  return IntegerDensities{static_cast<double>(count) / xd, harmonic / std::log(xd), x};
}

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi < 2 || hi < lo) return out;
  const FactorSieve sieve(hi);
  for (u64 p = std::max<u64>(lo, 2); p <= hi; ++p) {
    if (sieve.is_prime(p)) out.push_back(p);
  }
  return out;
}

std::vector<u64> interval_union(std::span<const std::pair<u64, u64>> ranges) {
  std::vector<u64> out;
  for (const auto& [lo, hi] : ranges) {
    for (u64 k = std::max<u64>(lo, 1); k <= hi; ++k) out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<TruncationRow> run_truncation(const TruncationExperiment& exp, const ExecPolicy& policy) {
  require_increasing(exp.n_grid, "N grid");
  require_increasing(exp.x_grid, "x grid");
  if (exp.x_grid.front() < 2) throw InvalidArgument("x grid values must be at least 2");
  const u64 x_max = exp.x_grid.back();
  const std::size_t cols = exp.x_grid.size();
  std::vector<TruncationRow> rows(exp.n_grid.size() * cols);
  const int threads = policy.threads > 0 ? policy.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long long i = 0; i < static_cast<long long>(exp.n_grid.size()); ++i) {
    const u64 n = exp.n_grid[static_cast<std::size_t>(i)];
    std::vector<u64> truncated;
    for (u64 v : exp.a) {
      if (v >= 1 && v <= n) truncated.push_back(v);
    }
    std::optional<MultiplesSieve> sieve;
    if (!truncated.empty()) sieve.emplace(truncated, x_max);
    for (std::size_t j = 0; j < cols; ++j) {
      TruncationRow& row = rows[static_cast<std::size_t>(i) * cols + j];
      row.n = n;
      row.x = exp.x_grid[j];
      if (!sieve) continue;  // M(empty set) is empty
      const IntegerDensities d = integer_densities(*sieve, row.x);
      row.nu0 = d.nu0;
      row.nu1 = d.nu1;
    }
  }
  return rows;
}

std::vector<Theorem2Row> run_theorem2_table(const IntervalFamily& family, const MultiplesSpec& spec,
                                            std::span<const u64> x_grid, const FactorSieve& sieve,
                                            const ExecPolicy& policy) {
  const auto* fixed = std::get_if<ConstantFamily>(&family.kind());
  if (fixed == nullptr) throw PreconditionError("the density table needs a fixed interval (const family)");
  require_increasing(x_grid, "x grid");
  std::vector<Theorem2Row> rows;
  for (u64 x : x_grid) {
    const IntervalAt interval = IntervalAt::exact(fixed->lambda1, fixed->lambda2, static_cast<double>(x));
    const DensityPoint point = density_point(x, interval, spec, sieve, policy);
    Theorem2Row row{x, std::nullopt};
    if (!point.empty()) {
      std::array<double, 4> nu{};
      for (SumExponents e : SumExponents::all()) nu[e.index()] = point.density(e);
      row.nu = nu;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<Theorem5Row> run_theorem5(const IntervalFamily& family, const MultiplesSpec& spec,
                                      std::span<const u64> x_grid, const FactorSieve& sieve,
                                      const ExecPolicy& policy) {
  const Validation v = validate_theorem5(family);
  if (!v.ok) throw PreconditionError("interval family " + family.to_string() + " rejected: " + v.reason);
  require_increasing(x_grid, "x grid");
  const DensityValue reference = ie_density(spec.a(), spec.b(), spec.q(), sieve, policy.threads);
  std::vector<Theorem5Row> rows;
  for (u64 x : x_grid) {
    Theorem5Row row;
    row.x = x;
    row.interval = family.evaluate(static_cast<double>(x));
    row.nu11 = empirical_density(x, row.interval, SumExponents{1, 1}, spec, sieve, policy);
    row.reference = reference.value();
    row.distance = std::fabs(row.nu11 - reference.to_double());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace multdens
