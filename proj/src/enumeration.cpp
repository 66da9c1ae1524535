#include "multdens/enumeration.hpp"

#include <string>

namespace multdens {

namespace {

std::vector<u64> normalized_set(std::vector<u64> v, const char* name) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (v.empty()) throw InvalidArgument(std::string("set ") + name + " must be nonempty");
  if (v.front() == 0) throw InvalidArgument(std::string("set ") + name + " must contain only positive integers");
  return v;
}

}  // namespace

MultiplesSpec::MultiplesSpec(std::vector<u64> a, std::vector<u64> b, u64 q)
    : a_(normalized_set(std::move(a), "A")), b_(normalized_set(std::move(b), "B")), q_(q) {
  if (q == 0) throw InvalidArgument("q must be positive");
}

CoprimalitySpec::CoprimalitySpec(u64 q0, u64 q1, u64 q2) : q0_(q0), q1_(q1), q2_(q2) {
  if (q0 == 0 || q1 == 0 || q2 == 0) throw InvalidArgument("q0, q1, q2 must be positive");
  if (gcd(q0, q1) != 1 || gcd(q0, q2) != 1 || gcd(q1, q2) != 1) {
    throw InvalidArgument("q0, q1, q2 must be pairwise coprime, got (" + std::to_string(q0) + "," +
                          std::to_string(q1) + "," + std::to_string(q2) + ")");
  }
}

MultiplesSieve::MultiplesSieve(std::span<const u64> a, u64 limit) : limit_(limit), flags_(limit + 1, false) {
  if (a.empty()) throw InvalidArgument("multiples sieve needs a nonempty set");
  if (limit < 1) throw InvalidArgument("multiples sieve limit must be at least 1");
  for (u64 d : a) {
    if (d == 0) throw InvalidArgument("multiples sieve set must contain only positive integers");
    for (u64 k = d; k <= limit; k += d) flags_[k] = true;
  }
}

u64 MultiplesSieve::count() const { return static_cast<u64>(std::count(flags_.begin(), flags_.end(), true)); }

MultiplesSieve build_multiples_sieve(std::span<const u64> a, u64 limit) { return MultiplesSieve(a, limit); }

bool in_multiples(const ReducedFraction& f, const MultiplesSpec& spec, const MultiplesSieve& sieve_a,
                  const MultiplesSieve& sieve_b) {
  if (f.m > sieve_a.limit() || f.n > sieve_b.limit()) {
    throw InvalidArgument("multiples sieve too small for " + std::to_string(f.m) + "/" + std::to_string(f.n));
  }
  return sieve_a.contains(f.m) && sieve_b.contains(f.n) && gcd(f.m, spec.q()) == 1 && gcd(f.n, spec.q()) == 1;
}

bool in_coprimality_class(const ReducedFraction& f, const CoprimalitySpec& spec) {
  // gcd(mn, q0) = 1 and gcd(m*q1, n*q2) = 1, split into factor-wise gcds so
  // no product can overflow.
  return gcd(f.m, spec.q0()) == 1 && gcd(f.n, spec.q0()) == 1 && gcd(f.m, f.n) == 1 &&
         gcd(f.m, spec.q2()) == 1 && gcd(spec.q1(), f.n) == 1 && gcd(spec.q1(), spec.q2()) == 1;
}

FareyEnumerator::FareyEnumerator(u64 x, IntervalAt interval, const FactorSieve& sieve, u64 block_size)
    : x_(x), interval_(std::move(interval)), sieve_(&sieve), block_size_(block_size) {
  if (block_size == 0) throw InvalidArgument("block size must be positive");
  if (x >= 2 && sieve.limit() < x) {
    throw InvalidArgument("factor sieve limit " + std::to_string(sieve.limit()) + " below x = " +
                          std::to_string(x));
  }
}

std::vector<ReducedFraction> FareyEnumerator::collect() const {
  std::vector<ReducedFraction> out;
  for_each([&](u64 m, u64 n) { out.push_back({m, n}); });
  return out;
}

u64 FareyEnumerator::count() const {
  u64 c = 0;
  for_each([&](u64, u64) { ++c; });
  return c;
}

}  // namespace multdens
