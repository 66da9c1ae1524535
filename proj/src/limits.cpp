#include "multdens/limits.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <omp.h>

#include "multdens/errors.hpp"

namespace multdens {

namespace {

using LcmKey = std::pair<u64, u64>;
using Coefficients = std::map<LcmKey, long long>;

std::vector<u64> primes_of(u64 n, const FactorSieve& sieve) {
  return n == 1 ? std::vector<u64>{} : sieve.prime_divisors(n);
}

ExactRational density_from_lcms(u64 la, u64 lb, const ExactRational& q_part, std::span<const u64> prime_pool) {
  std::vector<u64> primes;
  for (u64 p : prime_pool) {
    if (la % p == 0 || lb % p == 0) primes.push_back(p);
  }
  return q_part * unit_product_from_primes(primes) / (ExactRational(la) * ExactRational(lb));
}

class SubsetWalker {
 public:
  SubsetWalker(std::span<const LcmKey> pairs, u64 q, Coefficients& out) : pairs_(pairs), q_(q), out_(out) {}

  bool alive(u64 la, u64 lb) const { return gcd(la, lb) == 1 && gcd(la, q_) == 1 && gcd(lb, q_) == 1; }

  // Records every live subset that extends the current one with pairs of
  // index >= next. `odd` is the parity of the current subset size.
  void extend(std::size_t next, u64 la, u64 lb, bool odd) {
    for (std::size_t j = next; j < pairs_.size(); ++j) {
      const u64 la2 = lcm(la, pairs_[j].first);
      const u64 lb2 = lcm(lb, pairs_[j].second);
      if (!alive(la2, lb2)) continue;
      out_[{la2, lb2}] += odd ? -1 : 1;
      extend(j + 1, la2, lb2, !odd);
    }
  }

 private:
  std::span<const LcmKey> pairs_;
  u64 q_;
  Coefficients& out_;
};

}  // namespace

DensityValue::DensityValue(ExactRational v) : value_(std::move(v)) {
  if (value_ < 0 || value_ > 1) throw InvalidArgument("density " + multdens::to_string(value_) + " outside [0, 1]");
}

DensityValue pair_density(u64 a, u64 b, u64 q, const FactorSieve& sieve) {
  if (a == 0 || b == 0 || q == 0) throw InvalidArgument("pair_density arguments must be positive");
  if (gcd(a, b) != 1 || gcd(a, q) != 1 || gcd(b, q) != 1) return DensityValue(ExactRational(0));
  std::vector<u64> primes = primes_of(a, sieve);
  const std::vector<u64> pb = primes_of(b, sieve);
  primes.insert(primes.end(), pb.begin(), pb.end());
  const ExactRational v = q_factor_from_primes(primes_of(q, sieve)) * unit_product_from_primes(primes) /
                          (ExactRational(a) * ExactRational(b));
  return DensityValue(v);
}

DensityValue ie_density(std::span<const u64> a, std::span<const u64> b, u64 q, const FactorSieve& sieve,
                        int threads) {
  if (a.empty() || b.empty()) throw InvalidArgument("A and B must be nonempty");
  if (q == 0) throw InvalidArgument("q must be positive");
  const std::set<u64> set_a(a.begin(), a.end()), set_b(b.begin(), b.end());
  if (*set_a.begin() == 0 || *set_b.begin() == 0) throw InvalidArgument("A and B must contain positive integers");
  if (set_a.size() * set_b.size() > kMaxPairs) {
    throw CapacityError("|A|*|B| = " + std::to_string(set_a.size() * set_b.size()) + " exceeds the limit of " +
                        std::to_string(kMaxPairs) + " pairs");
  }
  std::vector<LcmKey> pairs;
  std::set<u64> pool;
  for (u64 x : set_a) {
    for (u64 y : set_b) pairs.push_back({x, y});
    for (u64 p : primes_of(x, sieve)) pool.insert(p);
  }
  for (u64 y : set_b) {
    for (u64 p : primes_of(y, sieve)) pool.insert(p);
  }
  const std::vector<u64> prime_pool(pool.begin(), pool.end());

  // The first `split` pairs fix a task prefix; each task walks the rest.
  const std::size_t split = std::min<std::size_t>(4, pairs.size());
  const std::size_t tasks = std::size_t{1} << split;
  std::vector<Coefficients> partial(tasks);
  std::vector<std::string> overflow(tasks);
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
  for (long long t = 0; t < static_cast<long long>(tasks); ++t) {
    try {
      Coefficients& out = partial[static_cast<std::size_t>(t)];
      SubsetWalker walker(pairs, q, out);
      u64 la = 1, lb = 1;
      bool odd = false;
      bool live = true;
      for (std::size_t i = 0; i < split && live; ++i) {
        if ((static_cast<std::size_t>(t) >> i) & 1) {
          la = lcm(la, pairs[i].first);
          lb = lcm(lb, pairs[i].second);
          odd = !odd;
          live = walker.alive(la, lb);
        }
      }
      if (!live) continue;
      if (t != 0) out[{la, lb}] += odd ? 1 : -1;
      walker.extend(split, la, lb, odd);
    } catch (const OverflowError& e) {
      overflow[static_cast<std::size_t>(t)] = e.what();
    }
  }
  for (const auto& msg : overflow) {
    if (!msg.empty()) throw OverflowError(msg);
  }

  Coefficients merged;
  for (const auto& part : partial) {
    for (const auto& [key, c] : part) merged[key] += c;
  }
  const ExactRational q_part = q_factor_from_primes(primes_of(q, sieve));
  ExactRational total = 0;
  for (const auto& [key, c] : merged) {
    if (c != 0) total += ExactRational(c) * density_from_lcms(key.first, key.second, q_part, prime_pool);
  }
  return DensityValue(total);
}

HypothesisReport check_theorem4_hypotheses(std::span<const u64> a, std::span<const u64> b) {
  HypothesisReport report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.violations.push_back(std::move(msg));
  };
  for (u64 x : a) {
    for (u64 y : b) {
      if (gcd(x, y) != 1) fail("A x B: " + std::to_string(x) + " and " + std::to_string(y) + " share a factor");
    }
  }
  auto within = [&](std::span<const u64> s, const char* name) {
    for (u64 x1 : s) {
      for (u64 x2 : s) {
        const u64 quotient = x2 / gcd(x1, x2);
        if (gcd(x1, quotient) != 1) {
          fail(std::string(name) + ": " + std::to_string(x1) + " not coprime to " + std::to_string(x2) + "/(" +
               std::to_string(x1) + "," + std::to_string(x2) + ") = " + std::to_string(quotient));
        }
      }
    }
  };
  within(a, "A");
  within(b, "B");
  return report;
}

ExactRational theorem4_bound(std::span<const u64> a, std::span<const u64> b, u64 q, const FactorSieve& sieve) {
  if (q == 0) throw InvalidArgument("q must be positive");
  const HypothesisReport report = check_theorem4_hypotheses(a, b);
  if (!report.ok) throw PreconditionError("hypotheses of the product bound fail: " + report.violations.front());
  std::set<u64> elements(a.begin(), a.end());
  elements.insert(b.begin(), b.end());
  ExactRational bound = q_factor_from_primes(primes_of(q, sieve));
  for (u64 c : elements) bound *= ExactRational(1) - unit_factor(c, sieve);
  return bound;
}

Theorem4Check verify_theorem4(std::span<const u64> a, std::span<const u64> b, u64 q, const FactorSieve& sieve) {
  Theorem4Check out;
  out.bound = theorem4_bound(a, b, q, sieve);
  out.density = ie_density(a, b, q, sieve).value();
  out.one_minus_density = ExactRational(1) - out.density;
  out.holds = out.one_minus_density >= out.bound;
  out.trivial = out.density == 0;
  return out;
}

Theorem4Instance generate_theorem4_instance(std::mt19937_64& rng, const Theorem4GeneratorOptions& options) {
  static constexpr u64 kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  std::vector<u64> primes(std::begin(kPrimes), std::end(kPrimes));
  std::shuffle(primes.begin(), primes.end(), rng);
  auto uniform = [&](u64 lo, u64 hi) { return std::uniform_int_distribution<u64>(lo, hi)(rng); };

  std::size_t next = 0;
  auto make_atoms = [&](std::size_t count) {
    std::vector<u64> atoms;
    for (std::size_t i = 0; i < count; ++i) {
      u64 atom = primes[next++];
      switch (uniform(0, 3)) {
        case 0: atom *= atom; break;                // prime square
        case 1: atom *= primes[next++]; break;      // two fresh primes
        default: break;
      }
      atoms.push_back(atom);
    }
    return atoms;
  };
  const std::vector<u64> atoms_a = make_atoms(uniform(1, 3));
  const std::vector<u64> atoms_b = make_atoms(uniform(1, 3));

  // Products over nonempty subsets of the atoms, plus 1 on occasion.
  auto products = [&](const std::vector<u64>& atoms) {
    std::vector<u64> out;
    for (u64 mask = 1; mask < (u64{1} << atoms.size()); ++mask) {
      u64 v = 1;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if ((mask >> i) & 1) v *= atoms[i];
      }
      if (v <= options.max_element) out.push_back(v);
    }
    if (uniform(0, 9) == 0) out.push_back(1);
    std::shuffle(out.begin(), out.end(), rng);
    return out;
  };
  std::vector<u64> pa = products(atoms_a);
  std::vector<u64> pb = products(atoms_b);
  if (pa.empty()) pa.push_back(1);
  if (pb.empty()) pb.push_back(1);

  const std::size_t max_pairs = std::max<std::size_t>(1, options.max_pairs);
  const std::size_t size_a = uniform(1, std::min(pa.size(), max_pairs));
  const std::size_t size_b = uniform(1, std::min(pb.size(), std::max<std::size_t>(1, max_pairs / size_a)));

  Theorem4Instance inst;
  inst.a.assign(pa.begin(), pa.begin() + static_cast<std::ptrdiff_t>(size_a));
  inst.b.assign(pb.begin(), pb.begin() + static_cast<std::ptrdiff_t>(size_b));
  std::sort(inst.a.begin(), inst.a.end());
  std::sort(inst.b.begin(), inst.b.end());
  for (u64 k = uniform(0, 2); k > 0; --k) {
    const u64 p = kPrimes[uniform(0, std::size(kPrimes) - 1)];
    if (inst.q * p <= options.max_element) inst.q *= p;
  }
  return inst;
}

}  // namespace multdens
