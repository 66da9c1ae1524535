#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "multdens/arith.hpp"
#include "multdens/enumeration.hpp"

namespace multdens {

/// An exact density, 0 <= value <= 1.
class DensityValue {
 public:
  explicit DensityValue(ExactRational v);
  const ExactRational& value() const { return value_; }
  double to_double() const { return multdens::to_double(value_); }
  std::string to_string() const { return multdens::to_string(value_); }
  bool operator==(const DensityValue&) const = default;

 private:
  ExactRational value_;
};

/// Inclusion-exclusion enumerates subsets of A x B; capped at 2^22.
inline constexpr std::size_t kMaxPairs = 22;

/// Limit of nu^{r1 r2}_x(M(a,b|q)):
///   (1/ab) Prod_{p|q}(1 - 2/(p+1)) Prod_{p|ab}(1 - 1/(p+1)),
/// or 0 when gcd(a,b) > 1 or gcd(ab,q) > 1 (the set is empty).
DensityValue pair_density(u64 a, u64 b, u64 q, const FactorSieve& sieve);

/// Limit density of M(A,B|q) for finite A, B by inclusion-exclusion over
/// nonempty C subset of A x B, with the intersection over C equal to
/// M([C]_A, [C]_B | q). Subsets whose lcm pair already yields an empty set
/// are pruned together with all their supersets.
/// Throws CapacityError if |A|*|B| > kMaxPairs, OverflowError if a needed
/// lcm exceeds 64 bits.
DensityValue ie_density(std::span<const u64> a, std::span<const u64> b, u64 q, const FactorSieve& sieve,
                        int threads = 0);

struct HypothesisReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// a coprime to b for all a in A, b in B; a1 coprime to a2/(a1,a2) within A,
/// and likewise within B (all ordered pairs).
HypothesisReport check_theorem4_hypotheses(std::span<const u64> a, std::span<const u64> b);

/// Prod_{p|q}(1 - 2/(p+1)) * Prod_{c in A u B}(1 - (1/c) Prod_{p|c}(1 - 1/(p+1))).
/// Throws PreconditionError if the hypotheses fail.
ExactRational theorem4_bound(std::span<const u64> a, std::span<const u64> b, u64 q, const FactorSieve& sieve);

struct Theorem4Check {
  ExactRational bound;
  ExactRational density;
  ExactRational one_minus_density;
  bool holds = false;
  /// Density is zero, so the inequality holds for trivial reasons.
  bool trivial = false;
};

Theorem4Check verify_theorem4(std::span<const u64> a, std::span<const u64> b, u64 q, const FactorSieve& sieve);

struct Theorem4Instance {
  std::vector<u64> a;
  std::vector<u64> b;
  u64 q = 1;
};

struct Theorem4GeneratorOptions {
  std::size_t max_pairs = 12;
  u64 max_element = 1000000;
};

/// Builds A and B from disjoint pools of pairwise coprime atoms, each element
/// a product of a subset of its pool's atoms; such sets satisfy the
/// hypotheses of theorem4_bound. q is a random small product of primes.
Theorem4Instance generate_theorem4_instance(std::mt19937_64& rng, const Theorem4GeneratorOptions& options = {});

}  // namespace multdens
