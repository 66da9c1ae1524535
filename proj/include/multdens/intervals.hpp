#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "multdens/arith.hpp"

namespace multdens {

/// Nonnegative rational endpoint num/den, kept exact so that the strict
/// comparisons lambda*n < m can be decided in integer arithmetic.
struct Endpoint {
  u64 num = 0;
  u64 den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Endpoint& o) const {
    return static_cast<unsigned __int128>(num) * o.den == static_cast<unsigned __int128>(o.num) * den;
  }
  auto operator<=>(const Endpoint& o) const {
    return static_cast<unsigned __int128>(num) * o.den <=> static_cast<unsigned __int128>(o.num) * den;
  }
  std::string to_string() const;

  /// Accepts "3", "3/4", "0.75".
  static Endpoint parse(std::string_view text);
};

/// Closed integer range [lo, hi] of numerators m with lambda1*n < m < lambda2*n.
struct NumeratorRange {
  u64 lo = 1;
  u64 hi = 0;
  /// Set when a floating endpoint product lands within a few ulps of an
  /// integer, where rounding could move the boundary by one.
  bool ambiguous = false;

  bool empty() const { return hi < lo; }
  u64 size() const { return empty() ? 0 : hi - lo + 1; }
};

/// The interval I_x = (lambda1, lambda2) at a concrete scale x. Both ends open.
class IntervalAt {
 public:
  /// The unit interval (0, 1) with no scale attached.
  IntervalAt() = default;
  static IntervalAt exact(Endpoint lambda1, Endpoint lambda2, double x = 0.0);
  static IntervalAt approx(double lambda1, double lambda2, double x = 0.0);
  /// Mixed form used by families whose lower end is exact and upper end is not.
  static IntervalAt lower_exact(Endpoint lambda1, double lambda2, double x = 0.0);

  double lambda1() const { return lambda1_; }
  double lambda2() const { return lambda2_; }
  double x() const { return x_; }
  const std::optional<Endpoint>& exact1() const { return exact1_; }
  const std::optional<Endpoint>& exact2() const { return exact2_; }
  bool lower_is_zero() const { return exact1_ ? exact1_->num == 0 : lambda1_ == 0.0; }

  NumeratorRange numerator_range(u64 n) const;
  bool contains(u64 m, u64 n) const;

  /// (num/den) * I, exact wherever the endpoint is exact.
  IntervalAt scaled(u64 num, u64 den) const;

 private:
  void validate() const;

  double lambda1_ = 0.0;
  double lambda2_ = 1.0;
  double x_ = 0.0;
  std::optional<Endpoint> exact1_;
  std::optional<Endpoint> exact2_;
};

struct ConstantFamily {
  Endpoint lambda1;
  Endpoint lambda2;
};

/// lambda1 = 0, lambda2 = x^{-c}, 0 < c < 1.
struct ZeroPowerFamily {
  double c;
};

/// lambda1 = base, lambda2 = base + (log x)^{-gamma}, 0 < gamma <= 1.
struct ShrinkFamily {
  Endpoint base;
  double gamma;
};

struct Validation {
  bool ok;
  std::string reason;
};

class IntervalFamily {
 public:
  using Variant = std::variant<ConstantFamily, ZeroPowerFamily, ShrinkFamily>;

  static IntervalFamily constant(Endpoint lambda1, Endpoint lambda2);
  static IntervalFamily zero_power(double c);
  static IntervalFamily shrink(Endpoint base, double gamma);
  /// Grammar: "const:l1,l2", "zeropow:c", "shrink:l0,gamma".
  static IntervalFamily parse(std::string_view text);

  const Variant& kind() const { return kind_; }
  bool is_constant() const { return std::holds_alternative<ConstantFamily>(kind_); }

  /// Requires x > e.
  IntervalAt evaluate(double x) const;
  std::string to_string() const;

 private:
  explicit IntervalFamily(Variant v) : kind_(std::move(v)) {}
  Variant kind_;
};

/// Closed-form check of the interval hypotheses under which all four
/// densities of finite sets of multiples exist and coincide.
Validation validate_theorem3(const IntervalFamily& family);
/// Closed-form check of the hypotheses for existence of the 11-density for
/// arbitrary sets A, B.
Validation validate_theorem5(const IntervalFamily& family);

}  // namespace multdens
