#include "multdens/intervals.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "multdens/errors.hpp"

namespace multdens {

namespace {

using u128 = unsigned __int128;

Endpoint reduced(u64 num, u64 den) {
  const u64 g = std::gcd(num, den);
  return g == 0 ? Endpoint{0, 1} : Endpoint{num / g, den / g};
}

u64 parse_u64(std::string_view text, std::string_view what) {
  u64 v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

double parse_double(std::string_view text, std::string_view what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw InvalidArgument("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// Within a few ulps of an integer: the rounded product may sit on the wrong
// side of the boundary.
bool near_integer(double t) {
  const double r = std::nearbyint(t);
  return t != 0.0 && std::fabs(t - r) <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(t);
}

std::pair<std::string_view, std::string_view> split_pair(std::string_view text, std::string_view what) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
    throw InvalidArgument("expected two comma-separated values for " + std::string(what) + ", got '" +
                          std::string(text) + "'");
  }
  return {text.substr(0, comma), text.substr(comma + 1)};
}

}  // namespace

std::string Endpoint::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Endpoint Endpoint::parse(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const u64 num = parse_u64(text.substr(0, slash), "numerator");
    const u64 den = parse_u64(text.substr(slash + 1), "denominator");
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    return reduced(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 12 || whole.size() > 6) {
      throw InvalidArgument("too many digits in endpoint '" + std::string(text) + "'");
    }
    u64 den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const u64 w = whole.empty() ? 0 : parse_u64(whole, "endpoint");
    const u64 f = frac.empty() ? 0 : parse_u64(frac, "endpoint");
    return reduced(w * den + f, den);
  }
  return Endpoint{parse_u64(text, "endpoint"), 1};
}

IntervalAt IntervalAt::exact(Endpoint lambda1, Endpoint lambda2, double x) {
  if (lambda1.den == 0 || lambda2.den == 0) throw InvalidArgument("zero denominator in endpoint");
  IntervalAt out;
  out.exact1_ = lambda1;
  out.exact2_ = lambda2;
  out.lambda1_ = lambda1.value();
  out.lambda2_ = lambda2.value();
  out.x_ = x;
  if (!(lambda1 < lambda2)) {
    throw InvalidArgument("interval requires lambda1 < lambda2, got (" + lambda1.to_string() + ", " +
                          lambda2.to_string() + ")");
  }
  return out;
}

IntervalAt IntervalAt::approx(double lambda1, double lambda2, double x) {
  IntervalAt out;
  out.lambda1_ = lambda1;
  out.lambda2_ = lambda2;
  out.x_ = x;
  out.validate();
  return out;
}

IntervalAt IntervalAt::lower_exact(Endpoint lambda1, double lambda2, double x) {
  IntervalAt out;
  out.exact1_ = lambda1;
  out.lambda1_ = lambda1.value();
  out.lambda2_ = lambda2;
  out.x_ = x;
  out.validate();
  return out;
}

void IntervalAt::validate() const {
  if (!std::isfinite(lambda1_) || !std::isfinite(lambda2_) || lambda1_ < 0.0 || !(lambda1_ < lambda2_)) {
    throw InvalidArgument("interval requires 0 <= lambda1 < lambda2, got (" + format_double(lambda1_) +
                          ", " + format_double(lambda2_) + ")");
  }
}

NumeratorRange IntervalAt::numerator_range(u64 n) const {
  NumeratorRange r;
  // m > lambda1 * n
  if (exact1_) {
    r.lo = static_cast<u64>(static_cast<u128>(exact1_->num) * n / exact1_->den) + 1;
  } else {
    const double t = lambda1_ * static_cast<double>(n);
    r.lo = static_cast<u64>(std::floor(t)) + 1;
    r.ambiguous = r.ambiguous || near_integer(t);
  }
  // m < lambda2 * n
  if (exact2_) {
    const u128 p = static_cast<u128>(exact2_->num) * n;
    r.hi = p == 0 ? 0 : static_cast<u64>((p - 1) / exact2_->den);
  } else {
    const double t = lambda2_ * static_cast<double>(n);
    const double c = std::ceil(t);
    r.hi = c < 1.0 ? 0 : static_cast<u64>(c) - 1;
    r.ambiguous = r.ambiguous || near_integer(t);
  }
  return r;
}

bool IntervalAt::contains(u64 m, u64 n) const {
  const NumeratorRange r = numerator_range(n);
  return m >= r.lo && m <= r.hi;
}

IntervalAt IntervalAt::scaled(u64 num, u64 den) const {
  if (num == 0 || den == 0) throw InvalidArgument("scale factor must be positive");
  IntervalAt out;
  out.x_ = x_;
  const double f = static_cast<double>(num) / static_cast<double>(den);
  auto scale = [&](const std::optional<Endpoint>& e) -> std::optional<Endpoint> {
    if (!e) return std::nullopt;
    const u64 g1 = std::gcd(e->num, den);
    const u64 g2 = std::gcd(num, e->den);
    return reduced(checked_mul(e->num / std::max<u64>(g1, 1), num / g2),
                   checked_mul(e->den / g2, den / std::max<u64>(g1, 1)));
  };
  out.exact1_ = scale(exact1_);
  out.exact2_ = scale(exact2_);
  out.lambda1_ = out.exact1_ ? out.exact1_->value() : lambda1_ * f;
  out.lambda2_ = out.exact2_ ? out.exact2_->value() : lambda2_ * f;
  out.validate();
  return out;
}

IntervalFamily IntervalFamily::constant(Endpoint lambda1, Endpoint lambda2) {
  if (lambda1.den == 0 || lambda2.den == 0) throw InvalidArgument("zero denominator in endpoint");
  if (!(lambda1 < lambda2)) {
    throw InvalidArgument("constant family requires lambda1 < lambda2, got " + lambda1.to_string() + "," +
                          lambda2.to_string());
  }
  return IntervalFamily(ConstantFamily{reduced(lambda1.num, lambda1.den), reduced(lambda2.num, lambda2.den)});
}

IntervalFamily IntervalFamily::zero_power(double c) {
  if (!(c > 0.0 && c < 1.0)) {
    throw InvalidArgument("zeropow exponent must lie in (0, 1), got " + format_double(c));
  }
  return IntervalFamily(ZeroPowerFamily{c});
}

IntervalFamily IntervalFamily::shrink(Endpoint base, double gamma) {
  if (base.den == 0 || base.num == 0) throw InvalidArgument("shrink base must be positive");
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw InvalidArgument("shrink width exponent must lie in (0, 1], got " + format_double(gamma));
  }
  return IntervalFamily(ShrinkFamily{reduced(base.num, base.den), gamma});
}

IntervalFamily IntervalFamily::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("family '" + std::string(text) + "' lacks a kind prefix");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view args = text.substr(colon + 1);
  if (kind == "const") {
    auto [a, b] = split_pair(args, "const");
    return constant(Endpoint::parse(a), Endpoint::parse(b));
  }
  if (kind == "zeropow") return zero_power(parse_double(args, "zeropow exponent"));
  if (kind == "shrink") {
    auto [a, b] = split_pair(args, "shrink");
    return shrink(Endpoint::parse(a), parse_double(b, "shrink exponent"));
  }
  throw InvalidArgument("unknown family kind '" + std::string(kind) + "'");
}

IntervalAt IntervalFamily::evaluate(double x) const {
  if (!(x > std::numbers::e)) {
    throw InvalidArgument("interval families are evaluated only for x > e, got " + format_double(x));
  }
  return std::visit(
      [x](const auto& f) -> IntervalAt {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstantFamily>) {
          return IntervalAt::exact(f.lambda1, f.lambda2, x);
        } else if constexpr (std::is_same_v<T, ZeroPowerFamily>) {
          return IntervalAt::lower_exact(Endpoint{0, 1}, std::pow(x, -f.c), x);
        } else {
          return IntervalAt::lower_exact(f.base, f.base.value() + std::pow(std::log(x), -f.gamma), x);
        }
      },
      kind_);
}

std::string IntervalFamily::to_string() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstantFamily>) {
          return "const:" + f.lambda1.to_string() + "," + f.lambda2.to_string();
        } else if constexpr (std::is_same_v<T, ZeroPowerFamily>) {
          return "zeropow:" + format_double(f.c);
        } else {
          return "shrink:" + f.base.to_string() + "," + format_double(f.gamma);
        }
      },
      kind_);
}

Validation validate_theorem3(const IntervalFamily& family) {
  return std::visit(
      [](const auto& f) -> Validation {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstantFamily>) {
          if (f.lambda1.num == 0) {
            return {true, "lambda1 = 0 and lambda2 is a positive constant, so lambda2 > x^-c for every c in (0,1)"};
          }
          return {true, "lambda1 > 0 fixed: lambda1*log(lambda2/lambda1)*log x grows like log x"};
        } else if constexpr (std::is_same_v<T, ZeroPowerFamily>) {
          return {true, "lambda1 = 0 and lambda2 = x^-" + format_double(f.c) +
                            " exceeds x^-c' for any c' in (c, 1)"};
        } else {
          if (f.gamma < 1.0) {
            return {true, "lambda1*log(lambda2/lambda1)*log x ~ (log x)^(1-gamma) -> infinity"};
          }
          return {false, "gamma = 1: lambda1*log(lambda2/lambda1)*log x stays bounded"};
        }
      },
      family.kind());
}

Validation validate_theorem5(const IntervalFamily& family) {
  return std::visit(
      [](const auto& f) -> Validation {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstantFamily>) {
          if (f.lambda1.num == 0) {
            return {true, "lambda1 = 0: lambda2*x -> infinity and log x/log(lambda2*x) -> 1"};
          }
          return {true, "fixed 0 < lambda1 < lambda2: (lambda2 - lambda1)*log x -> infinity"};
        } else if constexpr (std::is_same_v<T, ZeroPowerFamily>) {
          return {true, "lambda1 = 0: lambda2*x = x^(1-c) -> infinity and log x/log(lambda2*x) = 1/(1-c)"};
        } else {
          if (f.gamma < 1.0) {
            return {true, "lambda1 fixed, lambda2 bounded: (lambda2 - lambda1)*log x = (log x)^(1-gamma) -> infinity"};
          }
          return {false, "gamma = 1: (lambda2 - lambda1)*log x = 1 does not tend to infinity"};
        }
      },
      family.kind());
}

}  // namespace multdens
