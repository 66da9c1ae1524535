#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace multdens {

/// Neumaier-compensated running sum.
class KahanSum {
 public:
  KahanSum() = default;
  explicit KahanSum(double v) : sum_(v) {}

  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  void add(const KahanSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Fixed-shape pairwise reduction over per-block partials: the tree depends
/// only on the number of blocks, never on which thread produced which block.
template <class T, class Combine>
T pairwise_reduce(std::span<const T> parts, Combine combine) {
  if (parts.empty()) return T{};
  if (parts.size() == 1) return parts[0];
  const std::size_t mid = parts.size() / 2;
  return combine(pairwise_reduce(parts.first(mid), combine), pairwise_reduce(parts.subspan(mid), combine));
}

}  // namespace multdens
