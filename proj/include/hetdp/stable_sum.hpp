#ifndef HETDP_STABLE_SUM_HPP
#define HETDP_STABLE_SUM_HPP

#include <cmath>

namespace hetdp {

// Neumaier-compensated accumulator. The weight recursion feeds its running
// sums back into future terms, so rounding drift compounds; plain
// accumulation already misses the homogeneous closed form by ~4e-14
// relative at n in the low thousands.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace hetdp

#endif  // HETDP_STABLE_SUM_HPP
