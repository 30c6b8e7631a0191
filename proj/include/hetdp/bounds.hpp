#ifndef HETDP_BOUNDS_HPP
#define HETDP_BOUNDS_HPP

#include <cstddef>
#include <span>
#include <utility>

#include "hetdp/types.hpp"

namespace hetdp {

// Certificate bracketing the best achievable worst-case MSE: h from below
// (up to universal constants), upper = min(f, 1/4) from above.
struct BoundsReport {
  double h;              // max_{i=0..n} 1 / (||eps_1^i||_1^2 + n - i)
  std::size_t h_argmax;  // smallest maximizing prefix length p
  double f;              // objective value of the optimal scaled weights
  double upper;          // min(f, 1/4)
  double ratio;          // f / h, provably <= 443
};

// Single O(n) pass over prefix sums. Infinite prefixes contribute candidate
// value 0, so indices at or past the first +inf level never maximize.
std::pair<double, std::size_t> lower_bound_h(const SortedProfile& sp);

// Same, over a raw nondecreasing span (no permutation bookkeeping needed).
std::pair<double, std::size_t> lower_bound_h(std::span<const double> eps_sorted);

BoundsReport bounds_report(const SortedProfile& sp);

}  // namespace hetdp

#endif  // HETDP_BOUNDS_HPP
