#include "hetdp/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "hetdp/weights.hpp"

namespace hetdp {

std::pair<double, std::size_t> lower_bound_h(std::span<const double> eps_sorted) {
  const std::size_t n = eps_sorted.size();
  if (n == 0) throw EmptyProfile();

  // i = 0: empty prefix, candidate 1/n
  double best = 1.0 / static_cast<double>(n);
  std::size_t best_i = 0;
  double prefix = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    prefix += eps_sorted[i - 1];
    // an infinite prefix makes the candidate 0, never the maximum
    const double cand = 1.0 / (prefix * prefix + static_cast<double>(n - i));
    if (cand > best) {
      best = cand;
      best_i = i;
    }
  }
  return {best, best_i};
}

std::pair<double, std::size_t> lower_bound_h(const SortedProfile& sp) {
  return lower_bound_h(std::span<const double>(sp.eps_sorted));
}

BoundsReport bounds_report(const SortedProfile& sp) {
  const WeightAllocation alloc = compute_weights(sp);
  const auto [h, p] = lower_bound_h(sp);
  BoundsReport rep;
  rep.h = h;
  rep.h_argmax = p;
  rep.f = alloc.f_value;
  rep.upper = upper_bound_mse(alloc);
  rep.ratio = rep.f / rep.h;
  return rep;
}

}  // namespace hetdp
