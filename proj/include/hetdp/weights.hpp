#ifndef HETDP_WEIGHTS_HPP
#define HETDP_WEIGHTS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hetdp/types.hpp"

namespace hetdp {

// Worst-case-MSE objective value together with the norms it was built from.
struct ObjectiveValue {
  double f;     // ||x||_2^2 / (4||x||_1^2) + 2 ||x/eps||_inf^2 / ||x||_1^2
  double l1;    // ||x||_1
  double l2sq;  // ||x||_2^2
};

// Optimal scaled weights for a sorted profile.
//
// The recursion starts at r_1 = eps_1 and extends by
//   r_{k+1} = min(eps_{k+1}, (sum r_i^2 + 8) / (sum r_i)),
// taking sums over the prefix r_1..r_k. Whenever the second branch of the
// min wins (saturation), every later weight equals that same threshold, so
// the tail is filled with the constant instead of re-evaluating the ratio;
// this keeps the tail bitwise constant and monotone. Ties count as
// saturated. Runs in O(n) after sorting.
//
// A profile whose smallest level is +inf has no finite anchor for r_1; the
// limit is plain averaging, so that case returns uniform weights with zero
// noise scale and f = 1/(4n).
WeightAllocation compute_weights(const SortedProfile& sp);

// Full two-term objective. On the recursion's domain (r_1 = eps_1, r_i/eps_i
// nonincreasing) the sup-norm term equals 1 and this reduces to
// (||r||_2^2 + 8) / (4 ||r||_1^2).
ObjectiveValue objective_f(std::span<const double> r,
                           std::span<const double> eps);

// min(f, 1/4): the worst-case MSE actually achieved, accounting for the
// release-zero fallback.
double upper_bound_mse(const WeightAllocation& alloc);

// Privacy level beyond which the next user saturates:
// (||prefix||_2^2 + 8) / ||prefix||_1.
double saturation_threshold(std::span<const double> prefix_r);

// Run-length encoded profile: (level, count) pairs, any order.
struct GroupedProfile {
  std::vector<std::pair<double, std::uint64_t>> groups;
};

// Allocation for a grouped profile, O(k) in the number of distinct levels.
// Within a group all users share one scaled weight: an equal-eps group
// either saturates at its first member or not at all.
struct GroupedAllocation {
  struct Group {
    double eps;
    std::uint64_t count;
    double r;
  };
  std::vector<Group> groups;  // ascending eps
  double eta = 0.0;
  double f_value = 0.0;
  std::optional<std::uint64_t> sat_index;  // 1-based over expanded users
  bool trivial_fallback = false;

  std::uint64_t total_users() const;
};

GroupedAllocation compute_weights_grouped(const GroupedProfile& gp);

}  // namespace hetdp

#endif  // HETDP_WEIGHTS_HPP
