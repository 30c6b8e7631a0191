#include "hetdp/weights.hpp"

#include <algorithm>
#include <cmath>

#include "hetdp/stable_sum.hpp"

namespace hetdp {

namespace {

struct RecursionResult {
  std::optional<std::size_t> sat_index;  // 1-based
  double sat_value = 0.0;                // the constant filling the tail
  double l1;
  double l2sq;
};

RecursionResult run_recursion(const std::vector<double>& eps,
                              std::vector<double>& r) {
  const std::size_t n = eps.size();
  CompensatedSum l1, l2;
  r[0] = eps[0];
  l1.add(r[0]);
  l2.add(r[0] * r[0]);

  RecursionResult res;
  std::size_t k = 1;
  for (; k < n; ++k) {
    const double threshold = (l2.value() + 8.0) / l1.value();
    if (eps[k] >= threshold) {  // ties saturate
      res.sat_index = k + 1;
      res.sat_value = threshold;
      // All remaining weights equal this threshold (the ratio is a fixed
      // point once the branch is taken), so fill the constant.
      for (std::size_t j = k; j < n; ++j) {
        r[j] = threshold;
        l1.add(threshold);
        l2.add(threshold * threshold);
      }
      break;
    }
    r[k] = eps[k];
    l1.add(r[k]);
    l2.add(r[k] * r[k]);
  }
  res.l1 = l1.value();
  res.l2sq = l2.value();
  return res;
}

}  // namespace

WeightAllocation compute_weights(const SortedProfile& sp) {
  const std::size_t n = sp.n();
  if (n == 0) throw EmptyProfile();

  WeightAllocation out;
  out.eps_sorted = sp.eps_sorted;
  out.perm = sp.perm;
  out.r.resize(n);

  if (std::isinf(sp.eps_sorted.front())) {
    // Every user is public: the eps -> inf limit is the plain sample mean.
    const double nn = static_cast<double>(n);
    std::fill(out.r.begin(), out.r.end(), kInfinity);
    out.w.assign(n, 1.0 / nn);
    out.eta = 0.0;
    out.f_value = 1.0 / (4.0 * nn);
    out.sat_index = std::nullopt;
    out.trivial_fallback = out.f_value > 0.25;
    out.granted = unsort(out.r, sp.perm);
    return out;
  }

  const RecursionResult res = run_recursion(sp.eps_sorted, out.r);

  out.sat_index = res.sat_index;
  out.f_value = (res.l2sq + 8.0) / (4.0 * res.l1 * res.l1);
  out.trivial_fallback = out.f_value > 0.25;
  out.eta = 1.0 / res.l1;
  out.w.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.w[i] = out.r[i] / res.l1;
  }
  out.granted = unsort(out.r, sp.perm);
  return out;
}

ObjectiveValue objective_f(std::span<const double> r,
                           std::span<const double> eps) {
  if (r.size() != eps.size()) throw LengthMismatch(eps.size(), r.size());
  double l1 = 0.0;
  double l2 = 0.0;
  double sup = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    l1 += r[i];
    l2 += r[i] * r[i];
    const double q = std::isinf(eps[i]) ? 0.0 : r[i] / eps[i];
    sup = std::max(sup, q);
  }
  if (!(l1 > 0.0)) throw ZeroWeights();
  const double f = l2 / (4.0 * l1 * l1) + 2.0 * sup * sup / (l1 * l1);
  return ObjectiveValue{f, l1, l2};
}

double upper_bound_mse(const WeightAllocation& alloc) {
  return std::min(alloc.f_value, 0.25);
}

double saturation_threshold(std::span<const double> prefix_r) {
  double l1 = 0.0;
  double l2 = 0.0;
  for (double v : prefix_r) {
    l1 += v;
    l2 += v * v;
  }
  if (!(l1 > 0.0)) throw ZeroWeights();
  return (l2 + 8.0) / l1;
}

std::uint64_t GroupedAllocation::total_users() const {
  std::uint64_t total = 0;
  for (const auto& g : groups) total += g.count;
  return total;
}

GroupedAllocation compute_weights_grouped(const GroupedProfile& gp) {
  if (gp.groups.empty()) throw EmptyProfile();

  std::vector<std::pair<double, std::uint64_t>> groups = gp.groups;
  std::stable_sort(groups.begin(), groups.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  GroupedAllocation out;
  std::uint64_t users_before = 0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto [e, c] = groups[gi];
    if (c == 0) continue;
    if (!(e > 0.0)) throw NonPositiveEpsilon(static_cast<std::size_t>(users_before));
    out.groups.push_back({e, c, 0.0});
    users_before += c;
  }
  if (out.groups.empty()) throw EmptyProfile();

  const std::uint64_t total = out.total_users();
  const double nn = static_cast<double>(total);

  if (std::isinf(out.groups.front().eps)) {
    for (auto& g : out.groups) g.r = kInfinity;
    out.eta = 0.0;
    out.f_value = 1.0 / (4.0 * nn);
    out.trivial_fallback = out.f_value > 0.25;
    return out;
  }

  // The first group never saturates internally: its threshold eps + 8/L1
  // stays above eps. Each later group either saturates at its first member
  // or keeps r = eps throughout, because the comparison eps >= (L2+8)/L1 is
  // invariant while members with r = eps accumulate.
  double l1 = 0.0;
  double l2 = 0.0;
  double sat_value = 0.0;
  bool saturated = false;
  std::uint64_t seen = 0;
  for (auto& g : out.groups) {
    const double cnt = static_cast<double>(g.count);
    if (saturated) {
      g.r = sat_value;
    } else if (seen > 0 && g.eps >= (l2 + 8.0) / l1) {
      saturated = true;
      sat_value = (l2 + 8.0) / l1;
      out.sat_index = seen + 1;
      g.r = sat_value;
    } else {
      g.r = g.eps;
    }
    l1 += cnt * g.r;
    l2 += cnt * g.r * g.r;
    seen += g.count;
  }

  out.f_value = (l2 + 8.0) / (4.0 * l1 * l1);
  out.trivial_fallback = out.f_value > 0.25;
  out.eta = 1.0 / l1;
  return out;
}

}  // namespace hetdp
