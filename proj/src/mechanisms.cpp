#include "hetdp/mechanisms.hpp"

#include <algorithm>
#include <cmath>

#include "hetdp/stable_sum.hpp"

namespace hetdp {

const char* method_name(Method m) {
  switch (m) {
    case Method::adpm: return "adpm";
    case Method::uni: return "uni";
    case Method::sm: return "sm";
    case Method::ldpe: return "ldpe";
    case Method::prop: return "prop";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "adpm") return Method::adpm;
  if (name == "uni") return Method::uni;
  if (name == "sm") return Method::sm;
  if (name == "ldpe") return Method::ldpe;
  if (name == "prop") return Method::prop;
  throw Error("unknown method: " + name);
}

double laplace_sample(double scale, NoiseSource& ns) {
  if (scale < 0.0 || std::isnan(scale)) throw NegativeScale();
  if (scale == 0.0) return 0.0;
  const double u = ns.uniform_open() - 0.5;  // (-1/2, 1/2), never 0
  return -scale * std::copysign(std::log1p(-2.0 * std::abs(u)), u);
}

namespace {

void check_length(std::size_t expected, const Dataset& data) {
  if (data.x.size() != expected) throw LengthMismatch(expected, data.x.size());
}

// subsampling probability (e^eps - 1) / (e^t - 1), stable for large t
double subsample_prob(double eps, double t) {
  if (t <= 700.0) return std::expm1(eps) / std::expm1(t);
  return std::exp(eps - t) * (-std::expm1(-eps)) / (-std::expm1(-t));
}

}  // namespace

Estimate adpm_estimate(const WeightAllocation& alloc, const Dataset& data,
                       NoiseSource ns, bool clip) {
  check_length(alloc.n(), data);
  if (alloc.trivial_fallback) {
    return Estimate{0.0, Method::adpm, {0.0}, ns.seed()};
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < alloc.n(); ++i) {
    dot += alloc.w[i] * data.x[alloc.perm[i]];
  }
  double value = dot + laplace_sample(alloc.eta, ns);
  if (clip) value = std::clamp(value, -0.5, 0.5);
  return Estimate{value, Method::adpm, {alloc.eta}, ns.seed()};
}

Estimate uni_estimate(const SortedProfile& sp, const Dataset& data,
                      NoiseSource ns) {
  const std::size_t n = sp.n();
  if (n == 0) throw EmptyProfile();
  check_length(n, data);
  double sum = 0.0;
  for (double v : data.x) sum += v;
  const double mean = sum / static_cast<double>(n);
  const double eps1 = sp.eps_sorted.front();
  // an all-infinite profile needs no noise at all
  const double scale =
      std::isinf(eps1) ? 0.0 : 1.0 / (static_cast<double>(n) * eps1);
  const double value = mean + laplace_sample(scale, ns);
  return Estimate{value, Method::uni, {scale}, ns.seed()};
}

Estimate sm_estimate(const SortedProfile& sp, const Dataset& data,
                     NoiseSource ns) {
  const std::size_t n = sp.n();
  if (n == 0) throw EmptyProfile();
  check_length(n, data);
  const double t = sp.eps_sorted.back();
  if (std::isinf(t)) {
    throw InfiniteEpsilonUnsupported(
        "sm: sampling probabilities are undefined for an infinite level");
  }
  double sum = 0.0;
  std::size_t kept = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = subsample_prob(sp.eps_sorted[i], t);
    if (ns.uniform01() < p) {
      sum += data.x[sp.perm[i]];
      ++kept;
    }
  }
  if (kept == 0) {
    return Estimate{0.0, Method::sm, {0.0}, ns.seed()};
  }
  const double scale = 1.0 / (static_cast<double>(kept) * t);
  const double value = sum / static_cast<double>(kept) + laplace_sample(scale, ns);
  return Estimate{value, Method::sm, {scale}, ns.seed()};
}

Estimate ldpe_estimate(const SortedProfile& sp, const Dataset& data,
                       NoiseSource ns) {
  const std::size_t n = sp.n();
  if (n == 0) throw EmptyProfile();
  check_length(n, data);
  std::vector<double> scales_sorted(n);
  double combo = 0.0;
  double total = 0.0;
  // first pass for the normalizer of the inverse-variance weights
  std::vector<double> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double e = sp.eps_sorted[i];
    const double noise_var = std::isinf(e) ? 0.0 : 2.0 / (e * e);
    raw[i] = 1.0 / (0.25 + noise_var);
    total += raw[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double e = sp.eps_sorted[i];
    const double scale = std::isinf(e) ? 0.0 : 1.0 / e;
    scales_sorted[i] = scale;
    const double noisy = data.x[sp.perm[i]] + laplace_sample(scale, ns);
    combo += (raw[i] / total) * noisy;
  }
  return Estimate{combo, Method::ldpe, unsort(scales_sorted, sp.perm),
                  ns.seed()};
}

Estimate prop_estimate(const SortedProfile& sp, const Dataset& data,
                       NoiseSource ns) {
  const std::size_t n = sp.n();
  if (n == 0) throw EmptyProfile();
  check_length(n, data);
  std::size_t infinite = 0;
  for (double e : sp.eps_sorted) {
    if (std::isinf(e)) ++infinite;
  }
  if (infinite > 1) {
    throw InfiniteEpsilonUnsupported(
        "prop: proportional weights are undefined with multiple infinite levels");
  }
  if (infinite == 1) {
    // all weight on the single public point, no noise needed
    const double value = data.x[sp.perm[n - 1]];
    return Estimate{value, Method::prop, {0.0}, ns.seed()};
  }
  // same accumulation as the weight recursion, so an unsaturated profile
  // yields bit-identical weights (and releases) to the optimal estimator
  CompensatedSum acc;
  for (double e : sp.eps_sorted) acc.add(e);
  const double l1 = acc.value();
  double dot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dot += (sp.eps_sorted[i] / l1) * data.x[sp.perm[i]];
  }
  const double scale = 1.0 / l1;
  const double value = dot + laplace_sample(scale, ns);
  return Estimate{value, Method::prop, {scale}, ns.seed()};
}

std::vector<double> privacy_audit(const WeightAllocation& alloc) {
  for (std::size_t i = 0; i < alloc.n(); ++i) {
    if (!(alloc.r[i] <= alloc.eps_sorted[i])) {
      throw Error("privacy audit failed: user granted " +
                  std::to_string(alloc.r[i]) + " but demanded " +
                  std::to_string(alloc.eps_sorted[i]));
    }
  }
  return alloc.granted;
}

}  // namespace hetdp
