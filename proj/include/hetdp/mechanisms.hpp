#ifndef HETDP_MECHANISMS_HPP
#define HETDP_MECHANISMS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hetdp/rng.hpp"
#include "hetdp/types.hpp"

namespace hetdp {

enum class Method { adpm, uni, sm, ldpe, prop };

const char* method_name(Method m);
Method method_from_name(const std::string& name);

// One released value. eta_used lists every Laplace scale applied (a single
// entry for the central mechanisms, one per user for the local one).
struct Estimate {
  double value;
  Method method;
  std::vector<double> eta_used;
  std::uint64_t seed;
};

// Inverse-CDF Laplace draw: -scale * sign(u) * ln(1 - 2|u|) with u uniform
// on (-1/2, 1/2). scale == 0 is the degenerate point mass at 0.
double laplace_sample(double scale, NoiseSource& ns);

// <w, x> + Laplace(eta), or exactly 0 when the allocation flags the trivial
// fallback. Data arrives in original user order and is permuted internally.
// Clipping projects the release onto [-0.5, 0.5]; it is plain
// post-processing, so the privacy guarantee is unchanged.
Estimate adpm_estimate(const WeightAllocation& alloc, const Dataset& data,
                       NoiseSource ns, bool clip = false);

// Sample mean + Laplace(1/(n eps_1)): everyone is held to the strictest
// demand. An all-infinite profile degenerates to the plain mean.
Estimate uni_estimate(const SortedProfile& sp, const Dataset& data,
                      NoiseSource ns);

// Bernoulli subsample with p_i = (e^{eps_i}-1)/(e^t-1), t = max eps, then
// subsample mean + Laplace(1/(N_s t)). An empty subsample releases 0.
Estimate sm_estimate(const SortedProfile& sp, const Dataset& data,
                     NoiseSource ns);

// Local model: each user submits x_i + Laplace(1/eps_i); the server combines
// with inverse-variance weights v_i proportional to 1/(1/4 + 2/eps_i^2),
// taking 1/4 as the worst-case data variance.
Estimate ldpe_estimate(const SortedProfile& sp, const Dataset& data,
                       NoiseSource ns);

// Weights proportional to eps with Laplace(1/||eps||_1) noise. A single
// +inf entry degenerates to releasing that user's value; more than one is
// unsupported.
Estimate prop_estimate(const SortedProfile& sp, const Dataset& data,
                       NoiseSource ns);

// Per-user granted privacy g_i = r_i in original order; throws if any user
// would receive less privacy than they demanded.
std::vector<double> privacy_audit(const WeightAllocation& alloc);

}  // namespace hetdp

#endif  // HETDP_MECHANISMS_HPP
