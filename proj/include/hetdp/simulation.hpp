#ifndef HETDP_SIMULATION_HPP
#define HETDP_SIMULATION_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "hetdp/mechanisms.hpp"
#include "hetdp/rng.hpp"
#include "hetdp/types.hpp"

namespace hetdp {

// Data distributions supported by the harness, all supported on [-0.5, 0.5].
struct BetaDist {
  double alpha;
  double beta;
};
struct BernoulliPair {
  double delta;  // +0.5 w.p. (1+delta)/2, else -0.5
};
struct PointMass {
  double c;
};
using Distribution = std::variant<BetaDist, BernoulliPair, PointMass>;

double dist_mean(const Distribution& d);
double dist_variance(const Distribution& d);
std::string dist_name(const Distribution& d);
// Accepts "beta(a,b)", "bernoulli(delta)", "point(c)".
Distribution parse_distribution(const std::string& text);

enum class EpsRegime { low, high };
const char* regime_name(EpsRegime r);

// eps_i = exp(u_i) with u_i i.i.d. uniform on [-3,-2] (low) or [-4,2]
// (high), natural log. Same seed, same profile.
PrivacyProfile gen_eps(EpsRegime regime, std::size_t n, std::uint64_t seed);

Dataset sample_data(const Distribution& dist, std::size_t n, NoiseSource& ns);

struct SimulationConfig {
  PrivacyProfile profile;
  Distribution dist = BetaDist{2.0, 3.0};
  std::size_t trials = 1;
  std::vector<Method> methods;
  std::uint64_t seed = 0;
  bool clip = false;
};

struct MethodStats {
  Method method;
  double mse;
  double ln_mse;
  double mc_stderr;  // sample std of squared errors / sqrt(trials)
};

struct SimulationReport {
  std::vector<MethodStats> per_method;
  double true_mean;
  double predicted_adpm_mse;  // Var(P) ||w||_2^2 + 2 eta^2
  double worst_case_bound;    // min(f, 1/4)
  std::size_t trials;
};

// Per trial: one fresh dataset, every requested method scored on it against
// the true mean. Trial t draws its data from stream 2t and every method
// from its own copy of stream 2t+1, so estimators that coincide produce
// identical releases and comparisons between methods share randomness.
// Squared errors land in per-trial slots and are reduced sequentially, so
// the report is byte-identical for any thread count.
SimulationReport run_mse(const SimulationConfig& cfg, unsigned threads = 0);

struct TraceRow {
  std::size_t index;  // 1-based position in sorted order
  double eps;
  double r;
};

// Plot-ready (i, eps_i, r_i) rows: r tracks eps until saturation, then
// stays flat.
std::vector<TraceRow> trace_r(const SortedProfile& sp);

struct ScatterPoint {
  double ln_f;
  double ln_h;
};

// Random never-saturating sequences: n uniform in [2, 200], ln eps_1 uniform
// in [-4, 2], then eps_{i+1} drawn uniformly from [eps_i, threshold of the
// prefix). Unsaturated means r = eps, so f comes straight from the running
// sums.
std::vector<ScatterPoint> scatter_fh(std::size_t num_sequences,
                                     std::uint64_t seed);

}  // namespace hetdp

#endif  // HETDP_SIMULATION_HPP
