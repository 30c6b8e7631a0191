#ifndef HETDP_TYPES_HPP
#define HETDP_TYPES_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hetdp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyProfile : Error {
  EmptyProfile() : Error("privacy profile is empty") {}
};

struct NonPositiveEpsilon : Error {
  std::size_t index;
  explicit NonPositiveEpsilon(std::size_t i)
      : Error("privacy level at index " + std::to_string(i) +
              " must be strictly positive"),
        index(i) {}
};

struct DataOutOfRange : Error {
  std::size_t index;
  explicit DataOutOfRange(std::size_t i)
      : Error("sample at index " + std::to_string(i) +
              " lies outside [-0.5, 0.5]"),
        index(i) {}
};

struct LengthMismatch : Error {
  LengthMismatch(std::size_t expected, std::size_t got)
      : Error("expected " + std::to_string(expected) + " values, got " +
              std::to_string(got)) {}
};

struct ZeroWeights : Error {
  ZeroWeights() : Error("weight vector sums to zero") {}
};

struct NegativeScale : Error {
  NegativeScale() : Error("Laplace scale must be nonnegative") {}
};

struct InfiniteEpsilonUnsupported : Error {
  explicit InfiniteEpsilonUnsupported(const std::string& what) : Error(what) {}
};

struct InvalidDistribution : Error {
  explicit InvalidDistribution(const std::string& what) : Error(what) {}
};

// Per-user privacy demands, in the order users submitted them. A level of
// +inf marks a public datapoint (no privacy requirement).
struct PrivacyProfile {
  std::vector<double> eps;

  std::size_t n() const { return eps.size(); }
};

// Ascending view of a profile. perm[k] is the original index of the k-th
// smallest level; ties keep submission order, so the mapping is
// deterministic. The original ordering is kept alongside so per-user output
// can be produced without scattering through perm.
struct SortedProfile {
  std::vector<double> eps_sorted;
  std::vector<std::size_t> perm;
  std::vector<double> eps_orig;

  std::size_t n() const { return eps_sorted.size(); }
};

// One bounded sample per user, indexed like the profile it pairs with.
struct Dataset {
  std::vector<double> x;
};

// Result of the scaled-weight recursion. Everything indexed in ascending-eps
// order except `granted`, which is per original user index.
struct WeightAllocation {
  std::vector<double> r;   // scaled weights, nondecreasing, r[i] <= eps[i]
  std::vector<double> w;   // r / ||r||_1, sums to 1
  double eta = 0.0;        // Laplace scale, 1 / ||r||_1
  std::optional<std::size_t> sat_index;  // first saturated position (1-based)
  std::vector<double> granted;  // privacy actually granted, original order
  double f_value = 0.0;         // worst-case MSE of the affine estimator
  bool trivial_fallback = false;  // f_value > 1/4: release 0 instead

  // carried along so estimators and audits need no second lookup
  std::vector<double> eps_sorted;
  std::vector<std::size_t> perm;

  std::size_t n() const { return r.size(); }
};

// Rejects empty input and any level that is not strictly positive
// (+inf is fine, NaN and nonpositive values are not).
PrivacyProfile validate_profile(const std::vector<double>& raw);

// Stable ascending sort; sorting an already sorted profile yields the
// identity permutation.
SortedProfile sort_profile(const PrivacyProfile& p);

// Rejects samples outside [-0.5, 0.5] (and NaN).
Dataset validate_dataset(const std::vector<double>& raw);

// Scatters sorted-order values back to original user order.
std::vector<double> unsort(const std::vector<double>& values,
                           const std::vector<std::size_t>& perm);

}  // namespace hetdp

#endif  // HETDP_TYPES_HPP
