#include "hetdp/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hetdp {

PrivacyProfile validate_profile(const std::vector<double>& raw) {
  if (raw.empty()) throw EmptyProfile();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    // NaN fails the comparison and is rejected alongside nonpositive values
    if (!(raw[i] > 0.0)) throw NonPositiveEpsilon(i);
  }
  return PrivacyProfile{raw};
}

SortedProfile sort_profile(const PrivacyProfile& p) {
  SortedProfile sp;
  sp.perm.resize(p.n());
  std::iota(sp.perm.begin(), sp.perm.end(), std::size_t{0});
  std::stable_sort(sp.perm.begin(), sp.perm.end(),
                   [&](std::size_t a, std::size_t b) {
                     return p.eps[a] < p.eps[b];
                   });
  sp.eps_sorted.resize(p.n());
  for (std::size_t k = 0; k < p.n(); ++k) {
    sp.eps_sorted[k] = p.eps[sp.perm[k]];
  }
  sp.eps_orig = p.eps;
  return sp;
}

Dataset validate_dataset(const std::vector<double>& raw) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!(raw[i] >= -0.5 && raw[i] <= 0.5)) throw DataOutOfRange(i);
  }
  return Dataset{raw};
}

std::vector<double> unsort(const std::vector<double>& values,
                           const std::vector<std::size_t>& perm) {
  std::vector<double> out(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    out[perm[k]] = values[k];
  }
  return out;
}

}  // namespace hetdp
