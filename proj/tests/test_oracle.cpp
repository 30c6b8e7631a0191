#include <doctest.h>

#include <cmath>
#include <vector>

#include "hetdp/rng.hpp"
#include "hetdp/weights.hpp"
#include "oracle.hpp"
#include "test_helpers.hpp"

using namespace hetdp;
using hetdp::testing::rel_diff;

namespace {

SortedProfile sorted(std::vector<double> eps) {
  return sort_profile(validate_profile(std::move(eps)));
}

}  // namespace

TEST_CASE("oracle preconditions") {
  CHECK_THROWS_AS(oracle::simplex_minimize(sorted(std::vector<double>(13, 1.0))),
                  oracle::TooLarge);
  CHECK_THROWS_AS(oracle::simplex_minimize(sorted({1.0, kInfinity})),
                  oracle::NonFinite);
}

TEST_CASE("oracle: the simplex is a point for n=1") {
  const auto res = oracle::simplex_minimize(sorted({0.7}));
  CHECK(res.w_star == std::vector<double>{1.0});
  CHECK(res.converged);
  CHECK(rel_diff(res.f_star, 0.25 + 2.0 / (0.7 * 0.7)) <= 1e-12);
}

TEST_CASE("oracle reproduces the homogeneous closed form") {
  NoiseSource ns(3, 0);
  for (std::size_t n : {2, 3, 5, 8, 12}) {
    const double e = std::exp(ns.uniform(-2.0, 1.0));
    const auto res = oracle::simplex_minimize(sorted(std::vector<double>(n, e)));
    const double nn = static_cast<double>(n);
    const double closed = 1.0 / (4.0 * nn) + 2.0 / (nn * e * (nn * e));
    CHECK(rel_diff(res.f_star, closed) <= 1e-8);
    for (double wi : res.w_star) {
      CHECK(wi == doctest::Approx(1.0 / nn).epsilon(1e-5));
    }
  }
}

TEST_CASE("oracle agrees with the recursion on random small profiles") {
  NoiseSource ns(41, 1);
  for (int iter = 0; iter < 60; ++iter) {
    const std::size_t n = 2 + ns.next_u64() % 7;
    std::vector<double> eps(n);
    for (auto& e : eps) e = std::exp(ns.uniform(-4.0, 2.0));
    const auto sp = sorted(eps);
    const auto alloc = compute_weights(sp);
    const auto res = oracle::simplex_minimize(sp);
    CHECK(std::abs(alloc.f_value - res.f_star) <=
          std::max(1e-6, 1e-6 * res.f_star));

    // the optimizer lands in the claimed domain
    CHECK(oracle::domain_property_check(res.w_star, sp.eps_sorted, 1e-6));

    double sum = 0.0;
    for (double wi : res.w_star) {
      CHECK(wi >= 0.0);
      sum += wi;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("domain_property_check spots increasing ratios") {
  const std::vector<double> w{0.2, 0.8};
  const std::vector<double> e{1.0, 1.0};
  CHECK(!oracle::domain_property_check(w, e));

  NoiseSource ns(9, 2);
  for (int iter = 0; iter < 100; ++iter) {
    const auto sp = sort_profile(testing::random_profile(ns, 60));
    if (std::isinf(sp.eps_sorted.front())) continue;
    const auto alloc = compute_weights(sp);
    CHECK(oracle::domain_property_check(alloc.w, sp.eps_sorted, 1e-12));
  }
}

TEST_CASE("naive_h agrees with itself on corner profiles") {
  {
    const auto [h, p] = oracle::naive_h(sorted(std::vector<double>(10, 100.0)));
    CHECK(h == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(p == 0);
  }
  {
    const auto [h, p] = oracle::naive_h(sorted({kInfinity}));
    CHECK(h == 1.0);
    CHECK(p == 0);
  }
}
