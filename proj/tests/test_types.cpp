#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "hetdp/io.hpp"
#include "hetdp/types.hpp"
#include "test_helpers.hpp"

using namespace hetdp;

TEST_CASE("validate_profile accepts well-formed input") {
  const auto p = validate_profile({0.1, 0.5});
  CHECK(p.n() == 2);
  const auto q = validate_profile({0.1, kInfinity});
  CHECK(std::isinf(q.eps[1]));
}

TEST_CASE("validate_profile rejects bad input") {
  CHECK_THROWS_AS(validate_profile({}), EmptyProfile);
  try {
    validate_profile({0.1, -1.0});
    FAIL("expected NonPositiveEpsilon");
  } catch (const NonPositiveEpsilon& e) {
    CHECK(e.index == 1);
  }
  CHECK_THROWS_AS(validate_profile({0.0}), NonPositiveEpsilon);
  CHECK_THROWS_AS(validate_profile({std::nan("")}), NonPositiveEpsilon);
}

TEST_CASE("sort_profile is stable and invertible") {
  const auto sp = sort_profile(validate_profile({0.5, 0.1, 0.1}));
  CHECK(sp.eps_sorted == std::vector<double>{0.1, 0.1, 0.5});
  CHECK(sp.perm == std::vector<std::size_t>{1, 2, 0});  // ties keep order

  const auto single = sort_profile(validate_profile({0.1}));
  CHECK(single.perm == std::vector<std::size_t>{0});

  const auto sp2 = sort_profile(validate_profile({2.0, 1.0, 3.0}));
  CHECK(sp2.eps_sorted == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(sp2.perm == std::vector<std::size_t>{1, 0, 2});
}

TEST_CASE("sorting round-trips through the permutation") {
  NoiseSource ns(42, 0);
  for (int iter = 0; iter < 200; ++iter) {
    const auto p = testing::random_profile(ns);
    const auto sp = sort_profile(p);
    const auto back = unsort(sp.eps_sorted, sp.perm);
    CHECK(back == p.eps);
    // sorting already-sorted input is the identity
    const auto sp2 = sort_profile(PrivacyProfile{sp.eps_sorted});
    CHECK(sp2.eps_sorted == sp.eps_sorted);
    for (std::size_t k = 0; k < sp2.n(); ++k) CHECK(sp2.perm[k] == k);
  }
}

TEST_CASE("infinity sorts above every finite level") {
  const auto sp = sort_profile(validate_profile({kInfinity, 0.1, 5.0}));
  CHECK(sp.eps_sorted.back() == kInfinity);
  CHECK(sp.eps_sorted.front() == 0.1);
}

TEST_CASE("validate_dataset enforces the range") {
  CHECK(validate_dataset({-0.5, 0.5, 0.0}).x.size() == 3);
  try {
    validate_dataset({0.0, 0.7});
    FAIL("expected DataOutOfRange");
  } catch (const DataOutOfRange& e) {
    CHECK(e.index == 1);
  }
  CHECK_THROWS_AS(validate_dataset({std::nan("")}), DataOutOfRange);
}

namespace {

std::string write_temp(const char* name, const std::string& body) {
  std::string path = std::string("hetdp_test_") + name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("profile files: csv with header, inf tokens, json arrays") {
  const auto csv = write_temp("p.csv", "eps\n0.1\n\n0.5\n+inf\n");
  auto p = read_profile(csv);
  CHECK(p.eps == std::vector<double>{0.1, 0.5, kInfinity});

  const auto json = write_temp("p.json", " [0.1, 0.5, \"inf\"] ");
  p = read_profile(json);
  CHECK(p.eps == std::vector<double>{0.1, 0.5, kInfinity});

  std::remove(csv.c_str());
  std::remove(json.c_str());
}

TEST_CASE("profile files: malformed lines carry their line number") {
  const auto csv = write_temp("bad.csv", "0.1\nnot-a-number\n");
  try {
    read_profile(csv);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  std::remove(csv.c_str());

  const auto empty = write_temp("empty.csv", "\n\n");
  CHECK_THROWS_AS(read_profile(empty), EmptyProfile);
  std::remove(empty.c_str());
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 0.18, 1.0 / 3.0, 4.5e-4, 1e300}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}
