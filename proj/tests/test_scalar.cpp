#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "pmfde/lemma_fuzz.hpp"
#include "pmfde/scalar_inequalities.hpp"

using namespace pmfde;
using Catch::Matchers::WithinAbs;

TEST_CASE("power gap lower bound formula", "[scalar]") {
  CHECK_THAT(power_gap_lower_bound({1.0, 1.0, 1.0, 0.5}), WithinAbs(0.5, 1e-15));
  CHECK_THAT(power_gap_lower_bound({2.0, 1.0, 2.0, 1.0}), WithinAbs(0.25, 1e-15));
}

TEST_CASE("power gap bound holds on random admissible tuples", "[scalar]") {
  const FuzzResult r = fuzz_power_gap(10000, 42);
  CHECK(r.violations == 0);
  CHECK(r.worst_realized >= 1.0 - 1e-12);
}

TEST_CASE("power difference bound", "[scalar]") {
  CHECK(std::abs(std::pow(2.0, 1.5) - std::pow(2.0, 1.5)) <=
        power_difference_bound(2.0, 1.5, 1.5, 0.1));
  CHECK(power_difference_bound(1.0, 3.0, -2.0, 0.1) >= 0.0);
  const FuzzResult r = fuzz_power_difference(10000, 43);
  CHECK(r.violations == 0);
  CHECK(r.worst_realized <= 1.0);
}

TEST_CASE("monotonicity constant", "[scalar]") {
  for (double a : {0.1, 1.0, 4.0})
    for (double b : {0.0, 0.5, 2.0})
      if (a != b) CHECK_THAT(monotonicity_constant(1.0, a, b), WithinAbs(1.0, 1e-13));
  CHECK_THAT(monotonicity_constant(2.0, 2.0, 0.0), WithinAbs(1.0, 1e-15));
  CHECK(monotonicity_constant(2.0, 1.0, 1.0) == std::numeric_limits<double>::max());

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> uv(0.0, 10.0);
  double inf = std::numeric_limits<double>::max();
  for (int i = 0; i < 100000; ++i) {
    const double a = uv(rng), b = uv(rng);
    if (a == b) continue;
    const double c = monotonicity_constant(2.0, a, b);
    CHECK(c >= 0.0);
    inf = std::min(inf, c);
  }
  CHECK(inf >= 1.0 - 1e-12);  // sharp constant approached in the b = 0 limit
}

TEST_CASE("powers_converge tail test", "[scalar]") {
  std::vector<double> v, e;
  for (int i = 1; i <= 64; ++i) {
    v.push_back(2.0 + 1.0 / i);
    e.push_back(3.0 - 1.0 / i);
  }
  CHECK(powers_converge(v, e, 2.0, 3.0, 1e-2));

  std::vector<double> zeros(64, 0.0), exps(64, 0.7);
  CHECK(powers_converge(zeros, exps, 0.0, 0.7));

  std::vector<double> osc, oe;
  for (int i = 0; i < 64; ++i) {
    osc.push_back(i % 2 ? 3.0 : 1.0);
    oe.push_back(1.0);
  }
  CHECK_FALSE(powers_converge(osc, oe, 2.0, 1.0));

  CHECK_THROWS_AS(powers_converge({1.0}, {1.0, 2.0}, 1.0, 1.0), LengthMismatch);
}

TEST_CASE("full fuzz suites are clean", "[scalar]") {
  CHECK(fuzz_power_gap(100000, 1).violations == 0);
  CHECK(fuzz_monotonicity(100000, 2).violations == 0);
  CHECK(fuzz_power_difference(100000, 3).violations == 0);
}
