#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "giantwg/dde.hpp"
#include "giantwg/emission.hpp"
#include "giantwg/markovian.hpp"
#include "giantwg/sweep.hpp"
#include "helpers.hpp"

using namespace giantwg;
using testutil::kPi;
using testutil::leg;

namespace {

GiantAtomConfig unequal_pair() { return GiantAtomConfig(2 * kPi, 1.0 / 6.0, 0.0, {leg(0, 3, 0), leg(0.5, 1, 0)}); }

}  // namespace

TEST_SUITE("emission") {
  TEST_CASE("chirality definition") {
    CHECK(!chirality(0.0, 0.0).has_value());
    CHECK(!chirality(4e-13, 5e-13).has_value());
    CHECK(*chirality(0.3, 0.1) == doctest::Approx(0.5));
    CHECK(*chirality(0.0, 0.2) == -1.0);
  }

  TEST_CASE("field is causal and matches a single leg") {
    const GiantAtomConfig c(10.0, 0.5, 0.0, {leg(0, 1, 0)});
    const Trajectory tr = integrate_emission(c, delay_kernel(c), 0.002, 6.0);
    CHECK(field_at(tr, c, 3.0, 2.9) == cplx(0.0, 0.0));
    CHECK(std::norm(field_at(tr, c, -2.0, 5.0)) == doctest::Approx(0.5 * std::exp(-3.0)).epsilon(1e-7));
  }

  TEST_CASE("single leg conserves probability") {
    const GiantAtomConfig c(10.0, 0.5, 0.0, {leg(0, 1, 0)});
    const Trajectory tr = integrate_emission(c, delay_kernel(c), 0.002, 6.0);
    CHECK(probability_balance(tr, c, 0.0).value == 1.0);
    for (double t : {1.0, 3.0, 6.0}) {
      const BalanceResult b = probability_balance(tr, c, t);
      CHECK(std::abs(b.value - 1.0) < 1e-6);
      CHECK(!b.lossy);
    }
    CHECK_THROWS_AS(probability_balance(tr, c, 7.0), std::out_of_range);
    CHECK_THROWS_AS(probability_balance(tr, c, 1.0001), std::invalid_argument);
  }

  TEST_CASE("lossy balance is flagged") {
    const GiantAtomConfig c(10.0, 0.5, 0.2, {leg(0, 1, 0)});
    const Trajectory tr = integrate_emission(c, 3.0);
    const BalanceResult b = probability_balance(tr, c, tr.t_max());
    CHECK(b.lossy);
    CHECK(b.value < 1.0);
  }

  TEST_CASE("delayed config conserves probability") {
    const GiantAtomConfig c = unequal_pair();
    const Trajectory tr = integrate_emission(c, 5.0);
    const EmissionReport r = accumulate_directional(tr, c, true);
    REQUIRE(r.balance.size() == r.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) worst = std::max(worst, std::abs(r.balance[k] - 1.0));
    CHECK(worst < 1e-3);
    for (std::size_t k = 1; k < r.size(); ++k) {
      REQUIRE(r.I_left[k] >= r.I_left[k - 1]);
      REQUIRE(r.I_right[k] >= r.I_right[k - 1]);
      if (r.chirality[k]) REQUIRE(std::abs(*r.chirality[k]) <= 1.0 + 1e-9);
    }
  }

  TEST_CASE("mirroring swaps the two directions") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 4; ++i) {
      const GiantAtomConfig c = testutil::random_config(rng, 2, 4);
      const GiantAtomConfig m = mirror_transform(c);
      const DelayKernel k = delay_kernel(c);
      const double dt = default_step(k, 0.0);
      const EmissionReport a = accumulate_directional(integrate_emission(c, k, dt, 3.0), c);
      const EmissionReport b = accumulate_directional(integrate_emission(m, delay_kernel(m), dt, 3.0), m);
      double worst = 0.0;
      for (std::size_t j = 0; j < a.size(); ++j) {
        worst = std::max({worst, std::abs(a.I_left[j] - b.I_right[j]), std::abs(a.I_right[j] - b.I_left[j])});
      }
      CHECK(worst < 1e-10);
    }
  }

  TEST_CASE("mirror-symmetric configs emit without chirality") {
    const GiantAtomConfig c(9.0, 0.4, 0.0, {leg(0, 1, 0.3), leg(0.3, 0.7, 1.9), leg(0.6, 1, 0.3)});
    const Trajectory tr = integrate_emission(c, 4.0);
    for (double t : {0.2, 1.0, 3.7}) {
      CHECK(std::abs(field_at(tr, c, c.leftmost(), t) - field_at(tr, c, c.rightmost(), t)) < 1e-12);
    }
    const EmissionReport r = accumulate_directional(tr, c);
    double worst = 0.0;
    for (const auto& chi : r.chirality) {
      if (chi) worst = std::max(worst, std::abs(*chi));
    }
    CHECK(worst < 1e-10);
  }

  TEST_CASE("long-time oracle") {
    const GiantAtomConfig uniform(5.0, 0.5, 0.0, {leg(0, 1, 0.4), leg(0.3, 1, 0.4)});
    const Trajectory tu = integrate_emission(uniform, 20.0);
    REQUIRE(longtime_difference_oracle(tu, uniform).has_value());
    CHECK(*longtime_difference_oracle(tu, uniform) == 0.0);

    const GiantAtomConfig c = diagram_config(3, 0.01, kPi / 3, kPi / 2);
    const double decay = effective_parameters(3, 1.0, kPi / 3, kPi / 2).decay;
    const Trajectory tr = integrate_emission(c, 9.0 / decay);
    const auto oracle = longtime_difference_oracle(tr, c);
    REQUIRE(oracle.has_value());
    const EmissionReport r = accumulate_directional(tr, c);
    const std::size_t last = r.size() - 1;
    CHECK(std::abs(*oracle - (r.I_left[last] - r.I_right[last])) < 1e-3);

    const GiantAtomConfig a = unequal_pair();
    const Trajectory ta = integrate_emission(a, 40.0);
    REQUIRE(longtime_difference_oracle(ta, a).has_value());
    CHECK(std::abs(*longtime_difference_oracle(ta, a)) < 1e-3);

    const GiantAtomConfig trapped(2 * kPi, 0.5, 0.0, {leg(0, 1, 0), leg(0.5, 1, 0)});
    CHECK(!longtime_difference_oracle(integrate_emission(trapped, 10.0), trapped).has_value());
  }

  TEST_CASE("csv outputs") {
    const GiantAtomConfig c(10.0, 0.5, 0.0, {leg(0, 1, 0)});
    const Trajectory tr = integrate_emission(c, delay_kernel(c), 0.01, 0.02);
    std::ostringstream a;
    write_emission_csv(a, accumulate_directional(tr, c, true));
    CHECK(a.str().rfind("t,IL,IR,C,population,balance\n0,0,0,,1,1\n", 0) == 0);
    std::ostringstream b;
    write_field_csv(b, tr, c, 3, 2, 1.0);
    CHECK(b.str().rfind("x,t,re_phi,im_phi\n-1,0,0,0\n", 0) == 0);
    CHECK_THROWS(write_field_csv(b, tr, c, 1, 2, 1.0));
  }
}
