#include <doctest.h>

#include <cmath>
#include <random>

#include "giantwg/config.hpp"
#include "helpers.hpp"

using namespace giantwg;
using testutil::kPi;
using testutil::leg;

TEST_SUITE("config") {
  TEST_CASE("minimal single-leg config") {
    RawConfig raw;
    raw.omega = 10.0;
    raw.gamma_scale = 0.5;
    raw.gamma_e = 0.0;
    raw.legs.push_back({0.0, 1.0, 0.0, std::nullopt});
    const GiantAtomConfig c = build_config(raw);
    CHECK(c.size() == 1);
    CHECK(c.omega() == 10.0);
    CHECK(c.velocity() == 1.0);
  }

  TEST_CASE("validation errors") {
    CHECK_THROWS_AS(GiantAtomConfig(1.0, 1.0, 0.0, {leg(0, 1, 0), leg(0, 1, 0)}), ConfigError);
    CHECK_THROWS_AS(GiantAtomConfig(1.0, 1.0, 0.0, {leg(0, -1, 0)}), ConfigError);
    CHECK_THROWS_AS(GiantAtomConfig(1.0, 1.0, -0.1, {leg(0, 1, 0)}), ConfigError);
    CHECK_THROWS_AS(GiantAtomConfig(1.0, 1.0, 0.0, {}), ConfigError);
    CHECK_THROWS_AS(GiantAtomConfig(0.0, 1.0, 0.0, {leg(0, 1, 0)}), ConfigError);
    CHECK_THROWS_AS(GiantAtomConfig(1.0, 0.0, 0.0, {leg(0, 1, 0)}), ConfigError);

    RawConfig raw;
    raw.omega = 1.0;
    raw.gamma_scale = 1.0;
    CHECK_THROWS_AS(build_config(raw), ConfigError);
    raw.gamma_e = 0.0;
    CHECK_THROWS_AS(build_config(raw), ConfigError);
    raw.legs.push_back({0.0, 1.0, std::nullopt, std::nullopt});
    CHECK_THROWS_AS(build_config(raw), ConfigError);
    raw.legs[0].phase = 0.1;
    raw.legs[0].length = 0.1;
    CHECK_THROWS_AS(build_config(raw), ConfigError);
  }

  TEST_CASE("legs are sorted by position") {
    const GiantAtomConfig c(1.0, 1.0, 0.0, {leg(2, 1, 0.2), leg(0, 1, 0.0), leg(1, 1, 0.1)});
    CHECK(c.legs()[0].position == 0.0);
    CHECK(c.legs()[1].coupling_phase == 0.1);
    CHECK(c.leftmost() == 0.0);
    CHECK(c.rightmost() == 2.0);
  }

  TEST_CASE("passive phases") {
    CHECK(passive_phases(std::vector<double>{0.0}, 5.0) == std::vector<double>{0.0});
    const auto p = passive_phases(std::vector<double>{1.0, 2.0}, kPi);
    CHECK(p[0] == doctest::Approx(kPi));
    CHECK(p[1] == doctest::Approx(2.0 * kPi));
    CHECK_THROWS_AS(passive_phases(std::vector<double>{-1.0}, 1.0), ConfigError);

    const double omega = 3.0;
    const double dl = 0.2;
    RawConfig raw;
    raw.omega = omega;
    raw.gamma_scale = 0.5;
    raw.gamma_e = 0.0;
    for (int m = 0; m < 3; ++m) raw.legs.push_back({m * 1.0, 1.0, std::nullopt, m * dl});
    const GiantAtomConfig c = build_config(raw);
    for (int m = 0; m < 3; ++m) {
      CHECK(c.legs()[m].coupling_phase == doctest::Approx(m * omega * dl).epsilon(1e-15));
      CHECK(c.legs()[m].leg_length.value() == doctest::Approx(m * dl));
    }
  }

  TEST_CASE("mirror transform") {
    const GiantAtomConfig c(2.0, 1.0, 0.0, {leg(0, 1, 0.1), leg(1, 2, 0.2), leg(3, 3, 0.3)});
    const GiantAtomConfig m = mirror_transform(c);
    REQUIRE(m.size() == 3);
    CHECK(m.legs()[0].position == 0.0);
    CHECK(m.legs()[0].coupling_magnitude == 3.0);
    CHECK(m.legs()[1].position == 2.0);
    CHECK(m.legs()[1].coupling_magnitude == 2.0);
    CHECK(m.legs()[2].position == 3.0);
    CHECK(m.legs()[2].coupling_phase == 0.1);
    CHECK(mirror_transform(m) == c);
    CHECK(m.omega() == c.omega());

    const GiantAtomConfig sym(2.0, 1.0, 0.0, {leg(0, 1, 0.4), leg(1, 2, 0.1), leg(2, 1, 0.4)});
    CHECK(mirror_transform(sym) == sym);
  }

  TEST_CASE("gauge shift and time reversal") {
    const GiantAtomConfig c(2.0, 1.0, 0.0, {leg(0, 1, 0.3), leg(1, 1, 0.7)});
    const GiantAtomConfig g = gauge_shift(c, -0.3);
    CHECK(g.legs()[0].coupling_phase == 0.0);
    CHECK(g.legs()[1].coupling_phase == doctest::Approx(0.4));
    CHECK(gauge_shift(c, 0.0) == c);

    const GiantAtomConfig uniform(2.0, 1.0, 0.0, {leg(0, 1, 1.1), leg(1, 2, 1.1), leg(2, 1, 1.1)});
    for (const Leg& l : gauge_shift(uniform, -1.1).legs()) CHECK(l.coupling().imag() == 0.0);

    const GiantAtomConfig tr = time_reverse(GiantAtomConfig(2.0, 1.0, 0.0, {leg(0, 1, 0), leg(1, 1, kPi / 4)}));
    CHECK(tr.legs()[1].coupling_phase == doctest::Approx(-kPi / 4));
    const GiantAtomConfig real(2.0, 1.0, 0.0, {leg(0, 1, 0), leg(1, 2, 0)});
    CHECK(time_reverse(real) == real);
  }

  TEST_CASE("transform involutions on random configs") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
      const GiantAtomConfig c = testutil::random_config(rng, 1, 5);
      CHECK(time_reverse(time_reverse(c)) == c);
      const GiantAtomConfig mm = mirror_transform(mirror_transform(c));
      for (std::size_t m = 0; m < c.size(); ++m) {
        CHECK(mm.legs()[m].position == doctest::Approx(c.legs()[m].position).epsilon(1e-14));
        CHECK(mm.legs()[m].coupling_phase == c.legs()[m].coupling_phase);
      }
      const GiantAtomConfig gg = gauge_shift(gauge_shift(c, 0.77), -0.77);
      for (std::size_t m = 0; m < c.size(); ++m) {
        CHECK(gg.legs()[m].coupling_phase == doctest::Approx(c.legs()[m].coupling_phase).epsilon(1e-15));
      }
    }
  }

  TEST_CASE("delay kernel examples") {
    const GiantAtomConfig single(1.0, 0.5, 0.0, {leg(0, 2.0, 0.3)});
    const DelayKernel k1 = delay_kernel(single);
    CHECK(k1.delays == std::vector<double>{0.0});
    CHECK(k1.weights[0] == doctest::Approx(0.5 * 4.0));

    const double gamma_scale = 0.5;
    const double c = 1.0;
    const double gamma = 2.0 * gamma_scale * c * c;
    const double d = 0.3;
    const double dth = 0.9;
    const GiantAtomConfig three(1.0, gamma_scale, 0.0, {leg(0, c, 0), leg(d, c, dth), leg(2 * d, c, 2 * dth)});
    const DelayKernel k3 = delay_kernel(three);
    REQUIRE(k3.size() == 3);
    CHECK(k3.delays[1] == doctest::Approx(d));
    CHECK(k3.delays[2] == doctest::Approx(2 * d));
    CHECK(k3.weights[0] == doctest::Approx(1.5 * gamma));
    CHECK(k3.weights[1] == doctest::Approx(2.0 * gamma * std::cos(dth)));
    CHECK(k3.weights[2] == doctest::Approx(gamma * std::cos(2 * dth)));

    const GiantAtomConfig two(1.0, 0.7, 0.0, {leg(0, 1.3, 0.2), leg(0.4, 0.6, 1.5)});
    const DelayKernel k2 = delay_kernel(two);
    CHECK(k2.weights[1] == doctest::Approx(2 * 0.7 * 1.3 * 0.6 * std::cos(0.2 - 1.5)));
  }

  TEST_CASE("coincident delays merge") {
    // Spacings 1 and 1 give the delay 1 twice.
    const GiantAtomConfig c(1.0, 1.0, 0.0, {leg(0, 1, 0), leg(0.1 + 0.9, 1, 0), leg(2, 1, 0)});
    const DelayKernel k = delay_kernel(c);
    CHECK(k.size() == 3);
    CHECK(k.weights[1] == doctest::Approx(4.0));
  }

  TEST_CASE("kernel invariants on random configs") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
      const GiantAtomConfig c = testutil::random_config(rng, 1, 5);
      const DelayKernel k = delay_kernel(c);
      double norm = 0.0;
      for (const Leg& l : c.legs()) norm += l.coupling_magnitude * l.coupling_magnitude;
      CHECK(k.delays.front() == 0.0);
      CHECK(k.local_rate() == doctest::Approx(c.gamma_scale() * norm));
      for (std::size_t n = 1; n < k.size(); ++n) CHECK(k.delays[n] > k.delays[n - 1]);
      CHECK(approx_equal(delay_kernel(gauge_shift(c, 1.234)), k, 1e-12));
      CHECK(approx_equal(delay_kernel(mirror_transform(c)), k, 1e-12));
    }
  }
}
