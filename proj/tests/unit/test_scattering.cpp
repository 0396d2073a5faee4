#include <doctest.h>

#include <cmath>
#include <random>

#include "giantwg/scattering.hpp"
#include "giantwg/spectral.hpp"
#include "helpers.hpp"

using namespace giantwg;
using testutil::kPi;
using testutil::leg;

namespace {

ScatteringPoint left(const GiantAtomConfig& c, double w) { return steady_coefficients(c, {w, 1.0, Incidence::left}); }
ScatteringPoint right(const GiantAtomConfig& c, double w) {
  return steady_coefficients(c, {w, 1.0, Incidence::right});
}

}  // namespace

TEST_SUITE("scattering") {
  TEST_CASE("resonant single leg reflects fully") {
    const GiantAtomConfig c(10.0, 0.5, 0.0, {leg(0, 1, 0)});
    const ScatteringPoint p = left(c, 10.0);
    CHECK(p.reflection == doctest::Approx(1.0));
    CHECK(p.transmission < 1e-15);
    CHECK(p.incidence == Incidence::left);
  }

  TEST_CASE("two legs a quarter wave apart split evenly") {
    const double w = 10.0;
    const GiantAtomConfig c(w, 1.0, 0.0, {leg(0, 1, 0), leg(kPi / 2 / w, 1, 0)});
    const ScatteringPoint p = left(c, w);
    CHECK(p.reflection == doctest::Approx(0.5));
    CHECK(p.transmission == doctest::Approx(0.5));
  }

  TEST_CASE("isolator operating points") {
    const OperatingPoint plus = two_leg_operating_point(kPi / 4, 1.0, +1, 0);
    CHECK(plus.delta == doctest::Approx(1.0));
    CHECK(plus.gamma_e == doctest::Approx(1.0));
    CHECK(plus.phi == doctest::Approx(3 * kPi / 4));
    const OperatingPoint minus = two_leg_operating_point(kPi / 4, 1.0, -1, 0);
    CHECK(minus.delta == doctest::Approx(-1.0));
    CHECK(minus.phi == doctest::Approx(5 * kPi / 4));

    CHECK_THROWS_AS(two_leg_operating_point(0.0, 1.0, 1, 0), ConfigError);
    CHECK_THROWS_AS(two_leg_operating_point(kPi / 2, 1.0, 1, 0), ConfigError);
    CHECK_THROWS_AS(two_leg_operating_point(0.3, 0.0, 1, 0), ConfigError);
    CHECK_THROWS_AS(two_leg_operating_point(0.3, 1.0, 0, 0), ConfigError);
  }

  TEST_CASE("isolators reach full nonreciprocity") {
    const double wd = 10.0;
    for (double theta : {0.2, kPi / 4, 1.3}) {
      for (int sign : {+1, -1}) {
        for (int k : {0, 2}) {
          const OperatingPoint op = two_leg_operating_point(theta, 0.7, sign, k);
          const GiantAtomConfig c = two_leg_isolator(theta, 0.7, op, wd);
          const NonreciprocityReport r = nonreciprocity(c, wd);
          REQUIRE(r.NR.has_value());
          CHECK(*r.NR == doctest::Approx(sign).epsilon(1e-12));
          CHECK((sign > 0 ? left(c, wd) : right(c, wd)).reflection < 1e-12);
        }
      }
    }
    const OperatingPoint op = two_leg_operating_point(kPi / 4, 1.0, +1, 0);
    const GiantAtomConfig c = two_leg_isolator(kPi / 4, 1.0, op, wd);
    CHECK(c.gamma_e() == doctest::Approx(1.0));
    CHECK(c.omega() == doctest::Approx(wd - 1.0));
    const NonreciprocityReport r = nonreciprocity(c, wd);
    CHECK(r.T_left_to_right == doctest::Approx(1.0));
    CHECK(r.T_right_to_left < 1e-12);
  }

  TEST_CASE("invariants on random configs") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const double loss = i % 2 ? 0.0 : u(rng);
      const GiantAtomConfig c = testutil::random_config(rng, 1, 4, loss);
      const double wd = c.omega() + 4.0 * (u(rng) - 0.5);
      if (wd <= 0.0) continue;
      const ScatteringPoint l = left(c, wd);
      const ScatteringPoint r = right(c, wd);
      if (loss == 0.0) {
        REQUIRE(std::abs(l.reflection + l.transmission - 1.0) < 1e-10);
        REQUIRE(std::abs(r.reflection + r.transmission - 1.0) < 1e-10);
        REQUIRE(std::abs(*nonreciprocity(c, wd).NR) < 1e-12);
      } else {
        REQUIRE(l.reflection + l.transmission <= 1.0 + 1e-9);
      }
      REQUIRE(std::abs(l.reflection - left(mirror_transform(c), wd).reflection) < 1e-12);
      const GiantAtomConfig g = gauge_shift(c, 2.0 * kPi * u(rng));
      REQUIRE(std::abs(left(g, wd).reflection - l.reflection) < 1e-12);
      REQUIRE(std::abs(left(g, wd).transmission - l.transmission) < 1e-12);
      REQUIRE(std::abs(right(g, wd).transmission - r.transmission) < 1e-12);
    }
  }

  TEST_CASE("far detuning transmits") {
    const GiantAtomConfig c(10.0, 1.0, 0.0, {leg(0, 1, 0), leg(0.3, 1, 0.5)});
    const ScatteringPoint p = left(c, 10.0 + 1e4);
    CHECK(p.reflection < 1e-6);
    CHECK(p.transmission > 1.0 - 1e-6);
  }

  TEST_CASE("drive validation") {
    const GiantAtomConfig c(10.0, 1.0, 0.0, {leg(0, 1, 0)});
    CHECK_THROWS_AS(steady_coefficients(c, {0.0, 1.0, Incidence::left}), ConfigError);
    CHECK_THROWS_AS(steady_coefficients(c, {1.0, 0.0, Incidence::left}), ConfigError);
    // The amplitude cancels.
    CHECK(steady_coefficients(c, {9.5, 3.0, Incidence::left}).reflection ==
          doctest::Approx(left(c, 9.5).reflection));
  }

  TEST_CASE("transient starts transparent and settles") {
    const GiantAtomConfig c(10.0, 0.5, 0.0, {leg(0, 1, 0)});
    const PoleExpansion p = find_poles(c);
    const DriveSpec drive{10.3, 1.0, Incidence::left};
    const TransientCoefficients start = transient_coefficients(c, drive, p, 0.0);
    CHECK(start.transmission == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(start.reflection < 1e-20);
    const TransientCoefficients late = transient_coefficients(c, drive, p, 40.0);
    const ScatteringPoint steady = steady_coefficients(c, drive);
    CHECK(std::abs(late.reflection - steady.reflection) < 1e-6);
    CHECK(std::abs(late.transmission - steady.transmission) < 1e-6);
    CHECK_THROWS_AS(transient_coefficients(c, drive, p, -1.0), std::invalid_argument);
  }

  TEST_CASE("isolator transient approaches its steady state") {
    const double wd = 2000.0;
    const OperatingPoint op = two_leg_operating_point(kPi / 4, 1.0, +1, 0);
    const GiantAtomConfig c = two_leg_isolator(kPi / 4, 1.0, op, wd);
    const PoleExpansion p = find_poles(c);
    REQUIRE(p.captured_weight >= kMinTransientWeight);
    const TransientCoefficients l0 = transient_coefficients(c, {wd, 1.0, Incidence::left}, p, 0.0);
    CHECK(l0.transmission == doctest::Approx(1.0).epsilon(1e-2));
    const double late = 30.0;
    const TransientCoefficients l = transient_coefficients(c, {wd, 1.0, Incidence::left}, p, late);
    const TransientCoefficients r = transient_coefficients(c, {wd, 1.0, Incidence::right}, p, late);
    CHECK(l.transmission == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.transmission < 1e-6);
    CHECK(l.reflection < 1e-6);
  }

  TEST_CASE("transient rejects an unsuitable expansion") {
    const GiantAtomConfig c(10.0, 0.5, 0.0, {leg(0, 1, 0)});
    PoleExpansion p = find_poles(c);
    const DriveSpec drive{10.0, 1.0, Incidence::left};
    PoleExpansion other = p;
    other.omega = 11.0;
    CHECK_THROWS_AS(transient_coefficients(c, drive, other, 1.0), std::invalid_argument);
    p.captured_weight = 0.5;
    CHECK_THROWS_AS(transient_coefficients(c, drive, p, 1.0), NumericalError);
  }
}
