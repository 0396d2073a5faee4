#pragma once

#include <numbers>
#include <random>
#include <vector>

#include "giantwg/config.hpp"

namespace testutil {

inline constexpr double kPi = std::numbers::pi;

inline giantwg::Leg leg(double x, double mag, double phase) { return {x, mag, phase, std::nullopt}; }

// 1..max_legs legs with random spacing, magnitudes and phases.
inline giantwg::GiantAtomConfig random_config(std::mt19937_64& rng, int min_legs, int max_legs,
                                              double gamma_e = 0.0) {
  std::uniform_int_distribution<int> count(min_legs, max_legs);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = count(rng);
  std::vector<giantwg::Leg> legs;
  double x = 2.0 * u(rng) - 1.0;
  for (int m = 0; m < n; ++m) {
    legs.push_back(leg(x, 0.3 + u(rng), 4.0 * kPi * (u(rng) - 0.5)));
    x += 0.1 + u(rng);
  }
  return giantwg::GiantAtomConfig(1.0 + 10.0 * u(rng), 0.2 + u(rng), gamma_e, std::move(legs));
}

}  // namespace testutil
