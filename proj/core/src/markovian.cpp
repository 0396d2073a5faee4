#include "giantwg/markovian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace giantwg {

namespace {

constexpr double kFullChiralityTolerance = 1e-9;

double decay_term(int n, double phi) {
  const double den = 1.0 - std::cos(phi);
  if (std::abs(den) < kRemovableSingularity) return static_cast<double>(n) * n;
  return (1.0 - std::cos(n * phi)) / den;
}

double shift_term(int n, double phi) {
  const double den = 1.0 - std::cos(phi);
  if (std::abs(den) < kRemovableSingularity) return 0.0;
  return (n * std::sin(phi) - std::sin(n * phi)) / den;
}

void require_leg_count(int n) {
  if (n < 1) throw ConfigError("number of legs must be at least 1");
}

}  // namespace

double array_factor(int n, double phi) {
  require_leg_count(n);
  return decay_term(n, phi);
}

EffectiveParams effective_parameters(int n, double gamma, double dzeta, double dtheta) {
  require_leg_count(n);
  EffectiveParams p;
  p.phi_plus = dzeta + dtheta;
  p.phi_minus = dzeta - dtheta;
  p.decay = 0.25 * gamma * (decay_term(n, p.phi_plus) + decay_term(n, p.phi_minus));
  p.lamb_shift = -0.25 * gamma * (shift_term(n, p.phi_plus) + shift_term(n, p.phi_minus));
  return p;
}

cplx markovian_pole(double omega, const EffectiveParams& params) {
  return cplx(-params.decay, -(omega - params.lamb_shift));
}

ClosedFormEmission closed_form_emission(int n, double dzeta, double dtheta) {
  require_leg_count(n);
  const double fp = decay_term(n, dzeta + dtheta);
  const double fm = decay_term(n, dzeta - dtheta);
  ClosedFormEmission out;
  if (fp < kDarkThreshold && fm < kDarkThreshold) {
    out.dark = true;
    return out;
  }
  const double total = fp + fm;
  out.I_left = fm / total;
  out.I_right = fp / total;
  out.chirality = (fm - fp) / total;
  return out;
}

DarkStateDesign dark_state_design(int k_plus, int k_minus, int n, double d) {
  require_leg_count(n);
  if (k_plus + k_minus == 0) throw ConfigError("k+ + k- must be nonzero");
  if (k_plus + k_minus < 0) throw ConfigError("k+ + k- must be positive for a positive frequency");
  if (k_plus % n == 0 || k_minus % n == 0) {
    throw ConfigError("k+ and k- must not be multiples of N");
  }
  if (!(d > 0.0)) throw ConfigError("leg spacing must be positive");
  DarkStateDesign out;
  out.lambda = static_cast<double>(k_plus - k_minus) / static_cast<double>(k_plus + k_minus);
  out.omega_c = static_cast<double>(k_plus + k_minus) * std::numbers::pi / (n * d);
  return out;
}

ChiralityFrequencies full_chirality_frequencies(int k_plus, int k_minus, int n, double d,
                                                double omega_max) {
  const DarkStateDesign design = dark_state_design(k_plus, k_minus, n, d);
  if (!(omega_max > 0.0)) throw ConfigError("omega_max must be positive");

  auto collect = [&](int k_side, double target) {
    std::vector<double> out;
    if (k_side == 0) return out;
    const int step_sign = k_side > 0 ? 1 : -1;
    for (int k = step_sign;; k += step_sign) {
      const double omega = k * design.omega_c / k_side;
      if (!(omega < omega_max)) break;
      if (k % k_side == 0 || k % n == 0) continue;
      const double dzeta = omega * d;
      const ClosedFormEmission e = closed_form_emission(n, dzeta, design.lambda * dzeta);
      if (e.chirality && std::abs(*e.chirality - target) < kFullChiralityTolerance) {
        out.push_back(omega);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  ChiralityFrequencies out;
  out.left = collect(k_plus, 1.0);
  out.right = collect(k_minus, -1.0);
  return out;
}

}  // namespace giantwg
