#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "giantwg/config.hpp"
#include "giantwg/dde.hpp"

namespace giantwg {

// Below this total emitted probability the chirality is reported as undefined.
inline constexpr double kChiralityFloor = 1e-12;

// phi(x, t) = -i sqrt(Gamma) sum_m conj(c_m) beta(t - |x - x_m|) Theta(t - |x - x_m|).
// Throws std::out_of_range if t is past the end of the trajectory.
cplx field_at(const Trajectory& trajectory, const GiantAtomConfig& config, double x, double t);

// (I_L - I_R) / (I_L + I_R), or nullopt when I_L + I_R < kChiralityFloor.
std::optional<double> chirality(double i_left, double i_right);

// Time series of the accumulated left/right emitted probabilities on the
// trajectory grid. `balance` is empty unless requested.
struct EmissionReport {
  std::vector<double> times;
  std::vector<double> I_left;
  std::vector<double> I_right;
  std::vector<std::optional<double>> chirality;
  std::vector<double> population;
  std::vector<double> balance;

  std::size_t size() const { return times.size(); }
};

// I_L(t) and I_R(t): trapezoidal time integrals of |phi|^2 at the outermost
// legs x_1 and x_N.
EmissionReport accumulate_directional(const Trajectory& trajectory, const GiantAtomConfig& config,
                                      bool with_balance = false);

struct BalanceResult {
  double value = 0.0;
  bool lossy = false;  // gamma_e > 0, so value < 1 is expected
};

// |beta(t)|^2 + probability stored between the outermost legs + I_L(t) + I_R(t).
// The inter-leg integral uses the trapezoid rule with at least 40 points per
// shortest delay.
BalanceResult probability_balance(const Trajectory& trajectory, const GiantAtomConfig& config,
                                  double t);

// I_L(inf) - I_R(inf) from the two-time overlap formula
//   4 Gamma sum_{m>m'} |c_m c_m'| sin(theta_m - theta_m') int Im[beta(t) conj(beta(t + tau_mm'))] dt,
// truncated at the end of the trajectory. nullopt if |beta(t_max)|^2 >= 1e-6.
std::optional<double> longtime_difference_oracle(const Trajectory& trajectory,
                                                 const GiantAtomConfig& config);

// CSV: t,IL,IR,C,population,balance (balance empty when not computed).
void write_emission_csv(std::ostream& out, const EmissionReport& report);

// Debug dump of phi on an nx-by-nt grid over [x_1 - margin, x_N + margin] x [0, t_max].
// CSV: x,t,re_phi,im_phi
void write_field_csv(std::ostream& out, const Trajectory& trajectory, const GiantAtomConfig& config,
                     std::size_t nx, std::size_t nt, double margin);

}  // namespace giantwg
