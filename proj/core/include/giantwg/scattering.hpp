#pragma once

#include <optional>

#include "giantwg/config.hpp"
#include "giantwg/spectral.hpp"

namespace giantwg {

enum class Incidence { left, right };

// Monochromatic probe at frequency omega_d. The amplitude cancels in every
// coefficient; it only has to be positive.
struct DriveSpec {
  double omega_d = 0.0;
  double amplitude = 1.0;
  Incidence incidence = Incidence::left;
};

struct ScatteringPoint {
  double reflection = 0.0;
  double transmission = 0.0;
  Incidence incidence = Incidence::left;
};

struct NonreciprocityReport {
  double T_left_to_right = 0.0;
  double T_right_to_left = 0.0;
  std::optional<double> NR;  // nullopt when both transmissions vanish
};

inline constexpr double kTransmissionFloor = 1e-15;

// Steady-state reflection and transmission. Offsets tau_m = x_m - x_1 and
// detuning Delta = omega_d - Omega. Right incidence is evaluated on the
// mirrored configuration. Throws NumericalError if the resonance denominator
// underflows.
ScatteringPoint steady_coefficients(const GiantAtomConfig& config, const DriveSpec& drive);

// (T_LR - T_RL) / (T_LR + T_RL).
NonreciprocityReport nonreciprocity(const GiantAtomConfig& config, double omega_d);

struct TransientCoefficients {
  double reflection = 0.0;
  double transmission = 0.0;
};

// R(t) and T(t) after the probe front reaches the first leg at t = 0, built
// from the drive-response amplitude eta(t) (steady term plus residue sum over
// `expansion`). The expansion must have been computed for `config`, including
// its gamma_e. Throws NumericalError if expansion.captured_weight < 0.99.
TransientCoefficients transient_coefficients(const GiantAtomConfig& config, const DriveSpec& drive,
                                             const PoleExpansion& expansion, double t);

inline constexpr double kMinTransientWeight = 0.99;

struct OperatingPoint {
  double delta = 0.0;    // omega_d - Omega
  double gamma_e = 0.0;
  double phi = 0.0;      // omega_d * (x_2 - x_1)
};

// Two equal legs with coupling-phase difference theta: gamma_e = 2 Gamma c^2 sin^2(theta),
// Delta = sign Gamma c^2 sin(2 theta), phi = (2k + 1) pi - sign theta give R = 0 and
// NR = sign. Requires 0 < theta < pi/2, gamma_c2 > 0 and sign = +-1.
OperatingPoint two_leg_operating_point(double theta, double gamma_c2, int sign, int k);

// Realizes an operating point: Gamma = gamma_c2, |c| = 1, legs at 0 and
// phi / omega_d with phases 0 and theta, Omega = omega_d - Delta.
GiantAtomConfig two_leg_isolator(double theta, double gamma_c2, const OperatingPoint& op,
                                 double omega_d);

}  // namespace giantwg
