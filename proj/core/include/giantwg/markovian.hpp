#pragma once

#include <optional>
#include <vector>

#include "giantwg/config.hpp"

namespace giantwg {

// Closed-form effective model of N equally spaced legs with coupling phases in
// arithmetic progression, in the limit of negligible propagation delay.
// dzeta = Omega * d is the propagating phase between neighbouring legs and
// dtheta the coupling-phase step. gamma = 2 Gamma c^2.
struct EffectiveParams {
  double lamb_shift = 0.0;  // Delta~
  double decay = 0.0;       // gamma~ (amplitude decay rate)
  double phi_plus = 0.0;    // dzeta + dtheta
  double phi_minus = 0.0;   // dzeta - dtheta
};

// Below this |1 - cos(phi)| the interference sums take their limiting values.
inline constexpr double kRemovableSingularity = 1e-9;
inline constexpr double kDarkThreshold = 1e-12;

// sin^2(N phi / 2) / sin^2(phi / 2), equal to N^2 at phi = 2 pi k.
double array_factor(int n, double phi);

// gamma~ = (gamma / 4) sum_{+-} (1 - cos N phi) / (1 - cos phi)
// Delta~ = -(gamma / 4) sum_{+-} (N sin phi - sin N phi) / (1 - cos phi)
EffectiveParams effective_parameters(int n, double gamma, double dzeta, double dtheta);

// Dominant characteristic root in the same limit, -i (Omega - Delta~) - gamma~.
// The emitted frequency is pulled opposite to the sign of Delta~ as defined
// above.
cplx markovian_pole(double omega, const EffectiveParams& params);

struct ClosedFormEmission {
  double I_left = 0.0;
  double I_right = 0.0;
  std::optional<double> chirality;  // nullopt at dark points
  bool dark = false;
};

// Long-time left/right split: I_L ~ F(phi-), I_R ~ F(phi+), normalized.
ClosedFormEmission closed_form_emission(int n, double dzeta, double dtheta);

struct DarkStateDesign {
  double lambda = 0.0;   // slope dtheta / dzeta of the tuning line
  double omega_c = 0.0;  // frequency of the dark point on that line
};

// lambda = (k+ - k-) / (k+ + k-), Omega_c = (k+ + k-) pi / (N d).
// Throws ConfigError if k+ + k- <= 0, if N divides k+ or k-, or if d <= 0.
DarkStateDesign dark_state_design(int k_plus, int k_minus, int n, double d);

struct ChiralityFrequencies {
  std::vector<double> left;   // C = +1
  std::vector<double> right;  // C = -1
};

// Frequencies below omega_max on the tuning line through the (k+, k-) dark
// point where emission is completely one-sided: k Omega_c / k+ (left) and
// k Omega_c / k- (right), skipping k that are multiples of k+- or N. Points
// where the closed form does not give exactly +-1 (e.g. other dark points)
// are dropped.
ChiralityFrequencies full_chirality_frequencies(int k_plus, int k_minus, int n, double d,
                                                double omega_max);

}  // namespace giantwg
