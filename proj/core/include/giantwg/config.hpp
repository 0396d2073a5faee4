#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "giantwg/error.hpp"

namespace giantwg {

using cplx = std::complex<double>;

// Units: hbar = 1 and the waveguide group velocity is 1, so lengths and
// times are interchangeable throughout the library.
inline constexpr double kVelocity = 1.0;

// Two positions closer than this are treated as the same delay.
inline constexpr double kDelayMergeTolerance = 1e-12;

// One coupling point of the giant atom.
struct Leg {
  double position = 0.0;
  double coupling_magnitude = 0.0;
  double coupling_phase = 0.0;           // radians, stored unreduced
  std::optional<double> leg_length;      // set for passively phased legs

  cplx coupling() const { return std::polar(coupling_magnitude, coupling_phase); }

  friend bool operator==(const Leg&, const Leg&) = default;
};

// Validated, immutable description of a giant atom: transition frequency,
// coupling-rate scale, external dissipation and the ordered coupling legs.
class GiantAtomConfig {
 public:
  // Validates the parameters and sorts legs by position. Throws ConfigError.
  GiantAtomConfig(double omega, double gamma_scale, double gamma_e, std::vector<Leg> legs);

  double omega() const { return omega_; }
  double gamma_scale() const { return gamma_scale_; }
  double gamma_e() const { return gamma_e_; }
  double velocity() const { return kVelocity; }
  const std::vector<Leg>& legs() const { return legs_; }
  std::size_t size() const { return legs_.size(); }

  double leftmost() const { return legs_.front().position; }
  double rightmost() const { return legs_.back().position; }

  // Copy with a different dissipation rate.
  GiantAtomConfig with_gamma_e(double gamma_e) const;

  friend bool operator==(const GiantAtomConfig&, const GiantAtomConfig&) = default;

 private:
  double omega_;
  double gamma_scale_;
  double gamma_e_;
  std::vector<Leg> legs_;
};

// Unvalidated leg description as it comes out of a config file: exactly one
// of `phase` or `length` is expected.
struct RawLeg {
  double position = 0.0;
  double magnitude = 0.0;
  std::optional<double> phase;
  std::optional<double> length;
};

struct RawConfig {
  std::optional<double> omega;
  std::optional<double> gamma_scale;
  std::optional<double> gamma_e;
  std::vector<RawLeg> legs;
};

GiantAtomConfig build_config(const RawConfig& raw);

// theta_m = omega * l_m / v for legs of physical length l_m.
std::vector<double> passive_phases(std::span<const double> lengths, double omega);

// Spatial reflection: x_m -> x_N - x_m with the coupling order reversed.
GiantAtomConfig mirror_transform(const GiantAtomConfig& config);

// Adds phi0 to every coupling phase (waveguide displacement gauge).
GiantAtomConfig gauge_shift(const GiantAtomConfig& config, double phi0);

// Complex-conjugates every coupling.
GiantAtomConfig time_reverse(const GiantAtomConfig& config);

// Memory kernel of the emission delay equation. Entry n contributes
// -weights[n] * beta(t - delays[n]) to d(beta)/dt; delays[0] == 0.
struct DelayKernel {
  std::vector<double> delays;
  std::vector<double> weights;

  std::size_t size() const { return delays.size(); }
  double local_rate() const { return weights.front(); }
  bool has_delays() const { return delays.size() > 1; }
  double min_positive_delay() const { return has_delays() ? delays[1] : 0.0; }
  double max_delay() const { return delays.back(); }

  friend bool operator==(const DelayKernel&, const DelayKernel&) = default;
};

DelayKernel delay_kernel(const GiantAtomConfig& config);

// Kernel equality up to an absolute tolerance on delays and weights.
bool approx_equal(const DelayKernel& a, const DelayKernel& b, double tol);

}  // namespace giantwg
