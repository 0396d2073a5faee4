#include "giantwg/scattering.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace giantwg {

namespace {

constexpr double kDenominatorFloor = 1e-300;

struct Amplitudes {
  cplx r;
  cplx t;
};

// Left-incidence reflection and transmission amplitudes.
Amplitudes left_amplitudes(const GiantAtomConfig& config, double omega_d) {
  const auto& legs = config.legs();
  const double x1 = config.leftmost();
  const double g = config.gamma_scale();

  cplx in = 0.0;    // sum c_m e^{i w tau_m}
  cplx back = 0.0;  // sum c*_m e^{i w tau_m}
  cplx self = 0.0;  // sum c_m c*_m' e^{i w |tau_m - tau_m'|}
  for (const Leg& a : legs) {
    const cplx pa = std::polar(1.0, omega_d * (a.position - x1));
    in += a.coupling() * pa;
    back += std::conj(a.coupling()) * pa;
    for (const Leg& b : legs) {
      self += a.coupling() * std::conj(b.coupling()) *
              std::polar(1.0, omega_d * std::abs(a.position - b.position));
    }
  }
  const cplx den = cplx(omega_d - config.omega(), config.gamma_e()) + cplx(0.0, g) * self;
  if (!(std::abs(den) >= kDenominatorFloor)) {
    std::ostringstream msg;
    msg << "scattering denominator vanishes at omega_d=" << omega_d;
    throw NumericalError(msg.str());
  }
  const double bright = std::norm(in);
  return {cplx(0.0, -g) * in * back / den, 1.0 - cplx(0.0, g) * bright / den};
}

void require_drive(const DriveSpec& drive) {
  if (!(drive.omega_d > 0.0)) throw ConfigError("drive frequency must be positive");
  if (!(drive.amplitude > 0.0)) throw ConfigError("drive amplitude must be positive");
}

}  // namespace

ScatteringPoint steady_coefficients(const GiantAtomConfig& config, const DriveSpec& drive) {
  require_drive(drive);
  const Amplitudes a = drive.incidence == Incidence::left
                           ? left_amplitudes(config, drive.omega_d)
                           : left_amplitudes(mirror_transform(config), drive.omega_d);
  return {std::norm(a.r), std::norm(a.t), drive.incidence};
}

NonreciprocityReport nonreciprocity(const GiantAtomConfig& config, double omega_d) {
  NonreciprocityReport out;
  out.T_left_to_right = steady_coefficients(config, {omega_d, 1.0, Incidence::left}).transmission;
  out.T_right_to_left = steady_coefficients(config, {omega_d, 1.0, Incidence::right}).transmission;
  const double total = out.T_left_to_right + out.T_right_to_left;
  if (total >= kTransmissionFloor) out.NR = (out.T_left_to_right - out.T_right_to_left) / total;
  return out;
}

TransientCoefficients transient_coefficients(const GiantAtomConfig& config, const DriveSpec& drive,
                                             const PoleExpansion& expansion, double t) {
  require_drive(drive);
  if (t < 0.0) throw std::invalid_argument("transient time must be >= 0");
  if (expansion.omega != config.omega() || expansion.gamma_e != config.gamma_e()) {
    throw std::invalid_argument("pole expansion was computed for different atom parameters");
  }
  if (expansion.captured_weight < kMinTransientWeight) {
    std::ostringstream msg;
    msg << "pole expansion captures only " << expansion.captured_weight << " of the weight";
    throw NumericalError(msg.str());
  }

  const GiantAtomConfig cfg =
      drive.incidence == Incidence::left ? config : mirror_transform(config);
  const DelayKernel kernel = delay_kernel(cfg);
  const double w = drive.omega_d;
  const cplx steady = 1.0 / characteristic(cplx(0.0, -w), kernel, cfg.omega(), cfg.gamma_e());

  // Response of beta to a unit drive e^{-i w u} switched on at u = 0.
  std::vector<cplx> pole_factor(expansion.size());
  for (std::size_t n = 0; n < expansion.size(); ++n) {
    pole_factor[n] = expansion.residue_weights[n] / (expansion.poles[n] + cplx(0.0, w));
  }
  auto response = [&](double u) -> cplx {
    if (u <= 0.0) return 0.0;
    cplx v = steady * std::polar(1.0, -w * u);
    for (std::size_t n = 0; n < expansion.size(); ++n) {
      v += pole_factor[n] * std::exp(expansion.poles[n] * u);
    }
    return v;
  };

  const auto& legs = cfg.legs();
  const double x1 = cfg.leftmost();
  auto eta = [&](double s) {
    cplx v = 0.0;
    for (const Leg& leg : legs) v += leg.coupling() * response(s - (leg.position - x1));
    return 0.5 * v;
  };

  const double g = cfg.gamma_scale();
  const double tau_n = cfg.rightmost() - x1;
  cplx refl = 0.0;
  cplx emitted = 0.0;
  for (const Leg& leg : legs) {
    const double tau = leg.position - x1;
    refl += std::conj(leg.coupling()) * eta(t - tau);
    emitted += std::conj(leg.coupling()) * eta(t - tau_n + tau);
  }
  const cplx incident = std::polar(1.0, -w * (t - tau_n));
  return {4.0 * g * g * std::norm(refl), std::norm(incident - 2.0 * g * emitted)};
}

OperatingPoint two_leg_operating_point(double theta, double gamma_c2, int sign, int k) {
  if (!(theta > 0.0 && theta < 0.5 * std::numbers::pi)) {
    throw ConfigError("operating point needs 0 < theta < pi/2");
  }
  if (!(gamma_c2 > 0.0)) throw ConfigError("Gamma c^2 must be positive");
  if (sign != 1 && sign != -1) throw ConfigError("sign must be +1 or -1");
  OperatingPoint op;
  const double s = std::sin(theta);
  op.gamma_e = 2.0 * gamma_c2 * s * s;
  op.delta = sign * gamma_c2 * std::sin(2.0 * theta);
  op.phi = (2.0 * k + 1.0) * std::numbers::pi - sign * theta;
  return op;
}

GiantAtomConfig two_leg_isolator(double theta, double gamma_c2, const OperatingPoint& op,
                                 double omega_d) {
  if (!(omega_d > 0.0)) throw ConfigError("drive frequency must be positive");
  if (!(op.phi > 0.0)) throw ConfigError("operating point needs a positive propagation phase");
  std::vector<Leg> legs(2);
  legs[0] = {0.0, 1.0, 0.0, std::nullopt};
  legs[1] = {op.phi / omega_d, 1.0, theta, std::nullopt};
  return GiantAtomConfig(omega_d - op.delta, gamma_c2, op.gamma_e, std::move(legs));
}

}  // namespace giantwg
