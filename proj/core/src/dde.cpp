#include "giantwg/dde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "giantwg/csv.hpp"

namespace giantwg {

namespace {

constexpr double kGridSlack = 1e-9;  // fraction of dt treated as "on the grid point"

cplx lagrange(std::span<const cplx> samples, std::ptrdiff_t start, std::ptrdiff_t count, double x) {
  if (count == 4) {
    const double w0 = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
    const double w1 = x * (x - 2.0) * (x - 3.0) / 2.0;
    const double w2 = -x * (x - 1.0) * (x - 3.0) / 2.0;
    const double w3 = x * (x - 1.0) * (x - 2.0) / 6.0;
    return w0 * samples[start] + w1 * samples[start + 1] + w2 * samples[start + 2] +
           w3 * samples[start + 3];
  }
  cplx sum = 0.0;
  for (std::ptrdiff_t a = 0; a < count; ++a) {
    double w = 1.0;
    for (std::ptrdiff_t b = 0; b < count; ++b) {
      if (a != b) w *= (x - static_cast<double>(b)) / static_cast<double>(a - b);
    }
    sum += w * samples[start + a];
  }
  return sum;
}

}  // namespace

cplx interpolate_samples(std::span<const cplx> samples, double dt, double t,
                         std::span<const double> kinks, std::size_t last) {
  if (t < 0.0) return 0.0;
  if (last == 0) return samples[0];

  const double u = t / dt;
  const auto hi = static_cast<std::ptrdiff_t>(last);
  std::ptrdiff_t jmin = 0;
  std::ptrdiff_t jmax = hi;
  for (double k : kinks) {
    if (k <= t) {
      jmin = std::max(jmin, static_cast<std::ptrdiff_t>(std::ceil(k / dt - kGridSlack)));
    } else {
      jmax = std::min(jmax, static_cast<std::ptrdiff_t>(std::floor(k / dt + kGridSlack)));
      break;
    }
  }
  const std::ptrdiff_t count = std::min<std::ptrdiff_t>(4, hi + 1);
  if (jmax - jmin + 1 < count) {
    jmin = 0;
    jmax = hi;
  }
  const auto i = static_cast<std::ptrdiff_t>(std::floor(u));
  const std::ptrdiff_t start = std::clamp(i - 1, jmin, jmax - (count - 1));
  return lagrange(samples, start, count, u - static_cast<double>(start));
}

Trajectory::Trajectory(double dt, double omega, std::vector<cplx> envelope, std::vector<double> kinks)
    : dt_(dt), omega_(omega), envelope_(std::move(envelope)), kinks_(std::move(kinks)) {
  if (!(dt_ > 0.0)) throw std::invalid_argument("trajectory dt must be positive");
  if (envelope_.empty()) throw std::invalid_argument("trajectory needs at least one sample");
  std::sort(kinks_.begin(), kinks_.end());
}

cplx Trajectory::operator[](std::size_t k) const {
  return envelope_[k] * std::polar(1.0, -omega_ * time(k));
}

cplx Trajectory::envelope_at(double t) const {
  if (t < 0.0) return 0.0;
  if (t > t_max() + kGridSlack * dt_) {
    throw std::out_of_range("time " + std::to_string(t) + " beyond stored history " +
                            std::to_string(t_max()));
  }
  return interpolate_samples(envelope_, dt_, std::min(t, t_max()), kinks_, envelope_.size() - 1);
}

cplx Trajectory::at(double t) const {
  if (t < 0.0) return 0.0;
  return envelope_at(t) * std::polar(1.0, -omega_ * t);
}

std::vector<cplx> Trajectory::samples() const {
  std::vector<cplx> out(envelope_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = (*this)[k];
  return out;
}

double default_step(const DelayKernel& kernel, double gamma_e) {
  const double rate = kernel.local_rate() + gamma_e;
  double dt = rate > 0.0 ? 0.01 / rate : 0.01;
  if (kernel.has_delays()) dt = std::min(dt, kernel.min_positive_delay() / 50.0);
  return dt;
}

Trajectory integrate_emission(const GiantAtomConfig& config, const DelayKernel& kernel, double dt,
                              double t_max) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be positive");
  const double local = kernel.local_rate() + config.gamma_e();
  if (kernel.has_delays() && dt > kernel.min_positive_delay() / 10.0 * (1.0 + 1e-12)) {
    throw std::invalid_argument("dt must not exceed a tenth of the smallest delay");
  }
  if (local > 0.0 && dt > 0.05 / local * (1.0 + 1e-12)) {
    throw std::invalid_argument("dt must not exceed 0.05 / (W0 + gamma_e)");
  }

  const double omega = config.omega();
  const std::size_t steps = static_cast<std::size_t>(std::ceil(t_max / dt - kGridSlack));

  // Rotating frame: only the phases exp(i*Omega*d_n) survive.
  const std::size_t terms = kernel.size();
  std::vector<double> delays(kernel.delays.begin() + 1, kernel.delays.end());
  std::vector<cplx> rotated(terms > 0 ? terms - 1 : 0);
  for (std::size_t n = 1; n < terms; ++n) {
    rotated[n - 1] = kernel.weights[n] * std::polar(1.0, omega * kernel.delays[n]);
  }

  std::vector<cplx> psi;
  psi.reserve(steps + 1);
  psi.push_back(1.0);

  std::size_t available = 0;  // last completed sample index
  std::size_t active = 0;     // delayed terms switched on for the current sub-step

  auto rhs = [&](double t, cplx y) {
    cplx v = -local * y;
    for (std::size_t n = 0; n < active; ++n) {
      const double ret = std::max(t - delays[n], 0.0);
      v -= rotated[n] * interpolate_samples(psi, dt, ret, delays, available);
    }
    return v;
  };

  auto rk4 = [&](double a, double b, cplx y) {
    const double h = b - a;
    const cplx k1 = rhs(a, y);
    const cplx k2 = rhs(a + 0.5 * h, y + 0.5 * h * k1);
    const cplx k3 = rhs(a + 0.5 * h, y + 0.5 * h * k2);
    const cplx k4 = rhs(b, y + h * k3);
    return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  std::vector<double> cuts;
  for (std::size_t k = 0; k < steps; ++k) {
    const double a = dt * static_cast<double>(k);
    const double b = dt * static_cast<double>(k + 1);
    const double slack = kGridSlack * dt;

    cuts.clear();
    cuts.push_back(a);
    for (double d : delays) {
      if (d > a + slack && d < b - slack) cuts.push_back(d);
    }
    cuts.push_back(b);

    cplx y = psi[k];
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double p = cuts[c];
      active = 0;
      while (active < delays.size() && delays[active] <= p + slack) ++active;
      y = rk4(p, cuts[c + 1], y);
    }
    psi.push_back(y);
    available = k + 1;
  }

  return Trajectory(dt, omega, std::move(psi), std::move(delays));
}

Trajectory integrate_emission(const GiantAtomConfig& config, double t_max) {
  const DelayKernel kernel = delay_kernel(config);
  return integrate_emission(config, kernel, default_step(kernel, config.gamma_e()), t_max);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  CsvWriter csv(out);
  csv.header("t,re_beta,im_beta,population");
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    const cplx b = trajectory[k];
    csv.row({trajectory.time(k), b.real(), b.imag(), trajectory.population(k)});
  }
}

}  // namespace giantwg
