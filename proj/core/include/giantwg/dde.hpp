#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "giantwg/config.hpp"

namespace giantwg {

// Uniformly sampled atomic amplitude beta(t) on [0, t_max].
//
// Samples are held as the slowly varying envelope beta(t) * exp(i*omega*t);
// lab-frame values are reconstructed on access. Interpolation is cubic
// (four-point Lagrange) and never straddles a kink time, i.e. a time where a
// delayed kernel term switches on and d(beta)/dt jumps.
class Trajectory {
 public:
  Trajectory(double dt, double omega, std::vector<cplx> envelope, std::vector<double> kinks);

  double dt() const { return dt_; }
  double omega() const { return omega_; }
  double t_max() const { return dt_ * static_cast<double>(envelope_.size() - 1); }
  std::size_t size() const { return envelope_.size(); }
  double time(std::size_t k) const { return dt_ * static_cast<double>(k); }
  const std::vector<double>& kinks() const { return kinks_; }

  // Lab-frame beta at grid index k.
  cplx operator[](std::size_t k) const;
  cplx envelope(std::size_t k) const { return envelope_[k]; }
  std::span<const cplx> envelope_samples() const { return envelope_; }
  double population(std::size_t k) const { return std::norm(envelope_[k]); }

  // Interpolated lab-frame beta(t). Exactly zero for t < 0; throws
  // std::out_of_range beyond the stored history.
  cplx at(double t) const;
  cplx envelope_at(double t) const;

  std::vector<cplx> samples() const;

 private:
  double dt_;
  double omega_;
  std::vector<cplx> envelope_;
  std::vector<double> kinks_;
};

// Cubic interpolation of uniformly spaced samples at time t using only
// indices [0, last]. The four-point stencil is chosen on the same side of
// every kink as t whenever the smooth piece holds at least four samples.
cplx interpolate_samples(std::span<const cplx> samples, double dt, double t,
                         std::span<const double> kinks, std::size_t last);

// dt = min(smallest positive delay / 50, 0.01 / (W0 + gamma_e)).
double default_step(const DelayKernel& kernel, double gamma_e);

// Integrates
//   d(beta)/dt = -(i*Omega + gamma_e) beta - sum_n W_n beta(t - d_n) Theta(t - d_n)
// from beta(0) = 1 with zero history, using classical RK4 on the uniform grid.
// A step that contains a delay d_n is split there so that no Heaviside switch
// falls strictly inside an RK stage interval.
//
// Requires dt <= min positive delay / 10 and dt <= 0.05 / (W0 + gamma_e).
Trajectory integrate_emission(const GiantAtomConfig& config, const DelayKernel& kernel, double dt,
                              double t_max);

// Same, with the kernel built from config and default_step.
Trajectory integrate_emission(const GiantAtomConfig& config, double t_max);

// CSV: t,re_beta,im_beta,population
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace giantwg
