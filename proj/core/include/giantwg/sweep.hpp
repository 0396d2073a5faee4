#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "giantwg/config.hpp"
#include "giantwg/scattering.hpp"

namespace giantwg {

// count equally spaced values from start to stop inclusive.
struct AxisSpec {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;

  std::vector<double> values() const;
};

struct SweepCell {
  std::optional<double> chirality;
  double residual_population = 0.0;
  double I_left = 0.0;
  double I_right = 0.0;
};

// Row-major: axis1 outer, axis2 inner.
struct SweepGrid {
  std::vector<double> axis1_values;
  std::vector<double> axis2_values;
  std::vector<SweepCell> cells;

  const SweepCell& at(std::size_t i, std::size_t j) const {
    return cells[i * axis2_values.size() + j];
  }
};

enum class SweepMethod { closed_form, dde };

const char* to_string(SweepMethod method);

// Chirality diagram over (dzeta, dtheta) for N equally spaced legs with
// gamma = 1 and tau = gamma_tau.
struct DiagramSpec {
  int n = 3;
  double gamma_tau = 0.01;
  double t_f_over_tau = 100.0;
  AxisSpec dzeta;
  AxisSpec dtheta;
  SweepMethod method = SweepMethod::closed_form;
};

// Legs at m*tau with phases m*dtheta, Gamma = 1/2, |c| = 1 and
// Omega = dzeta / tau. dzeta = 0 is replaced by 2 pi, which yields the same
// delay equation and keeps Omega positive.
GiantAtomConfig diagram_config(int n, double gamma_tau, double dzeta, double dtheta);

// One DDE cell: integrates to t_f = t_f_over_tau * tau on a grid that ends
// exactly at t_f.
SweepCell dde_diagram_cell(int n, double gamma_tau, double t_f_over_tau, double dzeta, double dtheta);

// Throws ConfigError for axes outside [0, 2 pi] or non-positive gamma_tau / t_f.
SweepGrid run_diagram_sweep(const DiagramSpec& spec, std::size_t workers = 1);

// Header comments, then dzeta,dtheta,C,population.
void write_diagram_csv(std::ostream& out, const DiagramSpec& spec, const SweepGrid& grid);

struct SpectrumRow {
  double omega_d = 0.0;
  double delta = 0.0;
  ScatteringPoint left;
  ScatteringPoint right;
  std::optional<double> NR;
};

// Throws ConfigError if any probe frequency is not positive.
std::vector<SpectrumRow> run_spectrum_sweep(const GiantAtomConfig& config, const AxisSpec& omega_d,
                                            std::size_t workers = 1);

// omega_d,delta,R_left,T_LR,R_right,T_RL,NR
void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows);

}  // namespace giantwg
