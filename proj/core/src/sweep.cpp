#include "giantwg/sweep.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "giantwg/csv.hpp"
#include "giantwg/dde.hpp"
#include "giantwg/emission.hpp"
#include "giantwg/markovian.hpp"
#include "giantwg/parallel.hpp"

namespace giantwg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAxisSlack = 1e-12;
constexpr double kMaxDiagramSteps = 5e7;

void check_axis(const AxisSpec& axis, const char* name) {
  if (axis.count == 0) throw ConfigError(std::string(name) + " axis is empty");
  for (double v : {axis.start, axis.stop}) {
    if (!std::isfinite(v) || v < -kAxisSlack || v > kTwoPi + kAxisSlack) {
      throw ConfigError(std::string(name) + " axis must lie within [0, 2pi]");
    }
  }
}

}  // namespace

std::vector<double> AxisSpec::values() const {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = start;
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
  }
  return out;
}

const char* to_string(SweepMethod method) {
  return method == SweepMethod::dde ? "dde" : "closed_form";
}

GiantAtomConfig diagram_config(int n, double gamma_tau, double dzeta, double dtheta) {
  if (n < 1) throw ConfigError("number of legs must be at least 1");
  if (!(gamma_tau > 0.0)) throw ConfigError("gamma_tau must be positive");
  const double tau = gamma_tau;
  if (std::abs(std::remainder(dzeta, kTwoPi)) < 1e-12 && dzeta < 0.5 * kTwoPi) dzeta += kTwoPi;
  const double omega = dzeta / tau;
  std::vector<Leg> legs(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) legs[m] = {m * tau, 1.0, m * dtheta, std::nullopt};
  return GiantAtomConfig(omega, 0.5, 0.0, std::move(legs));
}

SweepCell dde_diagram_cell(int n, double gamma_tau, double t_f_over_tau, double dzeta,
                           double dtheta) {
  if (!(t_f_over_tau > 0.0)) throw ConfigError("t_f / tau must be positive");
  const GiantAtomConfig config = diagram_config(n, gamma_tau, dzeta, dtheta);
  const DelayKernel kernel = delay_kernel(config);
  const double t_f = t_f_over_tau * gamma_tau;
  const double steps = std::ceil(t_f / default_step(kernel, config.gamma_e()) - 1e-9);
  if (steps > kMaxDiagramSteps) {
    std::ostringstream msg;
    msg << "gamma_tau=" << gamma_tau << " needs " << steps << " steps per cell";
    throw ConfigError(msg.str());
  }
  const Trajectory trajectory = integrate_emission(config, kernel, t_f / steps, t_f);
  const EmissionReport report = accumulate_directional(trajectory, config);
  const std::size_t last = report.size() - 1;
  return {report.chirality[last], report.population[last], report.I_left[last],
          report.I_right[last]};
}

SweepGrid run_diagram_sweep(const DiagramSpec& spec, std::size_t workers) {
  check_axis(spec.dzeta, "dzeta");
  check_axis(spec.dtheta, "dtheta");
  if (spec.n < 1) throw ConfigError("number of legs must be at least 1");
  if (!(spec.gamma_tau > 0.0)) throw ConfigError("gamma_tau must be positive");
  if (!(spec.t_f_over_tau > 0.0)) throw ConfigError("t_f / tau must be positive");

  SweepGrid grid;
  grid.axis1_values = spec.dzeta.values();
  grid.axis2_values = spec.dtheta.values();
  const std::size_t cols = grid.axis2_values.size();
  grid.cells.resize(grid.axis1_values.size() * cols);
  const double t_f = spec.t_f_over_tau * spec.gamma_tau;  // gamma = 1

  parallel_for(grid.cells.size(), workers, [&](std::size_t idx) {
    const double dz = grid.axis1_values[idx / cols];
    const double dt = grid.axis2_values[idx % cols];
    if (spec.method == SweepMethod::dde) {
      grid.cells[idx] = dde_diagram_cell(spec.n, spec.gamma_tau, spec.t_f_over_tau, dz, dt);
      return;
    }
    const ClosedFormEmission e = closed_form_emission(spec.n, dz, dt);
    const EffectiveParams p = effective_parameters(spec.n, 1.0, dz, dt);
    grid.cells[idx] = {e.chirality, std::exp(-2.0 * p.decay * t_f), e.I_left, e.I_right};
  });
  return grid;
}

void write_diagram_csv(std::ostream& out, const DiagramSpec& spec, const SweepGrid& grid) {
  CsvWriter csv(out);
  std::ostringstream line;
  line << "method=" << to_string(spec.method) << " n=" << spec.n
       << " gamma_tau=" << format_real(spec.gamma_tau)
       << " tf_over_tau=" << format_real(spec.t_f_over_tau);
  csv.comment(line.str());
  line.str("");
  line << "grid=" << spec.dzeta.count << "x" << spec.dtheta.count << " dzeta=["
       << format_real(spec.dzeta.start) << "," << format_real(spec.dzeta.stop) << "] dtheta=["
       << format_real(spec.dtheta.start) << "," << format_real(spec.dtheta.stop) << "]";
  csv.comment(line.str());
  csv.header("dzeta,dtheta,C,population");
  for (std::size_t i = 0; i < grid.axis1_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.axis2_values.size(); ++j) {
      const SweepCell& c = grid.at(i, j);
      csv.row({grid.axis1_values[i], grid.axis2_values[j], c.chirality, c.residual_population});
    }
  }
}

std::vector<SpectrumRow> run_spectrum_sweep(const GiantAtomConfig& config, const AxisSpec& omega_d,
                                            std::size_t workers) {
  const std::vector<double> freqs = omega_d.values();
  for (double w : freqs) {
    if (!(w > 0.0)) throw ConfigError("probe frequencies must be positive");
  }
  std::vector<SpectrumRow> rows(freqs.size());
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    const double w = freqs[i];
    SpectrumRow& row = rows[i];
    row.omega_d = w;
    row.delta = w - config.omega();
    row.left = steady_coefficients(config, {w, 1.0, Incidence::left});
    row.right = steady_coefficients(config, {w, 1.0, Incidence::right});
    const double total = row.left.transmission + row.right.transmission;
    if (total >= kTransmissionFloor) {
      row.NR = (row.left.transmission - row.right.transmission) / total;
    }
  });
  return rows;
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows) {
  CsvWriter csv(out);
  csv.header("omega_d,delta,R_left,T_LR,R_right,T_RL,NR");
  for (const SpectrumRow& r : rows) {
    csv.row({r.omega_d, r.delta, r.left.reflection, r.left.transmission, r.right.reflection,
             r.right.transmission, r.NR});
  }
}

}  // namespace giantwg
