#include "giantwg/emission.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "giantwg/csv.hpp"

namespace giantwg {

namespace {

constexpr int kPointsPerDelay = 40;
constexpr double kDecayedPopulation = 1e-6;

// Field at x built only from legs whose retardation |x - x_m| is at most
// `horizon`; retarded times are clamped at zero so that a term can be
// evaluated at its own switch-on instant.
cplx partial_field(const Trajectory& trajectory, const GiantAtomConfig& config, double x, double t,
                   double horizon) {
  cplx sum = 0.0;
  for (const Leg& leg : config.legs()) {
    const double d = std::abs(x - leg.position);
    if (d > horizon) continue;
    sum += std::conj(leg.coupling()) * trajectory.at(std::max(t - d, 0.0));
  }
  return cplx(0.0, -std::sqrt(config.gamma_scale())) * sum;
}

// Cumulative integral of |phi(x, t)|^2 over [0, t_k] for every grid index k
// up to `last`. The integrand jumps where a leg's retarded contribution
// switches on, so trapezoid panels are split at those instants.
std::vector<double> accumulated_flux(const Trajectory& trajectory, const GiantAtomConfig& config,
                                     double x, std::size_t last) {
  std::vector<double> switches;
  for (const Leg& leg : config.legs()) switches.push_back(std::abs(x - leg.position));
  std::sort(switches.begin(), switches.end());

  const double dt = trajectory.dt();
  const double slack = 1e-9 * dt;
  std::vector<double> out(last + 1, 0.0);
  std::vector<double> cuts;
  double total = 0.0;
  for (std::size_t k = 0; k < last; ++k) {
    const double a = trajectory.time(k);
    const double b = trajectory.time(k + 1);
    cuts.assign({a});
    for (double s : switches) {
      if (s > a + slack && s < b - slack) cuts.push_back(s);
    }
    cuts.push_back(b);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double p = cuts[c];
      const double q = cuts[c + 1];
      const double horizon = p + slack;
      const double fp = std::norm(partial_field(trajectory, config, x, p, horizon));
      const double fq = std::norm(partial_field(trajectory, config, x, q, horizon));
      total += 0.5 * (q - p) * (fp + fq);
    }
    out[k + 1] = total;
  }
  return out;
}

// Probability stored between the outermost legs at time t. On each interval
// (x_m, x_m+1) the right movers come from legs 1..m and the left movers from
// legs m+1..N. Cross terms between the two movers are dropped. Panels are
// split at the wavefronts x_i +- t, where the movers switch on.
double density_between_legs(const Trajectory& trajectory, const GiantAtomConfig& config, double t) {
  const auto& legs = config.legs();
  if (legs.size() < 2) return 0.0;
  double shortest = legs[1].position - legs[0].position;
  for (std::size_t m = 2; m < legs.size(); ++m) {
    shortest = std::min(shortest, legs[m].position - legs[m - 1].position);
  }
  const double scale = config.gamma_scale();

  // |sum over active legs|^2 where a leg is active if its front has passed
  // `front`; retarded times clamp at zero on the front itself.
  auto mover = [&](std::size_t lo, std::size_t hi, double x, double front) {
    cplx sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double d = std::abs(x - legs[i].position);
      if (std::abs(front - legs[i].position) > t) continue;
      sum += std::conj(legs[i].coupling()) * trajectory.at(std::max(t - d, 0.0));
    }
    return scale * std::norm(sum);
  };

  double total = 0.0;
  std::vector<double> cuts;
  for (std::size_t m = 0; m + 1 < legs.size(); ++m) {
    const double a = legs[m].position;
    const double b = legs[m + 1].position;
    const auto n = static_cast<std::size_t>(
        std::max<double>(kPointsPerDelay, std::ceil(kPointsPerDelay * (b - a) / shortest)));
    const double h = (b - a) / static_cast<double>(n);
    const double slack = 1e-9 * h;

    cuts.clear();
    for (std::size_t j = 0; j <= n; ++j) cuts.push_back(j == n ? b : a + h * static_cast<double>(j));
    for (const Leg& leg : legs) {
      for (double f : {leg.position + t, leg.position - t}) {
        if (f > a + slack && f < b - slack) cuts.push_back(f);
      }
    }
    std::sort(cuts.begin(), cuts.end());

    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double p = cuts[c];
      const double q = cuts[c + 1];
      if (q - p <= slack) continue;
      const double mid = 0.5 * (p + q);
      const double fp = mover(0, m + 1, p, mid) + mover(m + 1, legs.size(), p, mid);
      const double fq = mover(0, m + 1, q, mid) + mover(m + 1, legs.size(), q, mid);
      total += 0.5 * (q - p) * (fp + fq);
    }
  }
  return total;
}

}  // namespace

cplx field_at(const Trajectory& trajectory, const GiantAtomConfig& config, double x, double t) {
  cplx sum = 0.0;
  for (const Leg& leg : config.legs()) {
    const double ret = t - std::abs(x - leg.position);
    if (ret < 0.0) continue;
    sum += std::conj(leg.coupling()) * trajectory.at(ret);
  }
  return cplx(0.0, -std::sqrt(config.gamma_scale())) * sum;
}

std::optional<double> chirality(double i_left, double i_right) {
  const double total = i_left + i_right;
  if (!(total >= kChiralityFloor)) return std::nullopt;
  return (i_left - i_right) / total;
}

EmissionReport accumulate_directional(const Trajectory& trajectory, const GiantAtomConfig& config,
                                      bool with_balance) {
  const std::size_t n = trajectory.size();
  const std::vector<double> il = accumulated_flux(trajectory, config, config.leftmost(), n - 1);
  const std::vector<double> ir = accumulated_flux(trajectory, config, config.rightmost(), n - 1);

  EmissionReport report;
  report.times.resize(n);
  report.chirality.resize(n);
  report.population.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    report.times[k] = trajectory.time(k);
    report.chirality[k] = chirality(il[k], ir[k]);
    report.population[k] = trajectory.population(k);
  }
  report.I_left = il;
  report.I_right = ir;

  if (with_balance) {
    report.balance.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      report.balance[k] = report.population[k] +
                          density_between_legs(trajectory, config, report.times[k]) +
                          report.I_left[k] + report.I_right[k];
    }
  }
  return report;
}

BalanceResult probability_balance(const Trajectory& trajectory, const GiantAtomConfig& config,
                                  double t) {
  if (t < 0.0 || t > trajectory.t_max() * (1.0 + 1e-12)) {
    throw std::out_of_range("balance time outside the trajectory");
  }
  const double dt = trajectory.dt();
  const auto k = std::min(static_cast<std::size_t>(std::llround(t / dt)), trajectory.size() - 1);
  if (std::abs(trajectory.time(k) - t) > 1e-9 * dt) {
    throw std::invalid_argument("balance time must lie on the trajectory grid");
  }
  const double emitted = accumulated_flux(trajectory, config, config.leftmost(), k)[k] +
                         accumulated_flux(trajectory, config, config.rightmost(), k)[k];

  BalanceResult result;
  result.value = trajectory.population(k) + density_between_legs(trajectory, config, t) + emitted;
  result.lossy = config.gamma_e() > 0.0;
  return result;
}

std::optional<double> longtime_difference_oracle(const Trajectory& trajectory,
                                                 const GiantAtomConfig& config) {
  if (trajectory.population(trajectory.size() - 1) >= kDecayedPopulation) return std::nullopt;

  const auto& legs = config.legs();
  const double dt = trajectory.dt();
  double sum = 0.0;
  for (std::size_t m = 1; m < legs.size(); ++m) {
    for (std::size_t mp = 0; mp < m; ++mp) {
      const double s = std::sin(legs[m].coupling_phase - legs[mp].coupling_phase);
      if (s == 0.0) continue;
      const double tau = legs[m].position - legs[mp].position;
      const double end = trajectory.t_max() - tau;
      if (end <= 0.0) continue;
      const auto last = static_cast<std::size_t>(std::floor(end / dt + 1e-9));
      double overlap = 0.0;
      double prev = 0.0;
      for (std::size_t k = 0; k <= last; ++k) {
        const double t = trajectory.time(k);
        const double cur = std::imag(trajectory[k] * std::conj(trajectory.at(t + tau)));
        if (k > 0) overlap += 0.5 * dt * (prev + cur);
        prev = cur;
      }
      sum += legs[m].coupling_magnitude * legs[mp].coupling_magnitude * s * overlap;
    }
  }
  return 4.0 * config.gamma_scale() * sum;
}

void write_emission_csv(std::ostream& out, const EmissionReport& report) {
  CsvWriter csv(out);
  csv.header("t,IL,IR,C,population,balance");
  const bool has_balance = report.balance.size() == report.size();
  for (std::size_t k = 0; k < report.size(); ++k) {
    csv.row({report.times[k], report.I_left[k], report.I_right[k], report.chirality[k],
             report.population[k], has_balance ? CsvCell(report.balance[k]) : std::nullopt});
  }
}

void write_field_csv(std::ostream& out, const Trajectory& trajectory, const GiantAtomConfig& config,
                     std::size_t nx, std::size_t nt, double margin) {
  if (nx < 2 || nt < 2) throw std::invalid_argument("field grid needs at least 2x2 points");
  CsvWriter csv(out);
  csv.header("x,t,re_phi,im_phi");
  const double x0 = config.leftmost() - margin;
  const double x1 = config.rightmost() + margin;
  for (std::size_t j = 0; j < nt; ++j) {
    const double t = trajectory.t_max() * static_cast<double>(j) / static_cast<double>(nt - 1);
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(nx - 1);
      const cplx phi = field_at(trajectory, config, x, t);
      csv.row({x, t, phi.real(), phi.imag()});
    }
  }
}

}  // namespace giantwg
