#include "checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "giantwg/config.hpp"
#include "giantwg/csv.hpp"
#include "giantwg/dde.hpp"
#include "giantwg/emission.hpp"
#include "giantwg/markovian.hpp"
#include "giantwg/parallel.hpp"
#include "giantwg/scattering.hpp"
#include "giantwg/spectral.hpp"
#include "giantwg/sweep.hpp"

namespace giantwg::checks {

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string sci(double v) { return format_real(v, 3); }

Leg leg(double x, double mag, double phase) { return {x, mag, phase, std::nullopt}; }

// ---------------------------------------------------------------- 1
Outcome single_leg_decay() {
  const GiantAtomConfig config(10.0, 0.5, 0.0, {leg(0.0, 1.0, 0.0)});  // gamma = 1
  const Trajectory tr = integrate_emission(config, 10.0);
  double err = 0.0;
  for (std::size_t k = 0; k < tr.size(); ++k) {
    err = std::max(err, std::abs(tr.population(k) - std::exp(-tr.time(k))));
  }
  return {err < 1e-8, "max|P(t) - exp(-gamma t)| = " + sci(err) + " (tol 1e-8)"};
}

// ---------------------------------------------------------------- 2
struct RandomDelayConfig {
  GiantAtomConfig config;
  double gamma;
};

RandomDelayConfig random_delay_config(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> legs_dist(2, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = legs_dist(rng);
  const double gamma_scale = 0.5;
  std::vector<double> mags(n);
  double mean_sq = 0.0;
  for (double& m : mags) {
    m = 0.6 + 0.6 * unit(rng);
    mean_sq += m * m / n;
  }
  const double gamma = 2.0 * gamma_scale * mean_sq;
  const double tau = (0.05 + 0.75 * unit(rng)) / gamma;
  std::vector<Leg> legs;
  double x = 0.0;
  for (int m = 0; m < n; ++m) {
    legs.push_back(leg(x, mags[m], 2.0 * kPi * unit(rng)));
    x += tau * (m == 0 ? 1.0 : 1.0 + unit(rng));
  }
  const double omega = (0.5 + 2.0 * kPi * unit(rng)) / tau;
  return {GiantAtomConfig(omega, gamma_scale, 0.0, std::move(legs)), gamma};
}

Outcome pole_dde_oracle() {
  constexpr int kWanted = 10;
  constexpr int kMaxDraws = 400;
  std::mt19937_64 rng(20240611);
  int gated = 0;
  int draws = 0;
  int dark = 0;
  double worst = 0.0;
  double worst_late = 0.0;
  double min_cw = 1e300;
  double max_cw = 0.0;
  while (gated < kWanted && draws < kMaxDraws) {
    ++draws;
    const RandomDelayConfig rc = random_delay_config(rng);
    const DelayKernel kernel = delay_kernel(rc.config);
    const PoleExpansion poles = find_poles(rc.config, kernel, default_search_region(rc.config, kernel));
    if (poles.size() == 0) continue;
    const double slowest = -poles.poles.front().real();
    if (slowest < 0.02 * rc.gamma) {
      ++dark;
      continue;
    }
    min_cw = std::min(min_cw, poles.captured_weight);
    max_cw = std::max(max_cw, poles.captured_weight);
    if (!(poles.captured_weight > 0.999)) continue;
    ++gated;
    const double t_end = std::min(20.0 / slowest, 200.0 / rc.gamma);
    const Trajectory tr = integrate_emission(rc.config, kernel, default_step(kernel, 0.0), t_end);
    for (std::size_t k = 0; k < tr.size(); ++k) {
      const double e = std::abs(amplitude_from_poles(poles, tr.time(k)) - tr[k]);
      worst = std::max(worst, e);
      if (tr.time(k) > 3.0 * kernel.max_delay()) worst_late = std::max(worst_late, e);
    }
  }
  std::ostringstream d;
  d << "configs with captured_weight > 0.999: " << gated << " of " << kWanted << " wanted ("
    << draws << " draws, " << dark << " near-dark skipped, captured_weight range ["
    << sci(min_cw) << ", " << sci(max_cw) << "])";
  if (gated > 0) {
    d << "; max_t|chi - beta| = " << sci(worst) << " (tol 1e-3), beyond 3 max delays "
      << sci(worst_late);
  }
  return {gated == kWanted && worst < 1e-3, d.str()};
}

// ---------------------------------------------------------------- 3
Outcome bound_state() {
  const double gamma_tau = 0.5;
  const double tau = gamma_tau;  // gamma = 1
  const GiantAtomConfig config(kPi / tau, 0.5, 0.0, {leg(0.0, 1.0, 0.0), leg(tau, 1.0, 0.0)});
  const Trajectory tr = integrate_emission(config, 60.0);
  const double expected = 1.0 / ((1.0 + gamma_tau) * (1.0 + gamma_tau));
  const double got = tr.population(tr.size() - 1);
  return {std::abs(got - expected) < 1e-3,
          "|beta(60/gamma)|^2 = " + format_real(got, 8) + ", expected 4/9 (tol 1e-3)"};
}

// ---------------------------------------------------------------- 4
GiantAtomConfig random_symmetric_config(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> gaps(n - 1);
  for (int i = 0; i < n / 2; ++i) gaps[i] = gaps[n - 2 - i] = 0.2 + 0.6 * unit(rng);
  std::vector<double> mags(n);
  std::vector<double> phases(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    mags[i] = mags[n - 1 - i] = 0.5 + unit(rng);
    phases[i] = phases[n - 1 - i] = 2.0 * kPi * unit(rng);
  }
  std::vector<Leg> legs;
  double x = 0.0;
  for (int m = 0; m < n; ++m) {
    legs.push_back(leg(x, mags[m], phases[m]));
    if (m + 1 < n) x += gaps[m];
  }
  return GiantAtomConfig(2.0 + 20.0 * unit(rng), 0.5, 0.0, std::move(legs));
}

Outcome p_symmetry() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  std::size_t samples = 0;
  for (int n : {2, 3, 4, 5, 3}) {
    const GiantAtomConfig config = random_symmetric_config(rng, n);
    const EmissionReport r = accumulate_directional(integrate_emission(config, 20.0), config);
    for (const auto& c : r.chirality) {
      if (!c) continue;
      worst = std::max(worst, std::abs(*c));
      ++samples;
    }
  }
  return {worst < 1e-10, "max|C(t)| = " + sci(worst) + " over " + std::to_string(samples) +
                             " samples in 5 configs (tol 1e-10)"};
}

// ---------------------------------------------------------------- 5
struct ChiralityRun {
  double max_abs = 0.0;
  double final_abs = 0.0;
};

ChiralityRun chirality_run(const GiantAtomConfig& config, double t_f) {
  const EmissionReport r = accumulate_directional(integrate_emission(config, t_f), config);
  ChiralityRun out;
  for (const auto& c : r.chirality) {
    if (c) out.max_abs = std::max(out.max_abs, std::abs(*c));
  }
  out.final_abs = r.chirality.back() ? std::abs(*r.chirality.back()) : 1.0;
  return out;
}

GiantAtomConfig unequal_pair_config() {
  // gamma = 2 Gamma c1 c2 = 1 with c1 = 3 c2.
  const double tau = 0.5;
  return GiantAtomConfig(kPi / tau, 1.0 / 6.0, 0.0, {leg(0.0, 3.0, 0.0), leg(tau, 1.0, 0.0)});
}

GiantAtomConfig uneven_triple_config() {
  const double tau = 0.25;
  return GiantAtomConfig(kPi / tau, 0.5, 0.0,
                         {leg(0.0, 1.0, 0.0), leg(tau, 1.0, 0.0), leg(4.0 * tau, 1.0, 0.0)});
}

Outcome finite_time_chirality() {
  const ChiralityRun a = chirality_run(unequal_pair_config(), 50.0);
  const ChiralityRun b = chirality_run(uneven_triple_config(), 50.0);
  const bool ok = a.max_abs > 0.05 && a.final_abs < 0.02 && b.max_abs > 0.05 && b.final_abs < 0.02;
  return {ok, "(a) max|C| = " + sci(a.max_abs) + ", |C(50/gamma)| = " + sci(a.final_abs) +
                  "; (b) max|C| = " + sci(b.max_abs) + ", |C(50/gamma)| = " + sci(b.final_abs) +
                  " (need > 0.05 and < 0.02)"};
}

// ---------------------------------------------------------------- 6
Outcome markovian_formulas() {
  double err_max = 0.0;
  double err_dark = 0.0;
  double err_n2 = 0.0;
  for (int n = 1; n <= 6; ++n) {
    for (int kp = -2; kp <= 2; ++kp) {
      for (int km = -2; km <= 2; ++km) {
        const double dz = kPi * (kp + km);
        const double dt = kPi * (kp - km);
        err_max = std::max(err_max, std::abs(effective_parameters(n, 1.0, dz, dt).decay - 0.5 * n * n));
      }
    }
    if (n < 2) continue;
    for (int kp = -2 * n; kp <= 2 * n; ++kp) {
      for (int km = -2 * n; km <= 2 * n; ++km) {
        if (kp % n == 0 || km % n == 0) continue;
        const double pp = 2.0 * kPi * kp / n;
        const double pm = 2.0 * kPi * km / n;
        const double g = effective_parameters(n, 1.0, 0.5 * (pp + pm), 0.5 * (pp - pm)).decay;
        err_dark = std::max(err_dark, std::abs(g));
      }
    }
  }
  for (int i = 0; i < 100; ++i) {
    const double dz = 2.0 * kPi * i / 100.0;
    const EffectiveParams p = effective_parameters(2, 1.0, dz, 0.0);
    err_n2 = std::max(err_n2, std::abs(p.decay - (1.0 + std::cos(dz))));
    err_n2 = std::max(err_n2, std::abs(p.lamb_shift + std::sin(dz)));
  }
  const bool ok = err_max < 1e-12 && err_dark < 1e-12 && err_n2 < 1e-12;
  return {ok, "max-decay err " + sci(err_max) + ", dark-point err " + sci(err_dark) +
                  ", N=2 reduction err " + sci(err_n2) + " (tol 1e-12)"};
}

// ---------------------------------------------------------------- 7
double distance_to_zero(double phi, int n) {
  // Zeros of sin^2(N phi/2)/sin^2(phi/2): phi = 2 pi k / N with N not dividing k.
  double best = 1e300;
  for (int k = 1; k < n; ++k) {
    const double z = 2.0 * kPi * k / n;
    best = std::min(best, std::abs(std::remainder(phi - z, 2.0 * kPi)));
  }
  return best;
}

bool same_chirality(const ClosedFormEmission& a, const ClosedFormEmission& b, double tol,
                    double sign) {
  if (a.dark || b.dark) return a.dark == b.dark;
  return std::abs(*a.chirality - sign * *b.chirality) <= tol;
}

Outcome chirality_diagram(std::size_t workers) {
  const int n = 3;
  DiagramSpec cf;
  cf.n = n;
  cf.dzeta = {0.0, 2.0 * kPi, 101};
  cf.dtheta = cf.dzeta;
  const SweepGrid g = run_diagram_sweep(cf, workers);
  std::size_t sym_bad = 0;
  for (std::size_t i = 0; i < g.axis1_values.size(); ++i) {
    for (std::size_t j = 0; j < g.axis2_values.size(); ++j) {
      const double dz = g.axis1_values[i];
      const double dt = g.axis2_values[j];
      const ClosedFormEmission e = closed_form_emission(n, dz, dt);
      if (!same_chirality(e, closed_form_emission(n, dt, dz), 1e-9, 1.0)) ++sym_bad;
      if (!same_chirality(e, closed_form_emission(n, dz, -dt), 1e-9, -1.0)) ++sym_bad;
      if (!same_chirality(e, closed_form_emission(n, dz + 2.0 * kPi, dt), 1e-9, 1.0)) ++sym_bad;
      if (!same_chirality(e, closed_form_emission(n, dz, dt + 2.0 * kPi), 1e-9, 1.0)) ++sym_bad;
      const auto& c = g.at(i, j).chirality;
      if (c.has_value() == e.dark || (c && *c != *e.chirality)) ++sym_bad;
    }
  }

  DiagramSpec dd;
  dd.n = n;
  dd.gamma_tau = 0.01;
  dd.t_f_over_tau = 100.0 * kPi;
  dd.dzeta = {0.0, 2.0 * kPi, 21};
  dd.dtheta = dd.dzeta;
  dd.method = SweepMethod::dde;
  const SweepGrid gd = run_diagram_sweep(dd, workers);
  double worst = 0.0;
  std::size_t compared = 0;
  for (std::size_t i = 0; i < gd.axis1_values.size(); ++i) {
    for (std::size_t j = 0; j < gd.axis2_values.size(); ++j) {
      const double dz = gd.axis1_values[i];
      const double dt = gd.axis2_values[j];
      if (distance_to_zero(dz + dt, n) <= 0.1 && distance_to_zero(dz - dt, n) <= 0.1) continue;
      const ClosedFormEmission e = closed_form_emission(n, dz, dt);
      const auto& c = gd.at(i, j).chirality;
      if (e.dark || !c) continue;
      worst = std::max(worst, std::abs(*c - *e.chirality));
      ++compared;
    }
  }
  const SweepCell dark = dde_diagram_cell(n, 0.01, 100.0 * kPi, 2.0 * kPi / 3.0, 0.0);

  const bool ok = sym_bad == 0 && worst < 0.05 && compared > 0 && dark.residual_population > 0.1;
  return {ok, "closed-form symmetry violations " + std::to_string(sym_bad) +
                  "; 21x21 DDE vs closed form max|dC| = " + sci(worst) + " over " +
                  std::to_string(compared) + " cells (tol 0.05); dark-point population " +
                  sci(dark.residual_population) + " (need > 0.1)"};
}

// ---------------------------------------------------------------- 8, 9
constexpr int kPlus = 5;
constexpr int kMinus = 4;

Outcome tunable_chirality() {
  const double tau = 0.01;  // gamma = 1
  const DarkStateDesign design = dark_state_design(kPlus, kMinus, 3, tau);
  const double ratio = design.omega_c / (2.0 * kPi / tau);
  double left_min = 1e300;
  double right_max = -1e300;
  bool undefined = false;
  auto run = [&](double omega) {
    const double dz = omega * tau;
    const SweepCell c = dde_diagram_cell(3, tau, 100.0 * kPi, dz, design.lambda * dz);
    if (!c.chirality) undefined = true;
    return c.chirality.value_or(0.0);
  };
  for (int k : {1, 2, 4}) left_min = std::min(left_min, run(k * design.omega_c / 5.0));
  for (int k : {1, 2, 5}) right_max = std::max(right_max, run(k * design.omega_c / 4.0));
  const bool ok = !undefined && left_min > 0.95 && right_max < -0.95 &&
                  std::abs(design.lambda - 1.0 / 9.0) < 1e-15 && std::abs(ratio - 1.5) < 1e-12;
  return {ok, "lambda = " + format_real(design.lambda, 6) + ", Omega_c/(2pi/tau) = " +
                  format_real(ratio, 6) + ", min C(left set) = " + format_real(left_min, 4) +
                  ", max C(right set) = " + format_real(right_max, 4) + " (need > 0.95, < -0.95)"};
}

Outcome non_markovian_degradation(std::size_t workers) {
  const double lambda = dark_state_design(kPlus, kMinus, 3, 1.0).lambda;
  // Omega / (2 pi / tau) from 0.01 to 2 in 200 steps.
  constexpr std::size_t kPoints = 200;
  std::vector<std::optional<double>> c(kPoints);
  parallel_for(kPoints, workers, [&](std::size_t i) {
    const double dz = 2.0 * kPi * 2.0 * static_cast<double>(i + 1) / kPoints;
    c[i] = dde_diagram_cell(3, 0.5, 100.0 * kPi, dz, lambda * dz).chirality;
  });
  double mx = 0.0;
  for (const auto& v : c) {
    if (v) mx = std::max(mx, std::abs(*v));
  }
  return {mx >= 0.35 && mx <= 0.65,
          "max|C| along the lambda = 1/9 line at gamma tau = 0.5: " + format_real(mx, 4) +
              " (band [0.35, 0.65])"};
}

// ---------------------------------------------------------------- 10, 11
GiantAtomConfig random_scattering_config(std::mt19937_64& rng, double gamma_e) {
  std::uniform_int_distribution<int> legs_dist(1, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = legs_dist(rng);
  std::vector<Leg> legs;
  double x = 0.0;
  for (int m = 0; m < n; ++m) {
    x += 0.1 + 2.0 * unit(rng);
    legs.push_back(leg(x, 0.2 + unit(rng), 2.0 * kPi * unit(rng)));
  }
  return GiantAtomConfig(1.0 + 10.0 * unit(rng), 0.1 + 2.0 * unit(rng), gamma_e, std::move(legs));
}

Outcome unitarity() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const GiantAtomConfig config = random_scattering_config(rng, 0.0);
    const double w = config.omega() * (0.5 + unit(rng));
    for (Incidence inc : {Incidence::left, Incidence::right}) {
      const ScatteringPoint p = steady_coefficients(config, {w, 1.0, inc});
      worst = std::max(worst, std::abs(p.reflection + p.transmission - 1.0));
    }
  }
  return {worst < 1e-10, "max|R + T - 1| = " + sci(worst) + " over 100 configs (tol 1e-10)"};
}

Outcome reciprocity() {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  int undefined = 0;
  for (int i = 0; i < 100; ++i) {
    const GiantAtomConfig config = random_scattering_config(rng, 0.0);
    const NonreciprocityReport r = nonreciprocity(config, config.omega() * (0.5 + unit(rng)));
    if (!r.NR) {
      ++undefined;
      continue;
    }
    worst = std::max(worst, std::abs(*r.NR));
  }
  return {worst < 1e-12, "max|NR| = " + sci(worst) + " over " + std::to_string(100 - undefined) +
                             " configs (tol 1e-12)"};
}

// ---------------------------------------------------------------- 12
Outcome isolator() {
  const double theta = kPi / 4.0;
  const double omega_d = 10.0;
  const OperatingPoint plus = two_leg_operating_point(theta, 1.0, +1, 0);
  const OperatingPoint minus = two_leg_operating_point(theta, 1.0, -1, 0);
  const GiantAtomConfig cp = two_leg_isolator(theta, 1.0, plus, omega_d);
  const GiantAtomConfig cm = two_leg_isolator(theta, 1.0, minus, omega_d);
  const ScatteringPoint left = steady_coefficients(cp, {omega_d, 1.0, Incidence::left});
  const ScatteringPoint right = steady_coefficients(cp, {omega_d, 1.0, Incidence::right});
  const NonreciprocityReport np = nonreciprocity(cp, omega_d);
  const NonreciprocityReport nm = nonreciprocity(cm, omega_d);
  const bool params = std::abs(plus.delta - 1.0) < 1e-12 && std::abs(plus.gamma_e - 1.0) < 1e-12 &&
                      std::abs(plus.phi - 0.75 * kPi) < 1e-12;
  const bool ok = params && left.reflection < 1e-12 && std::abs(left.transmission - 1.0) < 1e-12 &&
                  right.transmission < 1e-12 && np.NR && std::abs(*np.NR - 1.0) < 1e-12 && nm.NR &&
                  std::abs(*nm.NR + 1.0) < 1e-12;
  return {ok, "R = " + sci(left.reflection) + ", 1 - T_LR = " + sci(1.0 - left.transmission) +
                  ", T_RL = " + sci(right.transmission) + ", NR(+) = " +
                  (np.NR ? format_real(*np.NR, 15) : "undefined") + ", NR(-) = " +
                  (nm.NR ? format_real(*nm.NR, 15) : "undefined")};
}

// ---------------------------------------------------------------- 13
Outcome conservation() {
  const GiantAtomConfig config = unequal_pair_config();
  const EmissionReport r = accumulate_directional(integrate_emission(config, 50.0), config, true);
  double worst = 0.0;
  for (double b : r.balance) worst = std::max(worst, std::abs(b - 1.0));
  return {worst < 1e-3, "max|balance - 1| = " + sci(worst) + " over " + std::to_string(r.size()) +
                            " samples (tol 1e-3)"};
}

}  // namespace

std::vector<CheckResult> run_all(std::size_t workers, const Reporter& report) {
  struct Entry {
    int id;
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {1, "single-leg decay", 1.0, single_leg_decay},
      {2, "pole/DDE oracle", 30.0, pole_dde_oracle},
      {3, "bound-state trapping", 5.0, bound_state},
      {4, "P-symmetry null chirality", 30.0, p_symmetry},
      {5, "finite-time chirality, long-time vanishing", 60.0, finite_time_chirality},
      {6, "Markovian closed forms", 1.0, markovian_formulas},
      {7, "chirality diagram", 300.0, [workers] { return chirality_diagram(workers); }},
      {8, "tunable chirality", 120.0, tunable_chirality},
      {9, "non-Markovian degradation", 120.0, [workers] { return non_markovian_degradation(workers); }},
      {10, "scattering unitarity", 1.0, unitarity},
      {11, "reciprocity without dissipation", 1.0, reciprocity},
      {12, "isolator operating point", 1.0, isolator},
      {13, "probability conservation", 10.0, conservation},
  };

  std::vector<CheckResult> results;
  for (const Entry& e : entries) {
    CheckResult r;
    r.id = e.id;
    r.name = e.name;
    r.budget_seconds = e.budget;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = e.run();
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds > r.budget_seconds) {
      r.passed = false;
      r.detail += "; over time budget";
    }
    if (report) report(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result(const CheckResult& result) {
  std::ostringstream out;
  out << (result.passed ? "PASS " : "FAIL ") << (result.id < 10 ? "0" : "") << result.id << ' '
      << result.name << " | " << result.detail << " | " << format_real(result.seconds, 3)
      << " s (budget " << format_real(result.budget_seconds, 3) << " s)";
  return out.str();
}

}  // namespace giantwg::checks
