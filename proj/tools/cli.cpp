#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <stdexcept>
#include <string>

#include "checks.hpp"
#include "giantwg/config_io.hpp"
#include "giantwg/csv.hpp"
#include "giantwg/dde.hpp"
#include "giantwg/emission.hpp"
#include "giantwg/markovian.hpp"
#include "giantwg/parallel.hpp"
#include "giantwg/spectral.hpp"
#include "giantwg/sweep.hpp"

namespace giantwg::cli {

namespace {

constexpr int kJobFailure = 1;
constexpr int kUsageError = 2;

// Bad user input discovered after argument parsing (config file, grid spec).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GiantAtomConfig read_config(const std::string& path) {
  try {
    return load_config(path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  auto number = [&](std::string_view s) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || v == 0) {
      throw InputError("grid must look like 101x101, got '" + text + "'");
    }
    return v;
  };
  if (x == std::string::npos) throw InputError("grid must look like 101x101, got '" + text + "'");
  const std::string_view view(text);
  return {number(view.substr(0, x)), number(view.substr(x + 1))};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Giant-atom waveguide simulator"};
  app.name("giantwg");
  app.require_subcommand(1);

  std::function<int()> job;
  std::size_t workers = default_workers();
  app.add_option("--workers", workers, "Worker threads for sweeps")->check(CLI::PositiveNumber);

  // emit
  auto* emit = app.add_subcommand("emit", "Integrate spontaneous emission and write I_L, I_R, C");
  std::string emit_config, emit_out, emit_traj, emit_field;
  double emit_tmax = 0.0;
  double emit_dt = 0.0;
  std::size_t field_nx = 81, field_nt = 81;
  emit->add_option("--config", emit_config, "Config file")->required();
  emit->add_option("--tmax", emit_tmax, "Final time")->required();
  emit->add_option("--dt", emit_dt, "Step (default: automatic)");
  emit->add_option("--out", emit_out, "Emission CSV")->required();
  emit->add_option("--trajectory", emit_traj, "Also write t,re_beta,im_beta,population");
  emit->add_option("--field-dump", emit_field, "Debug: write x,t,re_phi,im_phi on a coarse grid");
  emit->add_option("--field-nx", field_nx, "Field dump points in x")->check(CLI::Range(2, 100000));
  emit->add_option("--field-nt", field_nt, "Field dump points in t")->check(CLI::Range(2, 100000));
  emit->callback([&] {
    job = [&] {
      const GiantAtomConfig config = read_config(emit_config);
      const DelayKernel kernel = delay_kernel(config);
      const double dt = emit_dt > 0.0 ? emit_dt : default_step(kernel, config.gamma_e());
      const Trajectory tr = integrate_emission(config, kernel, dt, emit_tmax);
      const EmissionReport report = accumulate_directional(tr, config, true);
      auto file = open_output(emit_out);
      write_emission_csv(file, report);
      finish(file, emit_out);
      if (!emit_traj.empty()) {
        auto f = open_output(emit_traj);
        write_trajectory_csv(f, tr);
        finish(f, emit_traj);
      }
      if (!emit_field.empty()) {
        auto f = open_output(emit_field);
        write_field_csv(f, tr, config, field_nx, field_nt, config.rightmost() - config.leftmost());
        finish(f, emit_field);
      }
      return 0;
    };
  });

  // diagram
  auto* diagram = app.add_subcommand("diagram", "Chirality diagram over (dzeta, dtheta)");
  int diag_n = 3;
  double diag_gamma_tau = 0.01;
  double diag_tf = 100.0 * std::numbers::pi;
  std::string diag_grid = "101x101", diag_method = "closed_form", diag_out;
  diagram->add_option("--n", diag_n, "Number of legs")->check(CLI::PositiveNumber);
  diagram->add_option("--gamma-tau", diag_gamma_tau, "gamma * tau");
  diagram->add_option("--tf", diag_tf, "t_f / tau");
  diagram->add_option("--grid", diag_grid, "Grid as <dzeta points>x<dtheta points>");
  diagram->add_option("--method", diag_method, "closed_form or dde")
      ->check(CLI::IsMember({"closed_form", "dde"}));
  diagram->add_option("--out", diag_out, "Output CSV")->required();
  diagram->callback([&] {
    job = [&] {
      const auto [rows, cols] = parse_grid(diag_grid);
      DiagramSpec spec;
      spec.n = diag_n;
      spec.gamma_tau = diag_gamma_tau;
      spec.t_f_over_tau = diag_tf;
      spec.dzeta = {0.0, 2.0 * std::numbers::pi, rows};
      spec.dtheta = {0.0, 2.0 * std::numbers::pi, cols};
      spec.method = diag_method == "dde" ? SweepMethod::dde : SweepMethod::closed_form;
      const SweepGrid grid = run_diagram_sweep(spec, workers);
      auto file = open_output(diag_out);
      write_diagram_csv(file, spec, grid);
      finish(file, diag_out);
      return 0;
    };
  });

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Steady-state R, T and NR versus probe frequency");
  std::string spec_config, spec_out;
  double spec_min = 0.0, spec_max = 0.0;
  std::size_t spec_points = 201;
  spectrum->add_option("--config", spec_config, "Config file")->required();
  spectrum->add_option("--omega-min", spec_min, "Lowest probe frequency")->required();
  spectrum->add_option("--omega-max", spec_max, "Highest probe frequency")->required();
  spectrum->add_option("--points", spec_points, "Number of probe frequencies (0 = empty)");
  spectrum->add_option("--out", spec_out, "Output CSV")->required();
  spectrum->callback([&] {
    job = [&] {
      const GiantAtomConfig config = read_config(spec_config);
      const auto rows = run_spectrum_sweep(config, {spec_min, spec_max, spec_points}, workers);
      auto file = open_output(spec_out);
      write_spectrum_csv(file, rows);
      finish(file, spec_out);
      return 0;
    };
  });

  // poles
  auto* poles = app.add_subcommand("poles", "Characteristic roots and residue weights");
  std::string poles_config, poles_out;
  double poles_tol = kDefaultRootTolerance;
  poles->add_option("--config", poles_config, "Config file")->required();
  poles->add_option("--tol", poles_tol, "Root residual tolerance relative to Omega")
      ->check(CLI::PositiveNumber);
  poles->add_option("--out", poles_out, "Output CSV")->required();
  poles->callback([&] {
    job = [&] {
      const GiantAtomConfig config = read_config(poles_config);
      const DelayKernel kernel = delay_kernel(config);
      const PoleExpansion p =
          find_poles(config, kernel, default_search_region(config, kernel), poles_tol, workers);
      auto file = open_output(poles_out);
      write_poles_csv(file, p);
      finish(file, poles_out);
      return 0;
    };
  });

  // design dark
  auto* design = app.add_subcommand("design", "Design helpers");
  design->require_subcommand(1);
  auto* dark = design->add_subcommand("dark", "Dark-point tuning line and full-chirality frequencies");
  int kplus = 0, kminus = 0, design_n = 3;
  double design_d = 1.0, design_max = 0.0;
  std::string design_out;
  dark->add_option("--kplus", kplus, "k+")->required();
  dark->add_option("--kminus", kminus, "k-")->required();
  dark->add_option("--n", design_n, "Number of legs")->check(CLI::PositiveNumber);
  dark->add_option("--d", design_d, "Leg spacing (time units)");
  dark->add_option("--omega-max", design_max, "Upper frequency for the lists (default 2 Omega_c)");
  dark->add_option("--out", design_out, "Also write side,omega CSV");
  dark->callback([&] {
    job = [&] {
      DarkStateDesign d;
      try {
        d = dark_state_design(kplus, kminus, design_n, design_d);
      } catch (const ConfigError& e) {
        throw InputError(e.what());
      }
      const double top = design_max > 0.0 ? design_max : 2.0 * d.omega_c;
      const ChiralityFrequencies f = full_chirality_frequencies(kplus, kminus, design_n, design_d, top);
      const double unit = 2.0 * std::numbers::pi / design_d;
      out << std::left << std::setw(26) << "lambda" << format_real(d.lambda) << '\n';
      out << std::setw(26) << "omega_c" << format_real(d.omega_c) << '\n';
      out << std::setw(26) << "omega_c / (2 pi / d)" << format_real(d.omega_c / unit) << '\n';
      auto list = [&](const char* label, const std::vector<double>& v) {
        out << std::setw(26) << label;
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << format_real(v[i]);
        out << '\n';
      };
      list("left-complete (C=+1)", f.left);
      list("right-complete (C=-1)", f.right);
      if (!design_out.empty()) {
        auto file = open_output(design_out);
        CsvWriter csv(file);
        csv.comment("lambda=" + format_real(d.lambda) + " omega_c=" + format_real(d.omega_c));
        csv.header("side,omega");
        for (double w : f.left) file << "left," << format_real(w) << '\n';
        for (double w : f.right) file << "right," << format_real(w) << '\n';
        finish(file, design_out);
      }
      return 0;
    };
  });

  // check
  auto* check = app.add_subcommand("check", "Run the built-in acceptance suite");
  check->callback([&] {
    job = [&] {
      std::size_t failed = 0;
      const auto results = checks::run_all(workers, [&](const checks::CheckResult& r) {
        out << checks::format_result(r) << std::endl;
        if (!r.passed) ++failed;
      });
      out << (results.size() - failed) << "/" << results.size() << " checks passed\n";
      return failed == 0 ? 0 : kJobFailure;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    return job ? job() : 0;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kJobFailure;
  }
}

}  // namespace giantwg::cli
