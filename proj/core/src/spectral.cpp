#include "giantwg/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "giantwg/csv.hpp"
#include "giantwg/parallel.hpp"

namespace giantwg {

namespace {

constexpr int kMaxNewtonIterations = 60;
constexpr double kDedupDistance = 1e-8;  // units of Omega

enum class NewtonOutcome { converged, stalled, escaped };

struct NewtonResult {
  NewtonOutcome outcome;
  cplx root;
};

NewtonResult damped_newton(cplx s, const DelayKernel& kernel, double omega, double gamma_e,
                           double abs_tol, const SearchRegion& region) {
  const double escape = 2.0 * std::max(region.re_max - region.re_min, region.im_max - region.im_min);
  cplx f = characteristic(s, kernel, omega, gamma_e);
  for (int it = 0; it < kMaxNewtonIterations; ++it) {
    if (std::abs(f) < abs_tol) return {NewtonOutcome::converged, s};
    const cplx df = characteristic_derivative(s, kernel);
    if (df == 0.0) return {NewtonOutcome::stalled, s};
    const cplx step = f / df;

    bool improved = false;
    for (double lambda = 1.0; lambda > 1e-6; lambda *= 0.5) {
      const cplx trial = s - lambda * step;
      const cplx ft = characteristic(trial, kernel, omega, gamma_e);
      if (std::isfinite(std::abs(ft)) && std::abs(ft) < std::abs(f)) {
        s = trial;
        f = ft;
        improved = true;
        break;
      }
    }
    if (!improved) {
      return {std::abs(f) < abs_tol ? NewtonOutcome::converged : NewtonOutcome::stalled, s};
    }
    if (!region.contains(s, escape)) return {NewtonOutcome::escaped, s};
  }
  return {std::abs(f) < abs_tol ? NewtonOutcome::converged : NewtonOutcome::stalled, s};
}

}  // namespace

cplx characteristic(cplx s, const DelayKernel& kernel, double omega, double gamma_e) {
  cplx value = s + cplx(gamma_e, omega);
  for (std::size_t n = 0; n < kernel.size(); ++n) {
    value += kernel.weights[n] * std::exp(-s * kernel.delays[n]);
  }
  return value;
}

cplx characteristic_derivative(cplx s, const DelayKernel& kernel) {
  cplx value = 1.0;
  for (std::size_t n = 1; n < kernel.size(); ++n) {
    value -= kernel.weights[n] * kernel.delays[n] * std::exp(-s * kernel.delays[n]);
  }
  return value;
}

SearchRegion default_search_region(const GiantAtomConfig& config, const DelayKernel& kernel) {
  const double w0 = kernel.local_rate();
  const double rate = w0 + config.gamma_e();
  if (!(rate > 0.0)) throw std::invalid_argument("pole search needs a positive decay scale");
  const double half_height = 6.0 * (w0 > 0.0 ? w0 : rate);

  SearchRegion region;
  region.re_min = -4.0 * rate;
  region.re_max = 0.0;
  region.im_min = -config.omega() - half_height;
  region.im_max = -config.omega() + half_height;
  region.cell = 0.5 * (w0 > 0.0 ? w0 : rate);
  if (kernel.has_delays()) {
    region.cell = std::min(region.cell, std::numbers::pi / (2.0 * kernel.max_delay()));
  }
  return region;
}

PoleExpansion find_poles(const GiantAtomConfig& config, const DelayKernel& kernel,
                         const SearchRegion& region, double tol, std::size_t workers) {
  if (!(tol > 0.0)) throw std::invalid_argument("root tolerance must be positive");
  if (!(region.cell > 0.0) || !(region.re_max > region.re_min) || !(region.im_max > region.im_min)) {
    throw std::invalid_argument("degenerate search region");
  }
  const double omega = config.omega();
  const double gamma_e = config.gamma_e();
  const double scale = std::max(omega, 1e-300);
  const double abs_tol = tol * scale;

  const auto nx = static_cast<std::size_t>(std::ceil((region.re_max - region.re_min) / region.cell));
  const auto ny = static_cast<std::size_t>(std::ceil((region.im_max - region.im_min) / region.cell));
  const double hx = (region.re_max - region.re_min) / static_cast<double>(nx);
  const double hy = (region.im_max - region.im_min) / static_cast<double>(ny);

  struct CellResult {
    std::optional<cplx> root;
    bool unresolved = false;
  };
  std::vector<CellResult> cells(nx * ny);

  parallel_for(cells.size(), workers, [&](std::size_t idx) {
    const std::size_t ix = idx / ny;
    const std::size_t iy = idx % ny;
    const cplx corner(region.re_min + hx * static_cast<double>(ix),
                      region.im_min + hy * static_cast<double>(iy));
    const std::array<cplx, 5> offsets = {cplx(0.5, 0.5), cplx(0.25, 0.25), cplx(0.75, 0.25),
                                         cplx(0.25, 0.75), cplx(0.75, 0.75)};
    bool stalled_everywhere = true;
    for (const cplx& o : offsets) {
      const cplx seed = corner + cplx(o.real() * hx, o.imag() * hy);
      const NewtonResult r = damped_newton(seed, kernel, omega, gamma_e, abs_tol, region);
      if (r.outcome == NewtonOutcome::converged) {
        cells[idx].root = r.root;
        return;
      }
      const bool in_cell = std::abs(r.root.real() - seed.real()) <= hx &&
                           std::abs(r.root.imag() - seed.imag()) <= hy;
      if (r.outcome == NewtonOutcome::escaped || !in_cell) {
        stalled_everywhere = false;
        break;
      }
    }
    cells[idx].unresolved = stalled_everywhere;
  });

  PoleExpansion out;
  out.omega = omega;
  out.gamma_e = gamma_e;
  const double margin = 1e-9 * scale;
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    if (cells[idx].unresolved) {
      std::ostringstream msg;
      msg << "Newton stalled from every seed in cell re=[" << region.re_min + hx * double(idx / ny)
          << ", " << region.re_min + hx * double(idx / ny + 1) << "] im=["
          << region.im_min + hy * double(idx % ny) << ", " << region.im_min + hy * double(idx % ny + 1)
          << "]";
      throw NumericalError(msg.str());
    }
    const auto& root = cells[idx].root;
    if (!root || !region.contains(*root, margin)) continue;
    const bool duplicate = std::any_of(out.poles.begin(), out.poles.end(), [&](cplx p) {
      return std::abs(p - *root) <= kDedupDistance * scale;
    });
    if (!duplicate) out.poles.push_back(*root);
  }

  std::sort(out.poles.begin(), out.poles.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });

  std::vector<cplx> kept;
  cplx total = 0.0;
  for (cplx s : out.poles) {
    // Second pass: every reported root is re-verified.
    if (!(std::abs(characteristic(s, kernel, omega, gamma_e)) < abs_tol)) continue;
    const cplx w = 1.0 / characteristic_derivative(s, kernel);
    if (std::abs(w) < kResidueCutoff) continue;
    kept.push_back(s);
    out.residue_weights.push_back(w);
    total += w;
  }
  out.poles = std::move(kept);
  out.captured_weight = std::abs(total);
  return out;
}

PoleExpansion find_poles(const GiantAtomConfig& config) {
  const DelayKernel kernel = delay_kernel(config);
  return find_poles(config, kernel, default_search_region(config, kernel));
}

cplx amplitude_from_poles(const PoleExpansion& expansion, double t) {
  if (t < 0.0) throw std::invalid_argument("pole reconstruction needs t >= 0");
  cplx sum = 0.0;
  for (std::size_t n = 0; n < expansion.size(); ++n) {
    sum += expansion.residue_weights[n] * std::exp(expansion.poles[n] * t);
  }
  return sum;
}

void write_poles_csv(std::ostream& out, const PoleExpansion& expansion) {
  CsvWriter csv(out);
  csv.header("re_s,im_s,re_w,im_w");
  for (std::size_t n = 0; n < expansion.size(); ++n) {
    const cplx s = expansion.poles[n];
    const cplx w = expansion.residue_weights[n];
    csv.row({s.real(), s.imag(), w.real(), w.imag()});
  }
  out << "# captured_weight=" << format_real(expansion.captured_weight) << '\n';
}

}  // namespace giantwg
