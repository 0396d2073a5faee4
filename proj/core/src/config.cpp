#include "giantwg/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace giantwg {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ConfigError(std::string(what) + " must be finite");
}

}  // namespace

GiantAtomConfig::GiantAtomConfig(double omega, double gamma_scale, double gamma_e,
                                 std::vector<Leg> legs)
    : omega_(omega), gamma_scale_(gamma_scale), gamma_e_(gamma_e), legs_(std::move(legs)) {
  require_finite(omega_, "omega");
  require_finite(gamma_scale_, "gamma_scale");
  require_finite(gamma_e_, "gamma_e");
  if (omega_ <= 0.0) throw ConfigError("omega must be positive");
  if (gamma_scale_ <= 0.0) throw ConfigError("gamma_scale must be positive");
  if (gamma_e_ < 0.0) throw ConfigError("gamma_e must be non-negative");
  if (legs_.empty()) throw ConfigError("at least one leg is required");

  for (const Leg& leg : legs_) {
    require_finite(leg.position, "leg position");
    require_finite(leg.coupling_magnitude, "coupling magnitude");
    require_finite(leg.coupling_phase, "coupling phase");
    if (leg.coupling_magnitude < 0.0) throw ConfigError("coupling magnitude must be non-negative");
    if (leg.leg_length && *leg.leg_length < 0.0) throw ConfigError("leg length must be non-negative");
  }

  std::stable_sort(legs_.begin(), legs_.end(),
                   [](const Leg& a, const Leg& b) { return a.position < b.position; });
  for (std::size_t i = 1; i < legs_.size(); ++i) {
    if (legs_[i].position - legs_[i - 1].position <= 0.0) {
      throw ConfigError("duplicate leg position " + std::to_string(legs_[i].position));
    }
  }
}

GiantAtomConfig GiantAtomConfig::with_gamma_e(double gamma_e) const {
  return GiantAtomConfig(omega_, gamma_scale_, gamma_e, legs_);
}

GiantAtomConfig build_config(const RawConfig& raw) {
  if (!raw.omega) throw ConfigError("missing omega");
  if (!raw.gamma_scale) throw ConfigError("missing gamma_scale");
  if (!raw.gamma_e) throw ConfigError("missing gamma_e");
  if (raw.legs.empty()) throw ConfigError("at least one leg is required");
  if (*raw.omega <= 0.0) throw ConfigError("omega must be positive");

  std::vector<Leg> legs;
  legs.reserve(raw.legs.size());
  for (const RawLeg& r : raw.legs) {
    if (r.phase.has_value() == r.length.has_value()) {
      throw ConfigError("each leg needs exactly one of a phase or a length");
    }
    Leg leg{r.position, r.magnitude, 0.0, std::nullopt};
    if (r.phase) {
      leg.coupling_phase = *r.phase;
    } else {
      const double len = *r.length;
      leg.coupling_phase = passive_phases(std::span(&len, 1), *raw.omega).front();
      leg.leg_length = len;
    }
    legs.push_back(leg);
  }
  return GiantAtomConfig(*raw.omega, *raw.gamma_scale, *raw.gamma_e, std::move(legs));
}

std::vector<double> passive_phases(std::span<const double> lengths, double omega) {
  if (!(omega > 0.0)) throw ConfigError("omega must be positive");
  std::vector<double> phases;
  phases.reserve(lengths.size());
  for (double l : lengths) {
    if (!(l >= 0.0)) throw ConfigError("leg length must be non-negative");
    phases.push_back(omega * l / kVelocity);
  }
  return phases;
}

GiantAtomConfig mirror_transform(const GiantAtomConfig& config) {
  // x -> x_1 + x_N - x keeps the occupied interval fixed, so the map is an
  // involution for any origin.
  const double span_sum = config.leftmost() + config.rightmost();
  std::vector<Leg> legs(config.legs().rbegin(), config.legs().rend());
  for (Leg& leg : legs) leg.position = span_sum - leg.position;
  return GiantAtomConfig(config.omega(), config.gamma_scale(), config.gamma_e(), std::move(legs));
}

GiantAtomConfig gauge_shift(const GiantAtomConfig& config, double phi0) {
  std::vector<Leg> legs = config.legs();
  for (Leg& leg : legs) leg.coupling_phase += phi0;
  return GiantAtomConfig(config.omega(), config.gamma_scale(), config.gamma_e(), std::move(legs));
}

GiantAtomConfig time_reverse(const GiantAtomConfig& config) {
  std::vector<Leg> legs = config.legs();
  for (Leg& leg : legs) leg.coupling_phase = -leg.coupling_phase;
  return GiantAtomConfig(config.omega(), config.gamma_scale(), config.gamma_e(), std::move(legs));
}

DelayKernel delay_kernel(const GiantAtomConfig& config) {
  struct Pair {
    double delay;
    cplx weight;
    double scale;
  };
  const auto& legs = config.legs();
  const double g = config.gamma_scale();

  std::vector<Pair> pairs;
  pairs.reserve(legs.size() * legs.size());
  for (const Leg& a : legs) {
    for (const Leg& b : legs) {
      pairs.push_back({std::abs(a.position - b.position) / kVelocity,
                       g * a.coupling() * std::conj(b.coupling()),
                       g * a.coupling_magnitude * b.coupling_magnitude});
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& a, const Pair& b) { return a.delay < b.delay; });

  DelayKernel kernel;
  std::size_t i = 0;
  while (i < pairs.size()) {
    const double head = pairs[i].delay;
    cplx sum = 0.0;
    double scale = 0.0;
    for (; i < pairs.size() && pairs[i].delay - head <= kDelayMergeTolerance; ++i) {
      sum += pairs[i].weight;
      scale += pairs[i].scale;
    }
    // (m, m') and (m', m) are complex conjugates, so each group is real.
    if (std::abs(sum.imag()) > 1e-14 * std::max(1.0, scale)) {
      throw std::logic_error("delay kernel weight is not real");
    }
    kernel.delays.push_back(kernel.delays.empty() ? 0.0 : head);
    kernel.weights.push_back(sum.real());
  }
  return kernel;
}

bool approx_equal(const DelayKernel& a, const DelayKernel& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (std::abs(a.delays[n] - b.delays[n]) > tol) return false;
    if (std::abs(a.weights[n] - b.weights[n]) > tol) return false;
  }
  return true;
}

}  // namespace giantwg
