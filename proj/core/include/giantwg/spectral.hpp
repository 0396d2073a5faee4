#pragma once

#include <ostream>
#include <vector>

#include "giantwg/config.hpp"

namespace giantwg {

// Rectangle of the complex s-plane searched for characteristic roots,
// tiled by square cells of side `cell`.
struct SearchRegion {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;
  double cell = 0.0;

  bool contains(cplx s, double margin = 0.0) const {
    return s.real() >= re_min - margin && s.real() <= re_max + margin &&
           s.imag() >= im_min - margin && s.imag() <= im_max + margin;
  }
};

// Re(s) in [-4(W0 + gamma_e), 0], Im(s) in [-Omega - 6 W0, -Omega + 6 W0],
// cells no wider than min(W0 / 2, pi / (2 * max delay)).
SearchRegion default_search_region(const GiantAtomConfig& config, const DelayKernel& kernel);

// Residue expansion chi(t) = sum_n w_n exp(s_n t) of the emission amplitude.
struct PoleExpansion {
  std::vector<cplx> poles;             // sorted by decreasing real part
  std::vector<cplx> residue_weights;   // 1 / characteristic'(s_n)
  double captured_weight = 0.0;        // |sum_n w_n|
  double omega = 0.0;                  // parameters the roots were solved for
  double gamma_e = 0.0;

  std::size_t size() const { return poles.size(); }
};

// s + i*Omega + gamma_e + sum_n W_n exp(-s d_n)
cplx characteristic(cplx s, const DelayKernel& kernel, double omega, double gamma_e);

// 1 - sum_n W_n d_n exp(-s d_n)
cplx characteristic_derivative(cplx s, const DelayKernel& kernel);

inline constexpr double kDefaultRootTolerance = 1e-12;  // residual, in units of Omega
inline constexpr double kResidueCutoff = 1e-6;

// Finds every characteristic root inside `region` by damped Newton from the
// cell centres. `tol` bounds |characteristic(s_n)| / Omega. Roots whose
// residue weight is below kResidueCutoff are dropped. Throws NumericalError
// if Newton stalls inside a cell from every seed tried there.
PoleExpansion find_poles(const GiantAtomConfig& config, const DelayKernel& kernel,
                         const SearchRegion& region, double tol = kDefaultRootTolerance,
                         std::size_t workers = 1);

PoleExpansion find_poles(const GiantAtomConfig& config);

// sum_n w_n exp(s_n t), t >= 0.
cplx amplitude_from_poles(const PoleExpansion& expansion, double t);

// CSV: re_s,im_s,re_w,im_w followed by "# captured_weight=<value>".
void write_poles_csv(std::ostream& out, const PoleExpansion& expansion);

}  // namespace giantwg
