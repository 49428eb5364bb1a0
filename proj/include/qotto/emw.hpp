#pragma once
#include <array>
#include <functional>
#include <vector>

#include "qotto/thermo.hpp"

namespace qotto {

// Work maximization over the cycle controls: compression ratio and the two
// endpoint interaction shifts. Searches in (log kappa, eps_i, eps_f) with a
// Latin-hypercube multistart feeding a bounded Nelder-Mead.

struct EmwSpec {
  SpectrumAt provider;              // endpoint spectra, shared by both trap settings
  std::function<double(double)> gt_of_eps;  // shift -> coupling, for reporting
  double beta_c = 10.0;
  double ratio = 0.3;               // beta_h / beta_c, in (0, 1)
  double kappa_lo = 0.01, kappa_hi = 0.99;
  double eps_hi = 0.0;              // upper bound of the shift axis (0 pins the coupling)
  int starts = 8;
  int maxfev = 400;                 // per start
  unsigned seed = 42;
};

struct EmwStart {
  std::array<double, 3> x0{};  // log kappa, eps_i, eps_f
  double w = 0.0;              // work reached from this start
};

struct EmwPoint {
  double ratio = 0, beta_h = 0;
  double kappa = 0, eps_i = 0, eps_f = 0;
  double gt_i = 0, gt_f = 0;
  double w = 0, eta = 0;
  double eta_otto = 0, eta_ca = 0, eta_carnot = 0;
  bool quality = false;  // a genuine engine optimum (|W| above noise) was found
  int evals = 0;
  std::vector<EmwStart> record;  // every start and the work it reached
};

EmwPoint maximize_work(const EmwSpec& es, const std::vector<double>* warm = nullptr);

// sweep of bath-temperature ratios, warm-starting each point from the last
std::vector<EmwPoint> emw_curve(const EmwSpec& es, const std::vector<double>& ratios);

}  // namespace qotto
