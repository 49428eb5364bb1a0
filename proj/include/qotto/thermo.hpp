#pragma once
#include <functional>
#include <string>
#include <vector>

#include "qotto/spectrum2p.hpp"

namespace qotto {

// Energy levels with degeneracy weights and transport labels. Order is the
// transport pairing: entry k of the initial spectrum evolves into entry k of
// the final one during a work stroke.
struct LabeledSpectrum {
  std::vector<double> e;
  std::vector<double> w;
  std::vector<std::string> label;
  double omega = 1.0;  // trap frequency; sets the ladder spacing for tail bounds
  std::size_t size() const { return e.size(); }
};

struct ThermalState {
  double beta = 0.0;
  double z = 0.0;        // partition sum over the truncated spectrum
  double tail = 0.0;     // estimated relative weight beyond the truncation
  std::vector<double> p;
};

// Boltzmann populations. Throws AccuracyError if the estimated truncation
// tail exceeds 1e-9 of Z (ladder bound from the level count and spacing).
ThermalState thermal_state(const LabeledSpectrum& s, double beta);

struct CycleResult {
  double wc = 0, we = 0, w = 0, qh = 0, qc = 0;
  double eta = 0;            // |W|/Q_h, engine mode only
  double first_law_rel = 0;  // |W + Qh + Qc| / max(|W|,|Qh|,|Qc|)
  double form_gap = 0;       // |stroke-difference W - double-sum W|
  bool engine = false;       // W < 0 and Q_h > 0
};

// Four-stroke cycle between spectra at the initial and final trap settings.
// Populations thermalize at beta_c on si and beta_h on sf and are frozen
// during the strokes; the two spectra must carry identical labels.
CycleResult run_cycle(const LabeledSpectrum& si, const LabeledSpectrum& sf,
                      double beta_c, double beta_h);

double curzon_ahlborn(double beta_h, double beta_c);
inline double otto_eta(double kappa) { return 1.0 - kappa; }

// Adaptive analytic two-particle spectrum: extends the level list until the
// Boltzmann tail at the hottest bath is below the thermal_state bound.
LabeledSpectrum spectrum_n2(Statistics s, double gt, double omega, double beta_min);

// Noninteracting N-particle spectra (multiset levels for bosons, ordered
// product levels folded into degeneracy weights for distinguishable).
LabeledSpectrum spectrum_noninteracting(int n, Statistics s, double omega, double beta_min);

// W for the noninteracting cycle at each N.
std::vector<double> noninteracting_work_vs_N(const std::vector<int>& ns, Statistics s,
                                             double kappa, double beta_c, double beta_h);

// ---- interaction-landscape sweeps -----------------------------------------

// spectra provider: eps-axis value -> endpoint spectrum at given trap omega
using SpectrumAt = std::function<LabeledSpectrum(double eps, double omega)>;

// analytic two-particle provider; eps parametrizes the relative ground shift
SpectrumAt provider_n2(Statistics st, double beta_min);

// level-window depth (in trap quanta) keeping the Boltzmann tail under the
// thermal_state bound at inverse temperature * frequency = beta_omega
int tail_window(double beta_omega);

enum class Polish { none, local3, nm };

struct MapSpec {
  int nx = 60, ny = 60;
  double eps_i_max = 0.9, eps_f_max = 0.9;  // axis upper bounds (uniform from 0)
  double kappa = 1.0 / 3.0;
  double beta_c = 10.0, beta_h = 1.0;
  Polish polish = Polish::nm;  // local3 suits expensive (diagonalization-backed) providers
};

struct MapPoint {
  double eps_i = 0, eps_f = 0, value = 0;
};

struct MapResult {
  std::vector<double> eps_i, eps_f;        // axis values
  std::vector<double> eta_ratio, w_ratio;  // row-major [i*ny+j], engine cells only
  std::vector<char> engine;                // 1 engine, 0 dissipator/idle
  double w_otto = 0;
  MapPoint max_eta, max_w;                 // polished maxima
  int dissipator_cells = 0;
};

MapResult heatmap(const MapSpec& ms, const SpectrumAt& provider, int threads = 1);

}  // namespace qotto
