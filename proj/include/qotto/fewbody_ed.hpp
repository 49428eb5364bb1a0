#pragma once
#include <Eigen/Dense>
#include <vector>

#include "qotto/spectrum2p.hpp"
#include "qotto/thermo.hpp"

namespace qotto {

// Energy-truncated oscillator-basis diagonalization for 2 and 3 particles
// with a contact interaction. Units: m = hbar = omega = 1 inside the solver;
// gt is the dimensionless coupling of the two-body relative problem, the bare
// 1D delta strength is sqrt(2)*gt in these units. Spectra scale linearly with
// the trap frequency at fixed gt.

struct BasisSpec {
  int n = 2;
  int e_cut = 20;                      // keep states with total quanta <= e_cut
  Statistics stat = Statistics::dist;  // boson: symmetric sector; dist: full product basis
};

inline constexpr int kEdDimCap = 20000;
inline constexpr double kGtSoftMax = 30.0;  // truncation error grows noticeably beyond
inline constexpr double kGtHardMax = 50.0;  // inversion tables / optimizers stop here

int basis_dimension(const BasisSpec& s);

// <a b| delta(x1 - x2) |c d> in the product oscillator basis
double delta_matrix_element(int a, int b, int c, int d);

// delta kernel over ordered pairs restricted to a + b <= e_cut
int pair_count(int e_cut);
int pair_index(int e_cut, int a, int b);
Eigen::MatrixXd pair_delta_matrix(int e_cut);

Eigen::MatrixXd build_hamiltonian(const BasisSpec& s, double gt);

struct EdSpectrum {
  BasisSpec spec;
  double gt = 0.0;
  std::vector<double> e;     // ascending
  std::vector<double> conv;  // per-level shift when rerun at e_cut + 4 (empty if not requested)
  int dim = 0;
};

// estimate = true reruns at e_cut + 4 and records per-level shifts.
// Honors QOTTO_CACHE_DIR as a JSON result cache.
EdSpectrum diagonalize(const BasisSpec& s, double gt, bool estimate = false);

// three fermions: contact term vanishes, spectrum is exact combinatorics
std::vector<double> anti3_levels(int e_cut);

double lanczos_ground(const Eigen::MatrixXd& h, int maxit = 200, double tol = 1e-11);

// ground-state interaction shift of three bosons in trap units: E0(gt) - E0(0)
double epsilon_3p(int e_cut, double gt);
// inverse map via a cached monotone table per cutoff
double gt_of_eps3p(int e_cut, double eps);
double eps3p_max(int e_cut);  // shift reached at gt = kGtHardMax

// shell-count helpers at gt = 0 (levels with total quanta <= w)
int count_product3_upto(int w);
int count_sym3_upto(int w);
int count_anti3_upto(int w);

// Transport-ready labeled spectra at trap frequency omega, trimmed to the
// level count found within `window` trap quanta of the ground state at gt = 0
// so label sets agree across couplings and cutoffs.
//   rank:   full product spectrum in global energy order   (labels r...)
//   sector: symmetric + antisymmetric + mixed towers       (s... a... m..., mixed weight 2)
//   boson3: symmetric sector only                          (labels s...)
LabeledSpectrum ed_spectrum_rank(int e_cut, double gt, double omega, int window = 16);
LabeledSpectrum ed_spectrum_sector(int e_cut, double gt, double omega, int window = 16);
LabeledSpectrum ed_spectrum_boson3(int e_cut, double gt, double omega, int window = 16);

enum class Transport3 { rank, sector, boson };
Transport3 parse_transport3(const std::string& s);
std::string to_string(Transport3 m);

// provider over the three-body ground-shift axis. e_cut = 0 selects a
// coupling-adaptive cutoff (boson mode only: 32 / 40 / 48 as the shift grows).
SpectrumAt provider_ed3(Transport3 mode, int e_cut, int window);

}  // namespace qotto
