#pragma once
// Finite-time work strokes for the two-particle engine: Crank-Nicolson
// propagation of the centre-of-mass and relative coordinates on a uniform
// grid while the trap frequency and the contact coupling are ramped together.

#include <string>
#include <vector>

namespace qotto {

enum class RampKind { polynomial, scale_invariant_slave };

// quintic switch f(t) = f0 + df (10u^3 - 15u^4 + 6u^5), flat to second order
// at both ends; the slave kind follows a host trap ramp as f0 sqrt(w(t)/w0)
struct RampProtocol {
  double f0 = 0.0, f_tau = 0.0, tau = 1.0;
  RampKind kind = RampKind::polynomial;
  double host0 = 1.0, host_tau = 1.0;  // trap ramp endpoints, slave kind only
};

RampProtocol make_ramp(double f0, double f_tau, double tau);
RampProtocol make_slave_ramp(double f0, double host0, double host_tau, double tau);
double ramp_value(const RampProtocol& p, double t);

struct GridSpec {
  double half_width = 12.0;  // in oscillator lengths of the initial trap
  int points = 2049;         // odd, so the contact term sits on a node
  double dt = 1e-3;
};

// lowest-k levels of -psi''/2 + w^2 x^2/2 + c delta(x) with box ends; e holds
// the working-resolution values, e_rich the doubled-grid extrapolation
struct GridLevels {
  std::vector<double> e, e_rich;
};
GridLevels grid_levels(const GridSpec& g, double omega, double coef, int k);

// Boltzmann weights over the lowest grid eigenstates, cut once the skipped
// tail drops below `floor` of the sum and renormalized; energy is the
// weighted sum of the extrapolated levels
struct ThermalSet {
  std::vector<double> p;
  double energy = 0.0;
};
ThermalSet grid_thermal(const GridSpec& g, double omega, double coef, double beta,
                        double floor = 1e-6);

struct StrokeResult {
  double e_end = 0.0;       // weighted <H(tau)> evaluated with grid operators
  double e_end_proj = 0.0;  // same through the end eigenbasis (diagnostic)
  double norm_drift = 0.0, leakage = 0.0;
  int modes = 0;
  std::vector<double> p_end;  // populations projected onto the end eigenbasis
};

// propagate the lowest p0.size() eigenstates of the t=0 Hamiltonian with
// weights p0 under the two ramps (equal tau); mixed-state energies are
// population-weighted sums over the independently evolved pure states
StrokeResult propagate_stroke(const GridSpec& g, const RampProtocol& omega_ramp,
                              const RampProtocol& coef_ramp, const std::vector<double>& p0);

enum class ProtocolKind { optimal, scale_invariant, noninteracting };
ProtocolKind parse_protocol(const std::string& s);
std::string to_string(ProtocolKind k);

struct FtConfig {
  double kappa = 1.0 / 3.0;
  double beta_c = 10.0;
  double beta_h = 1.0 / 3.0;  // explicit choice; never inferred from kappa
  double gt_i = 1.95, gt_f = 1.4;
  GridSpec grid;
  double weight_floor = 1e-6;  // per coordinate
};

struct PropagationResult {
  double tau = 0.0;
  ProtocolKind kind = ProtocolKind::optimal;
  double e1 = 0, e2 = 0, e3 = 0, e4 = 0;  // cycle corners, CM + relative
  double w_tau = 0, w_ad = 0, w_irr = 0;
  double qh = 0, qc = 0;
  double eta_tau = 0, eta_ad = 0, p_eff = 0;
  double norm_drift = 0, leakage = 0;  // worst over the four strokes
  int modes_cold = 0, modes_hot = 0;   // propagated states, CM + relative
  bool engine = false;
};

// one compression + hot thermalization + expansion pass at stroke time tau
PropagationResult finite_time_cycle(const FtConfig& cfg, double tau, ProtocolKind kind);

// taus ascending; results tau-major in the given kind order, with the
// protocol-independent CM strokes computed once per tau
std::vector<PropagationResult> tau_sweep(const FtConfig& cfg, const std::vector<double>& taus,
                                         const std::vector<ProtocolKind>& kinds);

}  // namespace qotto
