#pragma once
#include <string>
#include <vector>

namespace qotto {

enum class Statistics { boson, dist };

Statistics parse_statistics(const std::string& s);
std::string to_string(Statistics s);

// Two contact-interacting particles in a 1D harmonic trap: the relative
// even-parity levels solve  -g = 2 Gamma(-E/2+3/4) / Gamma(-E/2+1/4)
// with E the relative energy in trap units and g the dimensionless coupling.

// coupling that places an even relative level at energy e_rel
double busch_gt_of_energy(double e_rel);

// shift eps in [0,1) of even level nu: E = 2 nu + 1/2 + eps  (repulsive branch)
double busch_epsilon(int nu, double gt);

// inverse of the above at fixed nu (closed form)
double busch_gt_of_epsilon(int nu, double eps);

// energy of even relative level nu
inline double busch_energy(int nu, double gt) { return 2.0 * nu + 0.5 + 0.0 + busch_epsilon(nu, gt); }

// ratio of a level's energy after/before compression, times kappa
double lambda_ratio(int n, int nu, double kappa, double eps_i, double eps_f);

// Full two-particle level with center-of-mass quanta n and relative index r.
// Even r: interacting even-parity level nu = r/2 with shift eps.
// Odd  r: parity-protected odd level, untouched by the contact term.
struct Level2P {
  int n, r;
  double e;  // absolute energy at the given trap frequency
};

// Labeled level list at trap frequency omega, all n + r <= max_quanta,
// in a fixed (quanta, r) enumeration order suitable for adiabatic transport.
std::vector<Level2P> levels2p(Statistics s, double gt, double omega, int max_quanta);

}  // namespace qotto
