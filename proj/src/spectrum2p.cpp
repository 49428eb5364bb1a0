#include "qotto/spectrum2p.hpp"

#include <cmath>
#include <stdexcept>

#include "qotto/rootfind.hpp"
#include "qotto/special.hpp"

namespace qotto {

Statistics parse_statistics(const std::string& s) {
  if (s == "boson" || s == "bosons" || s == "b") return Statistics::boson;
  if (s == "dist" || s == "distinguishable" || s == "d") return Statistics::dist;
  throw std::invalid_argument("unknown statistics: " + s);
}

std::string to_string(Statistics s) {
  return s == Statistics::boson ? "boson" : "dist";
}

double busch_gt_of_energy(double e_rel) {
  const double a = -0.5 * e_rel + 0.75;
  const double b = -0.5 * e_rel + 0.25;
  const int sb = gamma_sign(b);
  if (sb == 0) return 0.0;  // pole of the denominator: noninteracting level
  const int sa = gamma_sign(a);
  if (sa == 0) throw std::domain_error("busch_gt_of_energy: odd-parity energy");
  return -2.0 * sa * sb * std::exp(log_gamma(a) - log_gamma(b));
}

double busch_epsilon(int nu, double gt) {
  if (nu < 0) throw std::invalid_argument("busch_epsilon: nu >= 0");
  if (gt < 0.0) throw std::invalid_argument("busch_epsilon: repulsive branch only");
  if (gt == 0.0) return 0.0;
  const double e0 = 2.0 * nu + 0.5;
  const double lo = e0 + 1e-13, hi = e0 + 1.0 - 1e-13;
  // residual scaled for large couplings
  const double scale = std::max(1.0, gt);
  auto f = [&](double e) { return (busch_gt_of_energy(e) - gt) / scale; };
  return brent(f, lo, hi) - e0;
}

double busch_gt_of_epsilon(int nu, double eps) {
  if (eps < 0.0 || eps >= 1.0) throw std::invalid_argument("busch_gt_of_epsilon: eps in [0,1)");
  return busch_gt_of_energy(2.0 * nu + 0.5 + eps);
}

double lambda_ratio(int n, int nu, double kappa, double eps_i, double eps_f) {
  const double base = n + 2.0 * nu + 1.0;
  return kappa * (base + eps_i) / (base + eps_f);
}

std::vector<Level2P> levels2p(Statistics s, double gt, double omega, int max_quanta) {
  // relative level r: energy r + 1/2 + eps_r, with eps_r = 0 for odd r
  std::vector<double> eps_r(max_quanta + 1, 0.0);
  for (int r = 0; r <= max_quanta; r += 2) eps_r[r] = busch_epsilon(r / 2, gt);
  std::vector<Level2P> out;
  out.reserve((max_quanta + 1) * (max_quanta + 2) / 2);
  for (int q = 0; q <= max_quanta; ++q) {
    for (int r = 0; r <= q; ++r) {
      if (s == Statistics::boson && (r % 2)) continue;
      const int n = q - r;
      out.push_back({n, r, omega * (n + r + 1.0 + eps_r[r])});
    }
  }
  return out;
}

}  // namespace qotto
