#include "qotto/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <mutex>

#include <Eigen/Dense>

#include "qotto/errors.hpp"
#include "qotto/lapack.hpp"

namespace qotto {

namespace {

using cplx = std::complex<double>;

constexpr int kSolve = 64;          // eigenpairs kept per static configuration
constexpr double kLeakBound = 1e-12;
constexpr double kDriftBound = 1e-8;

void check_grid(const GridSpec& g) {
  if (!(g.half_width >= 6.0)) throw ValidationError("grid: half_width >= 6 required");
  if (g.points < 129 || g.points % 2 == 0)
    throw ValidationError("grid: points must be odd and >= 129");
  if (!(g.dt > 0.0 && g.dt <= 0.05)) throw ValidationError("grid: dt in (0, 0.05] required");
}

// interior-node tridiagonal Hamiltonian: n = points-2 unknowns, box ends
struct GridHam {
  int n = 0, ic = 0;  // ic: index of x = 0
  double dx = 0, k0 = 0, h1 = 0;
  std::vector<double> x, x2;
};

GridHam make_ham(const GridSpec& g) {
  GridHam h;
  h.n = g.points - 2;
  h.dx = 2.0 * g.half_width / (g.points - 1);
  h.k0 = 1.0 / (h.dx * h.dx);
  h.h1 = -0.5 * h.k0;
  h.ic = (g.points - 1) / 2 - 1;
  h.x.resize(h.n);
  h.x2.resize(h.n);
  for (int j = 0; j < h.n; ++j) {
    h.x[j] = -g.half_width + h.dx * (j + 1);
    h.x2[j] = h.x[j] * h.x[j];
  }
  return h;
}

struct EigData {
  std::vector<double> e, e_rich;
  Eigen::MatrixXd vecs;  // columns are l2-normalized interior eigenvectors
};

std::vector<double> tridiag_levels(const GridSpec& g, double omega, double coef, int k,
                                   Eigen::MatrixXd* vecs) {
  const GridHam h = make_ham(g);
  std::vector<double> d(h.n), e(h.n - 1, h.h1);
  for (int j = 0; j < h.n; ++j) d[j] = h.k0 + 0.5 * omega * omega * h.x2[j];
  d[h.ic] += coef / h.dx;
  Eigen::VectorXd vals;
  Eigen::MatrixXd v;
  la::eig_tridiag_lowest(d, e, k, vals, v);
  if (vecs) *vecs = std::move(v);
  return std::vector<double>(vals.data(), vals.data() + vals.size());
}

std::mutex eig_mutex;

const EigData& static_eig(const GridSpec& g, double omega, double coef) {
  static std::map<std::string, EigData> cache;
  char key[128];
  std::snprintf(key, sizeof key, "%d|%a|%a|%a", g.points, g.half_width, omega, coef);
  std::lock_guard<std::mutex> lock(eig_mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  EigData ed;
  const int k = std::min(kSolve, g.points - 2);
  ed.e = tridiag_levels(g, omega, coef, k, &ed.vecs);
  GridSpec fine = g;
  fine.points = 2 * g.points - 1;  // same box, halved spacing
  const std::vector<double> ef = tridiag_levels(fine, omega, coef, k, nullptr);
  ed.e_rich.resize(k);
  for (int j = 0; j < k; ++j) ed.e_rich[j] = (4.0 * ef[j] - ed.e[j]) / 3.0;
  return cache.emplace(key, std::move(ed)).first->second;
}

double quintic(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }

// single Crank-Nicolson midpoint step shared by a batch of states: the
// factorization of I + i dt/2 H(t_mid) is built once and reused per state
struct CnWork {
  std::vector<cplx> adiag, cp, iw, rhs;
};

void cn_step(const GridHam& h, double alpha, double omega, double coef,
             std::vector<std::vector<cplx>>& psi, CnWork& w) {
  const int n = h.n;
  w.adiag.resize(n);
  w.cp.resize(n);
  w.iw.resize(n);
  w.rhs.resize(n);
  const cplx a1(0.0, alpha * h.h1);
  const double w2 = 0.5 * omega * omega;
  for (int j = 0; j < n; ++j) {
    double v = h.k0 + w2 * h.x2[j];
    if (j == h.ic) v += coef / h.dx;
    w.adiag[j] = cplx(1.0, alpha * v);
  }
  w.iw[0] = 1.0 / w.adiag[0];
  w.cp[0] = a1 * w.iw[0];
  for (int j = 1; j < n; ++j) {
    w.iw[j] = 1.0 / (w.adiag[j] - a1 * w.cp[j - 1]);
    w.cp[j] = a1 * w.iw[j];
  }
  for (auto& p : psi) {
    cplx* s = p.data();
    w.rhs[0] = std::conj(w.adiag[0]) * s[0] - a1 * s[1];
    for (int j = 1; j < n - 1; ++j)
      w.rhs[j] = std::conj(w.adiag[j]) * s[j] - a1 * (s[j - 1] + s[j + 1]);
    w.rhs[n - 1] = std::conj(w.adiag[n - 1]) * s[n - 1] - a1 * s[n - 2];
    s[0] = w.rhs[0] * w.iw[0];
    for (int j = 1; j < n; ++j) s[j] = (w.rhs[j] - a1 * s[j - 1]) * w.iw[j];
    for (int j = n - 2; j >= 0; --j) s[j] -= w.cp[j] * s[j + 1];
  }
}

double grid_energy(const GridHam& h, double omega, double coef, const std::vector<cplx>& s) {
  const double w2 = 0.5 * omega * omega;
  double acc = 0.0;
  for (int j = 0; j < h.n; ++j) {
    double v = h.k0 + w2 * h.x2[j];
    if (j == h.ic) v += coef / h.dx;
    cplx hs = v * s[j];
    if (j > 0) hs += h.h1 * s[j - 1];
    if (j + 1 < h.n) hs += h.h1 * s[j + 1];
    acc += std::real(std::conj(s[j]) * hs);
  }
  return acc * h.dx;
}

struct BatchDiag {
  double drift = 0, leak = 0;
};

void check_batch(const GridHam& h, const std::vector<std::vector<cplx>>& psi, BatchDiag& d,
                 bool fatal) {
  for (const auto& s : psi) {
    double nrm = 0;
    for (const cplx& z : s) nrm += std::norm(z);
    d.drift = std::max(d.drift, std::abs(nrm * h.dx - 1.0));
    d.leak = std::max(d.leak, std::max(std::norm(s[0]), std::norm(s[h.n - 1])));
  }
  if (!fatal) return;
  if (d.leak > kLeakBound)
    throw AccuracyError("stroke: boundary leakage above 1e-12; increase half_width or points");
  if (d.drift > kDriftBound)
    throw AccuracyError("stroke: norm drift above 1e-8; reduce dt");
}

}  // namespace

RampProtocol make_ramp(double f0, double f_tau, double tau) {
  if (!(tau > 0.0)) throw ValidationError("ramp: tau > 0 required");
  return {f0, f_tau, tau, RampKind::polynomial, 1.0, 1.0};
}

RampProtocol make_slave_ramp(double f0, double host0, double host_tau, double tau) {
  if (!(tau > 0.0)) throw ValidationError("ramp: tau > 0 required");
  if (!(host0 > 0.0) || !(host_tau > 0.0))
    throw ValidationError("ramp: slave kind needs positive trap endpoints");
  return {f0, f0 * std::sqrt(host_tau / host0), tau, RampKind::scale_invariant_slave, host0,
          host_tau};
}

double ramp_value(const RampProtocol& p, double t) {
  if (!(t >= 0.0 && t <= p.tau)) throw ValidationError("ramp_value: t outside [0, tau]");
  const double s = quintic(t / p.tau);
  if (p.kind == RampKind::polynomial) return p.f0 + (p.f_tau - p.f0) * s;
  const double host = p.host0 + (p.host_tau - p.host0) * s;
  return p.f0 * std::sqrt(host / p.host0);
}

GridLevels grid_levels(const GridSpec& g, double omega, double coef, int k) {
  check_grid(g);
  if (!(omega > 0.0)) throw ValidationError("grid_levels: omega > 0 required");
  if (coef < 0.0) throw ValidationError("grid_levels: repulsive coupling only");
  if (k < 1 || k > std::min(kSolve, g.points - 2))
    throw ValidationError("grid_levels: k out of range");
  const EigData& ed = static_eig(g, omega, coef);
  GridLevels out;
  out.e.assign(ed.e.begin(), ed.e.begin() + k);
  out.e_rich.assign(ed.e_rich.begin(), ed.e_rich.begin() + k);
  return out;
}

ThermalSet grid_thermal(const GridSpec& g, double omega, double coef, double beta,
                        double floor) {
  check_grid(g);
  if (!(beta > 0.0)) throw ValidationError("grid_thermal: beta > 0 required");
  if (!(floor >= 1e-12 && floor <= 1e-2))
    throw ValidationError("grid_thermal: floor in [1e-12, 1e-2] required");
  const EigData& ed = static_eig(g, omega, coef);
  const int k = static_cast<int>(ed.e_rich.size());
  std::vector<double> w(k);
  double z = 0.0;
  for (int j = 0; j < k; ++j) {
    w[j] = std::exp(-beta * (ed.e_rich[j] - ed.e_rich[0]));
    z += w[j];
  }
  // geometric bound on the skipped tail from the last resolved gap
  const double r = std::exp(-beta * (ed.e_rich[k - 1] - ed.e_rich[k - 2]));
  const double tail = w[k - 1] * r / (1.0 - r);
  if (!(tail < floor * z))
    throw ResourceError("grid_thermal: bath too hot for the grid mode budget");
  const double ztot = z + tail;
  ThermalSet ts;
  double cum = 0.0;
  for (int j = 0; j < k; ++j) {
    cum += w[j];
    if (cum >= (1.0 - floor) * ztot) {
      ts.p.assign(w.begin(), w.begin() + j + 1);
      break;
    }
  }
  double norm = 0.0;
  for (double v : ts.p) norm += v;
  for (double& v : ts.p) v /= norm;
  for (std::size_t j = 0; j < ts.p.size(); ++j) ts.energy += ts.p[j] * ed.e_rich[j];
  return ts;
}

StrokeResult propagate_stroke(const GridSpec& g, const RampProtocol& omega_ramp,
                              const RampProtocol& coef_ramp, const std::vector<double>& p0) {
  check_grid(g);
  if (omega_ramp.tau != coef_ramp.tau)
    throw ValidationError("propagate_stroke: ramps must share tau");
  if (p0.empty() || static_cast<int>(p0.size()) > std::min(kSolve, g.points - 2))
    throw ValidationError("propagate_stroke: 1..64 initial states required");
  double sum = 0.0;
  for (double v : p0) {
    if (v < 0.0) throw ValidationError("propagate_stroke: negative population");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ValidationError("propagate_stroke: populations must sum to 1");

  const GridHam h = make_ham(g);
  const double tau = omega_ramp.tau;
  const double w0 = ramp_value(omega_ramp, 0.0), c0 = ramp_value(coef_ramp, 0.0);
  const double w1 = ramp_value(omega_ramp, tau), c1 = ramp_value(coef_ramp, tau);
  const EigData& ei = static_eig(g, w0, c0);
  const int m = static_cast<int>(p0.size());

  const double rdx = 1.0 / std::sqrt(h.dx);
  std::vector<std::vector<cplx>> psi(m, std::vector<cplx>(h.n));
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < h.n; ++j) psi[k][j] = ei.vecs(j, k) * rdx;

  const long steps = std::max<long>(1, static_cast<long>(std::ceil(tau / g.dt)));
  const double dt = tau / static_cast<double>(steps);
  const double alpha = 0.5 * dt;
  CnWork work;
  BatchDiag diag;
  for (long s = 0; s < steps; ++s) {
    const double tm = (static_cast<double>(s) + 0.5) * dt;
    cn_step(h, alpha, ramp_value(omega_ramp, std::min(tm, tau)),
            ramp_value(coef_ramp, std::min(tm, tau)), psi, work);
    if ((s & 255) == 255) check_batch(h, psi, diag, true);
  }
  check_batch(h, psi, diag, true);

  StrokeResult out;
  out.modes = m;
  out.norm_drift = diag.drift;
  out.leakage = diag.leak;
  for (int k = 0; k < m; ++k) out.e_end += p0[k] * grid_energy(h, w1, c1, psi[k]);

  const EigData& ef = static_eig(g, w1, c1);
  const int kend = static_cast<int>(ef.e.size());
  out.p_end.assign(kend, 0.0);
  for (int k = 0; k < m; ++k)
    for (int q = 0; q < kend; ++q) {
      cplx ov(0.0, 0.0);
      for (int j = 0; j < h.n; ++j) ov += ef.vecs(j, q) * psi[k][j];
      out.p_end[q] += p0[k] * std::norm(ov) * h.dx;
    }
  for (int q = 0; q < kend; ++q) out.e_end_proj += out.p_end[q] * ef.e[q];
  return out;
}

ProtocolKind parse_protocol(const std::string& s) {
  if (s == "optimal") return ProtocolKind::optimal;
  if (s == "scale_invariant" || s == "scale-invariant") return ProtocolKind::scale_invariant;
  if (s == "noninteracting") return ProtocolKind::noninteracting;
  throw ValidationError("protocol: expected optimal | scale_invariant | noninteracting");
}

std::string to_string(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::optimal: return "optimal";
    case ProtocolKind::scale_invariant: return "scale_invariant";
    default: return "noninteracting";
  }
}

namespace {

void check_cfg(const FtConfig& cfg) {
  check_grid(cfg.grid);
  if (!(cfg.kappa > 0.0 && cfg.kappa < 1.0))
    throw ValidationError("finite_time: kappa in (0, 1) required");
  if (!(cfg.beta_c > 0.0 && cfg.beta_h > 0.0))
    throw ValidationError("finite_time: positive inverse temperatures required");
  if (cfg.gt_i < 0.0 || cfg.gt_f < 0.0)
    throw ValidationError("finite_time: repulsive couplings only");
  if (!(cfg.weight_floor >= 1e-12 && cfg.weight_floor <= 1e-2))
    throw ValidationError("finite_time: weight_floor in [1e-12, 1e-2] required");
}

// one coordinate (CM or relative) through both work strokes; c_i/c_f are the
// on-grid delta coefficients at the trap endpoints
struct HalfCycle {
  double e1 = 0, e2 = 0, e3 = 0, e4 = 0, e2_ad = 0, e4_ad = 0;
  double drift = 0, leak = 0;
  int kc = 0, kh = 0;
};

HalfCycle run_coordinate(const GridSpec& g, double w_i, double w_f, double c_i, double c_f,
                         bool slave, double beta_c, double beta_h, double floor, double tau) {
  const ThermalSet cold = grid_thermal(g, w_i, c_i, beta_c, floor);
  const ThermalSet hot = grid_thermal(g, w_f, c_f, beta_h, floor);
  const int kc = static_cast<int>(cold.p.size()), kh = static_cast<int>(hot.p.size());
  const GridLevels li = grid_levels(g, w_i, c_i, std::max(kc, kh));
  const GridLevels lf = grid_levels(g, w_f, c_f, std::max(kc, kh));

  const RampProtocol wc = make_ramp(w_i, w_f, tau), we = make_ramp(w_f, w_i, tau);
  const RampProtocol cc = slave ? make_slave_ramp(c_i, w_i, w_f, tau) : make_ramp(c_i, c_f, tau);
  const RampProtocol ce = slave ? make_slave_ramp(c_f, w_f, w_i, tau) : make_ramp(c_f, c_i, tau);

  const StrokeResult sc = propagate_stroke(g, wc, cc, cold.p);
  const StrokeResult se = propagate_stroke(g, we, ce, hot.p);

  HalfCycle r;
  r.e1 = cold.energy;
  r.e3 = hot.energy;
  r.e2 = sc.e_end;
  r.e4 = se.e_end;
  for (int k = 0; k < kc; ++k) r.e2_ad += cold.p[k] * lf.e[k];
  for (int k = 0; k < kh; ++k) r.e4_ad += hot.p[k] * li.e[k];
  r.drift = std::max(sc.norm_drift, se.norm_drift);
  r.leak = std::max(sc.leakage, se.leakage);
  r.kc = kc;
  r.kh = kh;
  return r;
}

PropagationResult combine(const FtConfig& cfg, double tau, ProtocolKind kind,
                          const HalfCycle& cm, const HalfCycle& rel) {
  PropagationResult r;
  r.tau = tau;
  r.kind = kind;
  r.e1 = cm.e1 + rel.e1;
  r.e2 = cm.e2 + rel.e2;
  r.e3 = cm.e3 + rel.e3;
  r.e4 = cm.e4 + rel.e4;
  const double e2ad = cm.e2_ad + rel.e2_ad, e4ad = cm.e4_ad + rel.e4_ad;
  r.w_tau = (r.e2 - r.e1) + (r.e4 - r.e3);
  r.w_ad = (e2ad - r.e1) + (e4ad - r.e3);
  r.w_irr = r.w_tau - r.w_ad;
  r.qh = r.e3 - r.e2;
  r.qc = r.e1 - r.e4;
  r.engine = r.w_tau < 0.0 && r.qh > 0.0;
  r.eta_tau = r.engine ? -r.w_tau / r.qh : 0.0;
  const double qh_ad = r.e3 - e2ad;
  r.eta_ad = (r.w_ad < 0.0 && qh_ad > 0.0) ? -r.w_ad / qh_ad : 0.0;
  r.p_eff = -r.w_tau / (2.0 * tau);
  r.norm_drift = std::max(cm.drift, rel.drift);
  r.leakage = std::max(cm.leak, rel.leak);
  r.modes_cold = cm.kc + rel.kc;
  r.modes_hot = cm.kh + rel.kh;
  return r;
}

// endpoint delta coefficients for the relative coordinate: the dimensionless
// coupling gt at trap frequency w corresponds to gt sqrt(w) on the grid
struct RelPlan {
  double c_i = 0, c_f = 0;
  bool slave = false;
};

RelPlan rel_plan(const FtConfig& cfg, ProtocolKind kind, double w_f) {
  switch (kind) {
    case ProtocolKind::optimal: return {cfg.gt_i, cfg.gt_f * std::sqrt(w_f), false};
    case ProtocolKind::scale_invariant: return {cfg.gt_i, cfg.gt_i * std::sqrt(w_f), true};
    default: return {0.0, 0.0, false};
  }
}

}  // namespace

PropagationResult finite_time_cycle(const FtConfig& cfg, double tau, ProtocolKind kind) {
  check_cfg(cfg);
  if (!(tau > 0.0)) throw ValidationError("finite_time: tau > 0 required");
  const double w_f = 1.0 / cfg.kappa;
  const HalfCycle cm = run_coordinate(cfg.grid, 1.0, w_f, 0.0, 0.0, false, cfg.beta_c,
                                      cfg.beta_h, cfg.weight_floor, tau);
  const RelPlan rp = rel_plan(cfg, kind, w_f);
  const HalfCycle rel = run_coordinate(cfg.grid, 1.0, w_f, rp.c_i, rp.c_f, rp.slave, cfg.beta_c,
                                       cfg.beta_h, cfg.weight_floor, tau);
  return combine(cfg, tau, kind, cm, rel);
}

std::vector<PropagationResult> tau_sweep(const FtConfig& cfg, const std::vector<double>& taus,
                                         const std::vector<ProtocolKind>& kinds) {
  check_cfg(cfg);
  if (taus.empty()) throw ValidationError("tau_sweep: empty tau list");
  for (std::size_t i = 0; i < taus.size(); ++i)
    if (!(taus[i] > 0.0) || (i > 0 && taus[i] <= taus[i - 1]))
      throw ValidationError("tau_sweep: taus must be positive ascending");
  if (kinds.empty()) throw ValidationError("tau_sweep: no protocols requested");
  const double w_f = 1.0 / cfg.kappa;
  std::vector<PropagationResult> out;
  out.reserve(taus.size() * kinds.size());
  for (double tau : taus) {
    const HalfCycle cm = run_coordinate(cfg.grid, 1.0, w_f, 0.0, 0.0, false, cfg.beta_c,
                                        cfg.beta_h, cfg.weight_floor, tau);
    for (ProtocolKind kind : kinds) {
      const RelPlan rp = rel_plan(cfg, kind, w_f);
      const HalfCycle rel = run_coordinate(cfg.grid, 1.0, w_f, rp.c_i, rp.c_f, rp.slave,
                                           cfg.beta_c, cfg.beta_h, cfg.weight_floor, tau);
      out.push_back(combine(cfg, tau, kind, cm, rel));
    }
  }
  return out;
}

}  // namespace qotto
