#include "qotto/thermo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "qotto/errors.hpp"
#include "qotto/optimize.hpp"

namespace qotto {

ThermalState thermal_state(const LabeledSpectrum& s, double beta) {
  if (s.size() == 0) throw ValidationError("thermal_state: empty spectrum");
  if (beta <= 0.0) throw ValidationError("thermal_state: beta > 0 required");
  ThermalState ts;
  ts.beta = beta;
  const double e0 = *std::min_element(s.e.begin(), s.e.end());
  ts.p.resize(s.size());
  double z = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    ts.p[k] = s.w[k] * std::exp(-beta * (s.e[k] - e0));
    z += ts.p[k];
  }

  // ladder tail bound: bin degeneracies in units of the trap spacing and let
  // the top bin repeat with its observed growth ratio
  const double om = s.omega > 0.0 ? s.omega : 1.0;
  std::map<long, double> bins;
  for (std::size_t k = 0; k < s.size(); ++k)
    bins[std::lround((s.e[k] - e0) / om)] += s.w[k];
  const long btop = bins.rbegin()->first;
  const double dtop = bins.rbegin()->second;
  double dprev = dtop;
  if (auto it = bins.find(btop - 1); it != bins.end() && it->second > 0.0) dprev = it->second;
  const double rho = std::clamp(dtop / dprev, 1.0, 8.0);
  const double q = rho * std::exp(-beta * om);
  double tail = 0.0;
  if (q >= 1.0) {
    tail = 1.0;  // divergent bound
  } else {
    tail = dtop * std::exp(-beta * (btop * om)) * q / (1.0 - q) / z;
  }
  ts.tail = tail;
  if (tail > 1e-9) {
    const int need = q < 1.0 ? static_cast<int>(std::ceil(std::log(tail / 1e-9) /
                                                          (beta * om - std::log(rho)))) : -1;
    throw AccuracyError("thermal_state: truncation tail " + std::to_string(tail) +
                        " at beta=" + std::to_string(beta) + "; extend spectrum by ~" +
                        (need > 0 ? std::to_string(need) : std::string("many")) + " quanta");
  }
  for (auto& pk : ts.p) pk /= z;
  ts.z = z * std::exp(-beta * e0);  // absolute partition value
  return ts;
}

CycleResult run_cycle(const LabeledSpectrum& si, const LabeledSpectrum& sf,
                      double beta_c, double beta_h) {
  if (si.size() != sf.size()) throw ValidationError("run_cycle: endpoint spectra differ in size");
  if (si.label != sf.label) throw ValidationError("run_cycle: endpoint spectra labels mismatch");
  if (!(beta_c > beta_h)) throw ValidationError("run_cycle: beta_c > beta_h required");

  const ThermalState tc = thermal_state(si, beta_c);
  const ThermalState th = thermal_state(sf, beta_h);
  const std::size_t n = si.size();

  CycleResult r;
  for (std::size_t k = 0; k < n; ++k) {
    r.wc += tc.p[k] * (sf.e[k] - si.e[k]);
    r.qh += (th.p[k] - tc.p[k]) * sf.e[k];
    r.we += th.p[k] * (si.e[k] - sf.e[k]);
    r.qc += (tc.p[k] - th.p[k]) * si.e[k];
  }
  r.w = r.wc + r.we;

  // same quantities as single population-weighted energy sums, opposite order
  double e1 = 0, e2 = 0, e3 = 0, e4 = 0;
  for (std::size_t k = n; k-- > 0;) {
    e1 += tc.p[k] * si.e[k];  // state 1: cold thermal, initial trap
    e2 += tc.p[k] * sf.e[k];  // state 2: after compression
    e3 += th.p[k] * sf.e[k];  // state 3: hot thermal, final trap
    e4 += th.p[k] * si.e[k];  // state 4: after expansion
  }
  const double w_sum = (e2 - e1) + (e4 - e3);
  r.form_gap = std::fabs(w_sum - r.w);

  const double scale = std::max({std::fabs(r.w), std::fabs(r.qh), std::fabs(r.qc), 1e-300});
  r.first_law_rel = std::fabs(r.w + r.qh + r.qc) / scale;
  r.engine = r.w < 0.0 && r.qh > 0.0;
  r.eta = r.engine ? -r.w / r.qh : 0.0;
  return r;
}

double curzon_ahlborn(double beta_h, double beta_c) {
  if (!(beta_h > 0.0 && beta_h < beta_c)) throw ValidationError("curzon_ahlborn: 0 < beta_h < beta_c");
  return 1.0 - std::sqrt(beta_h / beta_c);
}

namespace {

int n2_depth(double gt, double omega, double beta_min) {
  // quanta needed so the ladder tail at beta_min clears the thermal_state bound
  int q = 24;
  while (q < 4096) {
    const double tail_exp = beta_min * omega * q - 2.0 * std::log(static_cast<double>(q));
    if (tail_exp > std::log(1e13)) break;
    q += 8;
  }
  (void)gt;
  return q;
}

LabeledSpectrum to_labeled_n2(const std::vector<Level2P>& lv, double omega) {
  LabeledSpectrum s;
  s.omega = omega;
  s.e.reserve(lv.size());
  s.w.assign(lv.size(), 1.0);
  s.label.reserve(lv.size());
  for (const auto& l : lv) {
    s.e.push_back(l.e);
    s.label.push_back("n" + std::to_string(l.n) + "r" + std::to_string(l.r));
  }
  return s;
}

}  // namespace

LabeledSpectrum spectrum_n2(Statistics st, double gt, double omega, double beta_min) {
  const int q = n2_depth(gt, omega, beta_min);
  return to_labeled_n2(levels2p(st, gt, omega, q), omega);
}

LabeledSpectrum spectrum_noninteracting(int n, Statistics st, double omega, double beta_min) {
  if (n < 1) throw ValidationError("spectrum_noninteracting: n >= 1");
  int qmax = 24;
  while (qmax < 4096 && beta_min * omega * qmax - n * std::log(static_cast<double>(qmax)) <
                            std::log(1e13))
    qmax += 8;

  LabeledSpectrum s;
  s.omega = omega;
  // nondecreasing occupation tuples with sum <= qmax
  std::vector<int> occ(n, 0);
  std::function<void(int, int, int)> rec = [&](int pos, int minv, int rem) {
    if (pos == n) {
      double w = 1.0;
      if (st == Statistics::dist) {
        // permutation count of the multiset
        double fact = 1.0;
        for (int i = 1; i <= n; ++i) fact *= i;
        double denom = 1.0;
        int run = 1;
        for (int i = 1; i < n; ++i) {
          if (occ[i] == occ[i - 1]) {
            ++run;
            denom *= run;
          } else {
            run = 1;
          }
        }
        w = fact / denom;
      }
      double esum = 0.0;
      std::string lab = "m";
      for (int i = 0; i < n; ++i) {
        esum += occ[i];
        lab += (i ? "." : "") + std::to_string(occ[i]);
      }
      s.e.push_back(omega * (esum + 0.5 * n));
      s.w.push_back(w);
      s.label.push_back(lab);
      return;
    }
    for (int v = minv; v <= rem; ++v) {
      occ[pos] = v;
      rec(pos + 1, v, rem - v);
    }
  };
  rec(0, 0, qmax);
  return s;
}

std::vector<double> noninteracting_work_vs_N(const std::vector<int>& ns, Statistics st,
                                             double kappa, double beta_c, double beta_h) {
  if (!(kappa > 0.0 && kappa < 1.0)) throw ValidationError("work_vs_N: kappa in (0,1)");
  std::vector<double> out;
  const double omega_f = 1.0 / kappa;
  for (int n : ns) {
    const LabeledSpectrum si = spectrum_noninteracting(n, st, 1.0, std::min(beta_c, beta_h));
    LabeledSpectrum sf = si;
    sf.omega = omega_f;
    for (auto& e : sf.e) e *= omega_f;
    out.push_back(run_cycle(si, sf, beta_c, beta_h).w);
  }
  return out;
}

namespace {

struct CellEval {
  double eta_ratio = 0.0, w_ratio = 0.0;
  bool engine = false;
  double w = 0.0;
};

CellEval eval_cell(const LabeledSpectrum& si, const LabeledSpectrum& sf, const MapSpec& ms,
                   double w_otto) {
  CellEval c;
  const CycleResult r = run_cycle(si, sf, ms.beta_c, ms.beta_h);
  c.engine = r.engine;
  c.w = r.w;
  if (r.engine) {
    c.eta_ratio = r.eta / otto_eta(ms.kappa);
    c.w_ratio = r.w / w_otto;  // both negative
  }
  return c;
}

}  // namespace

SpectrumAt provider_n2(Statistics st, double beta_min) {
  // depth fixed at unit frequency so both endpoints carry identical label
  // sets; cycles place the hotter bath at omega >= 1 where tails only shrink
  return [st, beta_min](double eps, double omega) {
    const double gt = eps > 0.0 ? busch_gt_of_epsilon(0, eps) : 0.0;
    LabeledSpectrum s = spectrum_n2(st, gt, 1.0, beta_min);
    s.omega = omega;
    for (auto& e : s.e) e *= omega;
    return s;
  };
}

int tail_window(double beta_omega) {
  if (beta_omega <= 0.0) throw ValidationError("tail_window: beta*omega > 0 required");
  // solve B ~ (ln(1e9) + ln D_B)/(beta omega) with D_B ~ B^2 by iteration
  double b = 8.0;
  for (int it = 0; it < 30; ++it) b = (21.0 + 2.0 * std::log(b + 3.0)) / beta_omega;
  return std::clamp(static_cast<int>(std::ceil(b)) + 4, 8, 64);
}

MapResult heatmap(const MapSpec& ms, const SpectrumAt& provider, int threads) {
  if (ms.nx < 2 || ms.ny < 2) throw ValidationError("heatmap: grid at least 2x2");
  const double omega_f = 1.0 / ms.kappa;
  MapResult res;
  res.eps_i.resize(ms.nx);
  res.eps_f.resize(ms.ny);
  for (int i = 0; i < ms.nx; ++i) res.eps_i[i] = ms.eps_i_max * i / (ms.nx - 1);
  for (int j = 0; j < ms.ny; ++j) res.eps_f[j] = ms.eps_f_max * j / (ms.ny - 1);

  std::vector<LabeledSpectrum> si(ms.nx), sf(ms.ny);
  auto fill_axis = [&](std::vector<LabeledSpectrum>& dst, const std::vector<double>& ax,
                       double omega) {
    const int n = static_cast<int>(ax.size());
    const int nt = std::max(1, std::min(threads, n));
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    auto work = [&] {
      for (int k = next++; k < n; k = next++) dst[k] = provider(ax[k], omega);
    };
    for (int t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
  };
  fill_axis(si, res.eps_i, 1.0);
  fill_axis(sf, res.eps_f, omega_f);

  // memoized provider for the polish phase (providers may be expensive)
  std::map<std::pair<double, double>, LabeledSpectrum> memo;
  for (int i = 0; i < ms.nx; ++i) memo[{res.eps_i[i], 1.0}] = si[i];
  for (int j = 0; j < ms.ny; ++j) memo[{res.eps_f[j], omega_f}] = sf[j];
  auto prov = [&](double eps, double omega) -> const LabeledSpectrum& {
    auto it = memo.find({eps, omega});
    if (it == memo.end()) it = memo.emplace(std::make_pair(eps, omega), provider(eps, omega)).first;
    return it->second;
  };

  res.w_otto = run_cycle(prov(0.0, 1.0), prov(0.0, omega_f), ms.beta_c, ms.beta_h).w;

  res.eta_ratio.assign(static_cast<std::size_t>(ms.nx) * ms.ny, 0.0);
  res.w_ratio.assign(static_cast<std::size_t>(ms.nx) * ms.ny, 0.0);
  res.engine.assign(static_cast<std::size_t>(ms.nx) * ms.ny, 0);
  int best_eta_i = -1, best_eta_j = -1, best_w_i = -1, best_w_j = -1;
  double best_eta = -1e300, best_w = -1e300;
  for (int i = 0; i < ms.nx; ++i) {
    for (int j = 0; j < ms.ny; ++j) {
      const CellEval c = eval_cell(si[i], sf[j], ms, res.w_otto);
      const std::size_t k = static_cast<std::size_t>(i) * ms.ny + j;
      res.engine[k] = c.engine ? 1 : 0;
      if (!c.engine) {
        if (c.w > 0.0) ++res.dissipator_cells;
        continue;
      }
      res.eta_ratio[k] = c.eta_ratio;
      res.w_ratio[k] = c.w_ratio;
      if (c.eta_ratio > best_eta) { best_eta = c.eta_ratio; best_eta_i = i; best_eta_j = j; }
      if (c.w_ratio > best_w) { best_w = c.w_ratio; best_w_i = i; best_w_j = j; }
    }
  }
  if (best_eta_i < 0) return res;  // no engine cell anywhere
  res.max_eta = {res.eps_i[best_eta_i], res.eps_f[best_eta_j], best_eta};
  res.max_w = {res.eps_i[best_w_i], res.eps_f[best_w_j], best_w};

  auto objective = [&](bool eta_obj, double ei, double ef) {
    const CellEval c = eval_cell(prov(ei, 1.0), prov(ef, omega_f), ms, res.w_otto);
    if (!c.engine) return -1e9;
    return eta_obj ? c.eta_ratio : c.w_ratio;
  };

  if (ms.polish == Polish::nm) {
    const double di = ms.eps_i_max / (ms.nx - 1), df = ms.eps_f_max / (ms.ny - 1);
    auto polish_one = [&](bool eta_obj, MapPoint& pt) {
      auto fn = [&](const std::vector<double>& x) { return -objective(eta_obj, x[0], x[1]); };
      NmResult nm = nelder_mead(fn, {pt.eps_i, pt.eps_f}, {0.7 * di, 0.7 * df},
                                {0.0, 0.0}, {ms.eps_i_max, ms.eps_f_max}, 200);
      if (-nm.f > pt.value) pt = {nm.x[0], nm.x[1], -nm.f};
    };
    polish_one(true, res.max_eta);
    polish_one(false, res.max_w);
  } else if (ms.polish == Polish::local3) {
    const double di = 0.5 * ms.eps_i_max / (ms.nx - 1), df = 0.5 * ms.eps_f_max / (ms.ny - 1);
    auto polish_one = [&](bool eta_obj, MapPoint& pt) {
      for (double ei : {pt.eps_i - di, pt.eps_i, pt.eps_i + di}) {
        if (ei < 0.0 || ei > ms.eps_i_max) continue;
        for (double ef : {pt.eps_f - df, pt.eps_f, pt.eps_f + df}) {
          if (ef < 0.0 || ef > ms.eps_f_max) continue;
          const double v = objective(eta_obj, ei, ef);
          if (v > pt.value) pt = {ei, ef, v};
        }
      }
    };
    polish_one(true, res.max_eta);
    polish_one(false, res.max_w);
  }
  return res;
}

}  // namespace qotto
