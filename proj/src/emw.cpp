#include "qotto/emw.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qotto/errors.hpp"
#include "qotto/optimize.hpp"

namespace qotto {
namespace {

constexpr double kPenalty = 1e6;
constexpr double kWorkFloor = 1e-6;  // |W| below this is numerical noise, not an engine

double cycle_work(const EmwSpec& es, const std::vector<double>& x, double beta_h) {
  const double kappa = std::exp(x[0]);
  try {
    const LabeledSpectrum si = es.provider(x[1], 1.0);
    const LabeledSpectrum sf = es.provider(x[2], 1.0 / kappa);
    return run_cycle(si, sf, es.beta_c, beta_h).w;
  } catch (const AccuracyError&) {
    return kPenalty;  // tail not certified there; steer the search away
  }
}

}  // namespace

EmwPoint maximize_work(const EmwSpec& es, const std::vector<double>* warm) {
  if (!(es.ratio > 0.0 && es.ratio < 1.0))
    throw ValidationError("bath ratio beta_h/beta_c must lie in (0, 1)");
  if (!(es.kappa_lo > 0.0 && es.kappa_hi < 1.0 && es.kappa_lo < es.kappa_hi))
    throw ValidationError("compression bounds must satisfy 0 < lo < hi < 1");
  if (es.eps_hi < 0.0) throw ValidationError("shift bound must be non-negative");
  if (!es.provider) throw ValidationError("no spectrum provider configured");

  const double beta_h = es.ratio * es.beta_c;
  const std::vector<double> lo{std::log(es.kappa_lo), 0.0, 0.0};
  const std::vector<double> hi{std::log(es.kappa_hi), es.eps_hi, es.eps_hi};

  // a pinned shift axis (eps_hi = 0) reduces the search to kappa alone
  std::vector<int> free_dim;
  for (int d = 0; d < 3; ++d)
    if (hi[d] > lo[d]) free_dim.push_back(d);
  const int nf = static_cast<int>(free_dim.size());

  auto expand = [&](const std::vector<double>& xr) {
    std::vector<double> x{lo[0], lo[1], lo[2]};
    for (int d = 0; d < nf; ++d) x[free_dim[d]] = xr[d];
    return x;
  };
  auto objective = [&](const std::vector<double>& xr) {
    return cycle_work(es, expand(xr), beta_h);
  };

  std::vector<double> rlo(nf), rhi(nf), step(nf);
  for (int d = 0; d < nf; ++d) {
    rlo[d] = lo[free_dim[d]];
    rhi[d] = hi[free_dim[d]];
    step[d] = 0.12 * (rhi[d] - rlo[d]);
  }

  // Latin hypercube start points
  std::mt19937 rng(es.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<std::vector<int>> perm(nf, std::vector<int>(es.starts));
  for (auto& p : perm) {
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
  }
  std::vector<std::vector<double>> starts;
  for (int i = 0; i < es.starts; ++i) {
    std::vector<double> x(nf);
    for (int d = 0; d < nf; ++d)
      x[d] = rlo[d] + (perm[d][i] + u01(rng)) / es.starts * (rhi[d] - rlo[d]);
    starts.push_back(std::move(x));
  }
  if (warm && static_cast<int>(warm->size()) == 3) {
    std::vector<double> x(nf);
    for (int d = 0; d < nf; ++d)
      x[d] = std::clamp((*warm)[free_dim[d]], rlo[d], rhi[d]);
    starts.push_back(std::move(x));
  }

  EmwPoint best;
  best.ratio = es.ratio;
  best.beta_h = beta_h;
  best.w = kPenalty;
  std::vector<double> best_x;
  for (const auto& x0 : starts) {
    const NmResult r = nelder_mead(objective, x0, step, rlo, rhi, es.maxfev);
    best.evals += r.evals;
    const auto full0 = expand(x0);
    best.record.push_back({{full0[0], full0[1], full0[2]}, r.f});
    if (r.f < best.w) {
      best.w = r.f;
      best_x = expand(r.x);
    }
  }

  best.kappa = std::exp(best_x[0]);
  best.eps_i = best_x[1];
  best.eps_f = best_x[2];
  if (es.gt_of_eps) {
    best.gt_i = es.gt_of_eps(best.eps_i);
    best.gt_f = es.gt_of_eps(best.eps_f);
  }
  best.eta_otto = otto_eta(best.kappa);
  best.eta_ca = curzon_ahlborn(beta_h, es.beta_c);
  best.eta_carnot = 1.0 - es.ratio;
  best.quality = best.w < -kWorkFloor;
  if (best.quality) {
    const CycleResult r = run_cycle(es.provider(best.eps_i, 1.0),
                                    es.provider(best.eps_f, 1.0 / best.kappa),
                                    es.beta_c, beta_h);
    best.eta = r.eta;
  }
  return best;
}

std::vector<EmwPoint> emw_curve(const EmwSpec& es, const std::vector<double>& ratios) {
  std::vector<EmwPoint> out;
  std::vector<double> warm;
  EmwSpec run = es;
  for (double r : ratios) {
    run.ratio = r;
    const EmwPoint p = maximize_work(run, warm.empty() ? nullptr : &warm);
    if (p.quality) warm = {std::log(p.kappa), p.eps_i, p.eps_f};
    out.push_back(p);
  }
  return out;
}

}  // namespace qotto
