#include <cmath>
#include <vector>

#include "doctest.h"
#include "qotto/emw.hpp"
#include "qotto/errors.hpp"
#include "qotto/fewbody_ed.hpp"
#include "qotto/spectrum2p.hpp"

using namespace qotto;

namespace {

EmwSpec dist_spec(double ratio, double beta_c = 10.0) {
  EmwSpec es;
  es.beta_c = beta_c;
  es.ratio = ratio;
  es.provider = provider_n2(Statistics::dist, ratio * beta_c);
  es.eps_hi = busch_epsilon(0, 50.0);
  es.gt_of_eps = [](double e) { return e > 0 ? busch_gt_of_epsilon(0, e) : 0.0; };
  return es;
}

}  // namespace

TEST_CASE("work maximum at a cold bath: two independent searches agree") {
  const EmwSpec es = dist_spec(0.2);
  const EmwPoint p = maximize_work(es);

  CHECK(p.quality);
  CHECK(p.w < 0.0);
  CHECK(p.eta > 0.0);
  CHECK(p.eta <= p.eta_carnot + 1e-9);
  CHECK(p.record.size() == 8);

  // coarse grid best from an independent scan sits in the same basin
  double grid_w = 1e9;
  for (double k = 0.05; k < 0.96; k += 0.05)
    for (double ei = 0.0; ei <= 0.96; ei += 0.08)
      for (double ef = 0.0; ef <= 0.96; ef += 0.08) {
        const auto si = es.provider(ei, 1.0);
        const auto sf = es.provider(ef, 1.0 / k);
        grid_w = std::min(grid_w, run_cycle(si, sf, es.beta_c, p.beta_h).w);
      }
  CHECK(p.w <= grid_w + 1e-12);           // the polish can only improve on the grid
  CHECK(p.w == doctest::Approx(grid_w).epsilon(0.02));

  // optimum is a genuine local maximum of |W|: 1% nudges don't beat it
  const std::vector<double> x{std::log(p.kappa), p.eps_i, p.eps_f};
  for (int d = 0; d < 3; ++d)
    for (double sgn : {-1.0, 1.0}) {
      auto y = x;
      y[d] += sgn * 0.01 * (std::abs(y[d]) > 1e-12 ? std::abs(y[d]) : 0.01);
      const double k = std::exp(std::min(y[0], std::log(0.99)));
      const double ei = std::clamp(y[1], 0.0, es.eps_hi);
      const double ef = std::clamp(y[2], 0.0, es.eps_hi);
      const double w = run_cycle(es.provider(ei, 1.0), es.provider(ef, 1.0 / k),
                                 es.beta_c, p.beta_h).w;
      CHECK(w >= p.w - 1e-8);
    }

  // reported couplings match the shift coordinates
  CHECK(busch_epsilon(0, p.gt_i) == doctest::Approx(p.eps_i).epsilon(1e-9));
}

TEST_CASE("pinned coupling reduces to a compression-only search") {
  EmwSpec es = dist_spec(0.3);
  es.eps_hi = 0.0;
  const EmwPoint p = maximize_work(es);
  CHECK(p.eps_i == 0.0);
  CHECK(p.eps_f == 0.0);
  CHECK(p.gt_i == 0.0);

  double brute = 1e9;
  for (double k = 0.011; k < 0.99; k += 0.002) {
    const auto si = es.provider(0.0, 1.0);
    const auto sf = es.provider(0.0, 1.0 / k);
    brute = std::min(brute, run_cycle(si, sf, es.beta_c, p.beta_h).w);
  }
  CHECK(p.w <= brute + 1e-6);

  // enlarging the constraint set can only help
  EmwSpec free_es = dist_spec(0.3);
  const EmwPoint q = maximize_work(free_es);
  CHECK(q.w <= p.w + 1e-12);
}

TEST_CASE("bath-ratio sweep with warm starts") {
  const EmwSpec es = dist_spec(0.3);
  const auto curve = emw_curve(es, {0.3, 0.5, 0.7});
  REQUIRE(curve.size() == 3);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    CHECK(curve[i].quality);
    CHECK(curve[i].eta <= curve[i].eta_carnot + 1e-9);
    CHECK(curve[i].eta_ca == doctest::Approx(1.0 - std::sqrt(curve[i].ratio)).epsilon(1e-12));
    if (i > 0) {
      CHECK(std::abs(curve[i].w) < std::abs(curve[i - 1].w));  // work shrinks as baths close
      CHECK(curve[i].eta < curve[i - 1].eta);
      CHECK(curve[i].record.size() == 9);  // warm start joins the 8 seeds
    }
  }
  // hot-bath limit tracks the endoreversible reference closely
  CHECK(std::abs(curve[2].eta - curve[2].eta_ca) < 0.01);
}

TEST_CASE("three-body medium drives the optimizer") {
  const int e_cut = 12, window = 8;
  EmwSpec es;
  es.beta_c = 10.0;
  es.ratio = 0.35;
  es.starts = 3;
  es.maxfev = 150;
  es.provider = provider_ed3(Transport3::boson, e_cut, window);
  es.eps_hi = 0.9 * eps3p_max(e_cut);
  es.gt_of_eps = [](double e) { return gt_of_eps3p(12, e); };
  const EmwPoint p = maximize_work(es);
  CHECK(p.quality);
  CHECK(p.w < 0.0);
  CHECK(p.eta > 0.0);
  CHECK(p.eta <= p.eta_carnot + 1e-9);
  CHECK(p.gt_i >= 0.0);
}

TEST_CASE("optimizer input validation") {
  EmwSpec es = dist_spec(0.3);
  es.ratio = 1.0;
  CHECK_THROWS_AS((void)maximize_work(es), ValidationError);
  es = dist_spec(0.3);
  es.kappa_lo = -0.1;
  CHECK_THROWS_AS((void)maximize_work(es), ValidationError);
  es = dist_spec(0.3);
  es.provider = nullptr;
  CHECK_THROWS_AS((void)maximize_work(es), ValidationError);
  es = dist_spec(0.3);
  es.eps_hi = -1.0;
  CHECK_THROWS_AS((void)maximize_work(es), ValidationError);
}
