#include <cmath>

#include "doctest.h"
#include "qotto/special.hpp"
#include "qotto/spectrum2p.hpp"

using namespace qotto;

TEST_CASE("even-level shifts at reference couplings") {
  // two-decimal values quoted for the ground relative level
  CHECK(busch_epsilon(0, 1.6) == doctest::Approx(0.52).epsilon(0.02));
  CHECK(busch_epsilon(0, 50.0) == doctest::Approx(0.98).epsilon(0.02));
  CHECK(busch_epsilon(0, 3.0) == doctest::Approx(0.69).epsilon(0.02));
  CHECK(busch_epsilon(0, 0.8) == doctest::Approx(0.34).epsilon(0.02));
  CHECK(busch_epsilon(0, 1.95) == doctest::Approx(0.58).epsilon(0.02));
  CHECK(busch_epsilon(0, 1.4) == doctest::Approx(0.48).epsilon(0.02));
}

TEST_CASE("epsilon limits") {
  CHECK(busch_epsilon(0, 0.0) == 0.0);
  CHECK(busch_epsilon(0, 1e8) == doctest::Approx(1.0).epsilon(1e-6));
  for (int nu : {0, 1, 2, 5, 11}) {
    const double e = busch_epsilon(nu, 2.3);
    CHECK(e > 0.0);
    CHECK(e < 1.0);
  }
}

TEST_CASE("closed-form inverse matches the root solve") {
  for (int nu : {0, 1, 3}) {
    for (double gt : {0.2, 0.9, 1.6, 4.0, 12.0, 45.0}) {
      const double eps = busch_epsilon(nu, gt);
      CHECK(busch_gt_of_epsilon(nu, eps) == doctest::Approx(gt).epsilon(1e-10));
    }
  }
}

TEST_CASE("root residual is tiny in the defining relation") {
  for (double gt : {0.5, 1.6, 5.0, 30.0}) {
    const double e = 0.5 + busch_epsilon(0, gt);
    // -gt = 2 Gamma(-E/2+3/4)/Gamma(-E/2+1/4)
    const double a = -0.5 * e + 0.75, b = -0.5 * e + 0.25;
    const double lhs = -2.0 * gamma_sign(a) * gamma_sign(b) * std::exp(log_gamma(a) - log_gamma(b));
    CHECK(lhs == doctest::Approx(gt).epsilon(1e-11));
  }
}

TEST_CASE("epsilon monotone in the coupling") {
  double prev = -1.0;
  for (double gt = 0.0; gt <= 20.0; gt += 0.5) {
    const double e = busch_epsilon(0, gt);
    CHECK(e > prev);
    prev = e;
  }
}

TEST_CASE("lambda ratio properties") {
  const double kappa = 1.0 / 3.0;
  CHECK(lambda_ratio(2, 1, kappa, 0.3, 0.3) == doctest::Approx(kappa).epsilon(1e-15));
  // stronger initial coupling raises the ratio above kappa on even states
  CHECK(lambda_ratio(0, 0, kappa, 0.6, 0.2) > kappa);
  CHECK(lambda_ratio(0, 0, kappa, 0.0, 0.0) == doctest::Approx(kappa));
}

TEST_CASE("level list layout and ordering") {
  const double gt = 1.6;
  const auto lv = levels2p(Statistics::dist, gt, 1.0, 6);
  // distinguishable: all (n, r) with n + r <= 6
  CHECK(lv.size() == 28);
  const auto lb = levels2p(Statistics::boson, gt, 1.0, 6);
  CHECK(lb.size() == 16);  // even r only
  // ground level: n = 0, r = 0, energy 1 + eps
  CHECK(lb.front().e == doctest::Approx(1.0 + busch_epsilon(0, gt)).epsilon(1e-12));
  // odd relative levels are exactly the noninteracting ones
  for (const auto& l : lv)
    if (l.r % 2) CHECK(l.e == doctest::Approx(l.n + l.r + 1.0).epsilon(1e-14));
  // scaling with trap frequency
  const auto l3 = levels2p(Statistics::boson, gt, 3.0, 6);
  for (std::size_t k = 0; k < lb.size(); ++k)
    CHECK(l3[k].e == doctest::Approx(3.0 * lb[k].e).epsilon(1e-13));
}

TEST_CASE("fermionization doubles the even-level spacings") {
  const auto lv = levels2p(Statistics::boson, 1e6, 1.0, 8);
  // relative tower at huge coupling: 1.5, 3.5, 5.5 -> spacing 2
  double e00 = 0, e02 = 0;
  for (const auto& l : lv) {
    if (l.n == 0 && l.r == 0) e00 = l.e;
    if (l.n == 0 && l.r == 2) e02 = l.e;
  }
  CHECK(e02 - e00 == doctest::Approx(2.0).epsilon(1e-5));
}
