#pragma once
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace qotto {

struct NmResult {
  std::vector<double> x;
  double f = 0.0;
  int evals = 0;
};

// Nelder-Mead minimization with standard coefficients and midpoint-restart
// shrink handling; box constraints applied by clamping.
inline NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                            std::vector<double> x0, std::vector<double> step,
                            const std::vector<double>& lo, const std::vector<double>& hi,
                            int maxfev = 400, double ftol = 1e-12, double xtol = 1e-10) {
  const int n = static_cast<int>(x0.size());
  auto clamp = [&](std::vector<double>& x) {
    for (int i = 0; i < n; ++i) x[i] = std::min(hi[i], std::max(lo[i], x[i]));
  };
  int evals = 0;
  auto eval = [&](std::vector<double> x) {
    clamp(x);
    ++evals;
    return std::pair<std::vector<double>, double>(x, fn(x));
  };

  std::vector<std::pair<std::vector<double>, double>> sim;
  clamp(x0);
  sim.push_back(eval(x0));
  for (int i = 0; i < n; ++i) {
    auto xi = x0;
    xi[i] += step[i];
    sim.push_back(eval(xi));
  }
  auto by_f = [](const auto& a, const auto& b) { return a.second < b.second; };

  while (evals < maxfev) {
    std::sort(sim.begin(), sim.end(), by_f);
    double spread = sim.back().second - sim.front().second;
    double width = 0.0;
    for (int i = 0; i < n; ++i) {
      double w = 0.0;
      for (const auto& v : sim) w = std::max(w, std::fabs(v.first[i] - sim[0].first[i]));
      width = std::max(width, w);
    }
    if (spread < ftol && width < xtol) break;

    std::vector<double> cen(n, 0.0);
    for (std::size_t k = 0; k + 1 < sim.size(); ++k)
      for (int i = 0; i < n; ++i) cen[i] += sim[k].first[i] / n;

    auto move = [&](double coef) {
      std::vector<double> x(n);
      for (int i = 0; i < n; ++i) x[i] = cen[i] + coef * (sim.back().first[i] - cen[i]);
      return eval(x);
    };

    auto refl = move(-1.0);
    if (refl.second < sim.front().second) {
      auto expa = move(-2.0);
      sim.back() = expa.second < refl.second ? expa : refl;
    } else if (refl.second < sim[sim.size() - 2].second) {
      sim.back() = refl;
    } else {
      auto contr = move(refl.second < sim.back().second ? -0.5 : 0.5);
      if (contr.second < std::min(refl.second, sim.back().second)) {
        sim.back() = contr;
      } else {  // shrink toward the best vertex
        for (std::size_t k = 1; k < sim.size(); ++k) {
          std::vector<double> x(n);
          for (int i = 0; i < n; ++i) x[i] = 0.5 * (sim[k].first[i] + sim[0].first[i]);
          sim[k] = eval(x);
        }
      }
    }
  }
  std::sort(sim.begin(), sim.end(), by_f);
  return {sim.front().first, sim.front().second, evals};
}

}  // namespace qotto
