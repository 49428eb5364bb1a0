#include "qotto/special.hpp"

#include <cmath>
#include <stdexcept>

#include "qotto/lapack.hpp"

namespace qotto {

namespace {

// Lanczos, g = 7, 9 terms
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lgamma_pos(double x) {
  // x >= 0.5
  double a = kLanczos[0];
  const double t = x + 6.5;
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i - 1.0);
  return 0.5 * std::log(2.0 * M_PI) + (x - 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

double log_gamma(double x) {
  if (x >= 0.5) return lgamma_pos(x);
  // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
  const double s = std::sin(M_PI * x);
  if (s == 0.0) throw std::domain_error("log_gamma at a pole");
  return std::log(M_PI / std::fabs(s)) - lgamma_pos(1.0 - x);
}

int gamma_sign(double x) {
  if (x > 0.0) return 1;
  if (x == std::floor(x)) return 0;  // pole
  const double s = std::sin(M_PI * x);
  return s > 0.0 ? 1 : -1;
}

double digamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw std::domain_error("digamma at a pole");
  if (x < 0.5) {
    // psi(x) = psi(1-x) - pi cot(pi x)
    return digamma(1.0 - x) - M_PI / std::tan(M_PI * x);
  }
  double r = 0.0;
  while (x < 9.0) {
    r -= 1.0 / x;
    x += 1.0;
  }
  const double i2 = 1.0 / (x * x);
  // asymptotic series with Bernoulli numbers
  return r + std::log(x) - 0.5 / x -
         i2 * (1.0 / 12 -
               i2 * (1.0 / 120 -
                     i2 * (1.0 / 252 -
                           i2 * (1.0 / 240 - i2 * (1.0 / 132 - i2 * 691.0 / 32760)))));
}

Quadrature gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n >= 1");
  // Golub-Welsch: Jacobi matrix has zero diagonal, off-diagonal sqrt(k/2)
  std::vector<double> d(n, 0.0), e(n - 1);
  for (int k = 1; k < n; ++k) e[k - 1] = std::sqrt(0.5 * k);
  Eigen::VectorXd vals;
  Eigen::MatrixXd vecs;
  la::eig_tridiag_lowest(d, e, n, vals, vecs);
  Quadrature q;
  q.x.resize(n);
  q.w.resize(n);
  const double mu0 = std::sqrt(M_PI);
  for (int i = 0; i < n; ++i) {
    q.x[i] = vals[i];
    q.w[i] = mu0 * vecs(0, i) * vecs(0, i);
  }
  return q;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace qotto
