#pragma once
#include <vector>

namespace qotto {

// log|Gamma(x)| for real x (poles excepted), Lanczos approximation
double log_gamma(double x);
// sign of Gamma(x): +1/-1, 0 at the poles (x = 0, -1, -2, ...)
int gamma_sign(double x);
// digamma psi(x) for real x off the poles
double digamma(double x);

// Gauss-Hermite rule: integral f(x) e^{-x^2} dx ~ sum w_i f(x_i),
// exact for polynomials up to degree 2n-1
struct Quadrature {
  std::vector<double> x, w;
};
Quadrature gauss_hermite(int n);

double binomial(int n, int k);

}  // namespace qotto
