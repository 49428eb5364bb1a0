#pragma once
#include <cmath>
#include <functional>
#include <stdexcept>

namespace qotto {

// Brent's method on a bracketing interval [x1, x2] with f(x1) f(x2) <= 0.
inline double brent(const std::function<double(double)>& f, double x1, double x2,
                    double tol = 1e-14, int maxit = 200) {
  double a = x1, b = x2, c = x2;
  double fa = f(a), fb = f(b), fc = fb;
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0 && fb > 0.0) || (fa < 0.0 && fb < 0.0))
    throw std::runtime_error("brent: root not bracketed");
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < maxit; ++iter) {
    if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
      c = a; fc = fa; e = d = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 2.220446049250313e-16 * std::fabs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double r = fb / fc;
        q = fa / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d; d = p / q;
      } else {
        d = xm; e = d;
      }
    } else {
      d = xm; e = d;
    }
    a = b; fa = fb;
    if (std::fabs(d) > tol1) b += d;
    else b += (xm >= 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

}  // namespace qotto
