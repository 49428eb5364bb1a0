#pragma once
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qotto {

// Monotone cubic interpolation (Fritsch-Carlson slopes). Knots strictly
// increasing in x; preserves monotone data.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("MonotoneCubic: bad knots");
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double h = x_[i + 1] - x_[i];
      if (h <= 0.0) throw std::invalid_argument("MonotoneCubic: x not increasing");
      d[i] = (y_[i + 1] - y_[i]) / h;
    }
    m_.resize(n);
    m_[0] = d[0];
    m_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i)
      m_[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (d[i] == 0.0) {
        m_[i] = m_[i + 1] = 0.0;
        continue;
      }
      const double a = m_[i] / d[i], b = m_[i + 1] / d[i];
      const double s = a * a + b * b;
      if (s > 9.0) {
        const double t = 3.0 / std::sqrt(s);
        m_[i] = t * a * d[i];
        m_[i + 1] = t * b * d[i];
      }
    }
  }

  double operator()(double xq) const {
    const std::size_t n = x_.size();
    if (xq <= x_.front()) return y_.front() + m_.front() * (xq - x_.front());
    if (xq >= x_.back()) return y_.back() + m_.back() * (xq - x_.back());
    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (x_[mid] <= xq ? lo : hi) = mid;
    }
    const double h = x_[lo + 1] - x_[lo];
    const double t = (xq - x_[lo]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return y_[lo] * (2 * t3 - 3 * t2 + 1) + h * m_[lo] * (t3 - 2 * t2 + t) +
           y_[lo + 1] * (-2 * t3 + 3 * t2) + h * m_[lo + 1] * (t3 - t2);
  }

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  std::vector<double> x_, y_, m_;
};

}  // namespace qotto
